/* Copyright 2026 The seeood Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// INI-style experiment configuration.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "seeood/error.hpp"
#include "seeood/experiment.hpp"
#include "text_io.hpp"

namespace seeood {

const char* to_string(Method method) noexcept {
  return method == Method::kSeeOod ? "see_ood" : "wood";
}

void ExperimentConfig::validate() const {
  train.validate();
  if (train.iterations == 0) throw_domain("iterations must be positive");
  if (tnr_targets.empty()) throw_domain("at least one TNR target is required");
  for (double t : tnr_targets) {
    if (!(t > 0.0 && t <= 1.0)) throw_domain("TNR targets must lie in (0, 1]");
  }
  if (replications == 0) throw_domain("replications must be >= 1");
  if (data_source.empty()) throw_domain("data source must not be empty");
  if (cost_matrix.empty()) throw_domain("cost matrix must not be empty");
  grid.validate();
}

constexpr std::size_t kPresetIterations = 5000;

ExperimentConfig preset_config(const std::string& name) {
  ExperimentConfig c;
  auto& t = c.train;
  t.iterations = kPresetIterations;
  if (name == "setting1") {
    c.method = Method::kSeeOod;
    t.beta_ood = 1.0;
    t.beta_z = 0.001;
    t.n_d = 2;
    t.n_g = 1;
    t.lr_d = 0.0001;
    t.lr_g = 0.0001;
  } else if (name == "setting2") {
    c.method = Method::kSeeOod;
    t.beta_ood = 1.0;
    t.beta_z = 100.0;
    t.n_d = 1;
    t.n_g = 3;
    t.lr_d = 0.0001;
    t.lr_g = 0.001;
  } else if (name == "wood2d") {
    c.method = Method::kWood;
    t.beta_ood = 1.0;
    t.n_d = 1;
    t.lr_d = 0.001;
  } else {
    throw_parse("unknown preset '" + name + "' (expected setting1, setting2 or wood2d)");
  }
  return c;
}

std::vector<std::string> preset_names() { return {"setting1", "setting2", "wood2d"}; }

namespace {

using Setter = std::function<void(ExperimentConfig&, std::string_view)>;

double parse_real(std::string_view v) {
  double d = 0.0;
  if (!text::try_parse_double(v, d) || !std::isfinite(d)) {
    throw_parse("expected a real number, got '" + std::string(v) + "'");
  }
  return d;
}

std::size_t parse_count(std::string_view v) {
  std::size_t n = 0;
  if (!text::try_parse_int(v, n)) {
    throw_parse("expected a nonnegative integer, got '" + std::string(v) + "'");
  }
  return n;
}

std::size_t parse_positive(std::string_view v) {
  const std::size_t n = parse_count(v);
  if (n == 0) throw_parse("must be a positive integer");
  return n;
}

double parse_positive_real(std::string_view v) {
  const double d = parse_real(v);
  if (!(d > 0.0)) throw_parse("must be > 0");
  return d;
}

double parse_nonnegative_real(std::string_view v) {
  const double d = parse_real(v);
  if (!(d >= 0.0)) throw_parse("must be >= 0");
  return d;
}

std::vector<std::string_view> list_items(std::string_view v) {
  std::vector<std::string_view> out;
  for (auto part : text::split_whitespace(v)) {
    for (auto item : text::split(part, ',')) {
      if (!text::trim(item).empty()) out.push_back(text::trim(item));
    }
  }
  return out;
}

std::vector<std::size_t> parse_arch(std::string_view v) {
  std::vector<std::size_t> sizes;
  for (auto item : list_items(v)) sizes.push_back(parse_positive(item));
  if (sizes.size() < 2) throw_parse("an architecture needs at least two layer sizes");
  return sizes;
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"method.name",
       [](ExperimentConfig& c, std::string_view v) {
         if (v == "see_ood") {
           c.method = Method::kSeeOod;
         } else if (v == "wood") {
           c.method = Method::kWood;
         } else {
           throw_parse("expected see_ood or wood");
         }
       }},
      {"train.beta_ood", [](auto& c, auto v) { c.train.beta_ood = parse_nonnegative_real(v); }},
      {"train.beta_z", [](auto& c, auto v) { c.train.beta_z = parse_nonnegative_real(v); }},
      {"train.n_d", [](auto& c, auto v) { c.train.n_d = parse_positive(v); }},
      {"train.n_g", [](auto& c, auto v) { c.train.n_g = parse_positive(v); }},
      {"train.lr_d", [](auto& c, auto v) { c.train.lr_d = parse_positive_real(v); }},
      {"train.lr_g", [](auto& c, auto v) { c.train.lr_g = parse_positive_real(v); }},
      {"train.batch_ind", [](auto& c, auto v) { c.train.batch_ind = parse_positive(v); }},
      {"train.batch_ood", [](auto& c, auto v) { c.train.batch_ood = parse_positive(v); }},
      {"train.batch_gen", [](auto& c, auto v) { c.train.batch_gen = parse_positive(v); }},
      {"train.noise_dim", [](auto& c, auto v) { c.train.noise_dim = parse_positive(v); }},
      {"train.iterations", [](auto& c, auto v) { c.train.iterations = parse_positive(v); }},
      {"train.seed",
       [](auto& c, auto v) {
         std::uint64_t s = 0;
         if (!text::try_parse_int(v, s)) throw_parse("expected a nonnegative 64-bit integer");
         c.train.seed = s;
       }},
      {"train.discriminator_arch",
       [](auto& c, auto v) { c.train.discriminator_arch = parse_arch(v); }},
      {"train.generator_arch", [](auto& c, auto v) { c.train.generator_arch = parse_arch(v); }},
      {"train.hidden_activation",
       [](auto& c, auto v) { c.train.hidden_activation = parse_activation(std::string(v)); }},
      {"train.adam_beta1", [](auto& c, auto v) { c.train.adam_beta1 = parse_nonnegative_real(v); }},
      {"train.adam_beta2", [](auto& c, auto v) { c.train.adam_beta2 = parse_nonnegative_real(v); }},
      {"train.adam_epsilon", [](auto& c, auto v) { c.train.adam_epsilon = parse_positive_real(v); }},
      {"data.source", [](auto& c, auto v) { c.data_source = std::string(v); }},
      {"data.ood_subsample",
       [](auto& c, auto v) {
         if (v == "none" || v == "all") {
           c.ood_subsample.reset();
         } else {
           c.ood_subsample = parse_count(v);
         }
       }},
      {"data.cost_matrix", [](auto& c, auto v) { c.cost_matrix = std::string(v); }},
      {"eval.tnr_targets",
       [](auto& c, auto v) {
         std::vector<double> targets;
         for (auto item : list_items(v)) targets.push_back(parse_real(item));
         if (targets.empty()) throw_parse("at least one TNR target is required");
         for (double t : targets) {
           if (!(t > 0.0 && t <= 1.0)) throw_parse("TNR targets must lie in (0, 1]");
         }
         c.tnr_targets = std::move(targets);
       }},
      {"eval.replications", [](auto& c, auto v) { c.replications = parse_positive(v); }},
      {"eval.grid_x_min", [](auto& c, auto v) { c.grid.x_min = parse_real(v); }},
      {"eval.grid_x_max", [](auto& c, auto v) { c.grid.x_max = parse_real(v); }},
      {"eval.grid_y_min", [](auto& c, auto v) { c.grid.y_min = parse_real(v); }},
      {"eval.grid_y_max", [](auto& c, auto v) { c.grid.y_max = parse_real(v); }},
      {"eval.grid_resolution", [](auto& c, auto v) { c.grid.resolution = parse_positive(v); }},
  };
  return table;
}

struct Entry {
  std::string key;  // section.key
  std::string value;
  std::size_t line;
};

std::vector<Entry> tokenize(const std::string& content) {
  static const std::set<std::string> sections = {"method", "train", "data", "eval"};
  std::vector<Entry> entries;
  std::string section;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  for (const auto& raw : text::lines(content)) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    const std::string where = "line " + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') throw_parse(where + ": malformed section header");
      section = std::string(text::trim(line.substr(1, line.size() - 2)));
      if (!sections.count(section)) throw_parse(where + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw_parse(where + ": expected key = value");
    const std::string key(text::trim(line.substr(0, eq)));
    std::string value(text::trim(line.substr(eq + 1)));
    if (section.empty()) throw_parse(where + ": key '" + key + "' outside of a section");
    const std::string full = section + "." + key;
    if (full != "method.preset" && !setters().count(full)) {
      throw_parse(where + ": unknown key '" + key + "' in [" + section + "]");
    }
    if (!seen.insert(full).second) throw_parse(where + ": duplicate key '" + full + "'");
    entries.push_back({full, std::move(value), line_no});
  }
  return entries;
}

}  // namespace

ExperimentConfig parse_config(const std::string& content,
                              const std::optional<ExperimentConfig>& base) {
  const auto entries = tokenize(content);
  std::optional<ExperimentConfig> start = base;
  bool named = base.has_value();
  for (const auto& e : entries) {
    if (e.key == "method.preset") {
      try {
        start = preset_config(e.value);
      } catch (const Error& err) {
        throw_parse("line " + std::to_string(e.line) + ": method.preset: " + err.what());
      }
      named = true;
    }
    if (e.key == "method.name") named = true;
  }
  if (!named) throw_parse("missing required key 'name' in [method]");

  ExperimentConfig config = start.value_or(ExperimentConfig{});
  for (const auto& e : entries) {
    if (e.key == "method.preset") continue;
    try {
      setters().at(e.key)(config, e.value);
    } catch (const Error& err) {
      throw_parse("line " + std::to_string(e.line) + ": " + e.key + ": " + err.what());
    }
  }
  try {
    config.validate();
  } catch (const Error& err) {
    throw_parse(std::string("invalid configuration: ") + err.what());
  }
  return config;
}

ExperimentConfig load_config(const std::string& path,
                             const std::optional<ExperimentConfig>& base) {
  return parse_config(text::read_file(path), base);
}

std::string serialize_config(const ExperimentConfig& c) {
  auto join_sizes = [](const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
  };
  const auto num = text::format_double;
  const auto& t = c.train;
  std::string out;
  out += "[method]\nname = " + std::string(to_string(c.method)) + "\n\n";
  out += "[train]\n";
  out += "beta_ood = " + num(t.beta_ood) + "\n";
  out += "beta_z = " + num(t.beta_z) + "\n";
  out += "n_d = " + std::to_string(t.n_d) + "\n";
  out += "n_g = " + std::to_string(t.n_g) + "\n";
  out += "lr_d = " + num(t.lr_d) + "\n";
  out += "lr_g = " + num(t.lr_g) + "\n";
  out += "batch_ind = " + std::to_string(t.batch_ind) + "\n";
  out += "batch_ood = " + std::to_string(t.batch_ood) + "\n";
  out += "batch_gen = " + std::to_string(t.batch_gen) + "\n";
  out += "noise_dim = " + std::to_string(t.noise_dim) + "\n";
  out += "iterations = " + std::to_string(t.iterations) + "\n";
  out += "seed = " + std::to_string(t.seed) + "\n";
  out += "discriminator_arch = " + join_sizes(t.discriminator_arch) + "\n";
  out += "generator_arch = " + join_sizes(t.generator_arch) + "\n";
  out += "hidden_activation = " + std::string(to_string(t.hidden_activation)) + "\n";
  out += "adam_beta1 = " + num(t.adam_beta1) + "\n";
  out += "adam_beta2 = " + num(t.adam_beta2) + "\n";
  out += "adam_epsilon = " + num(t.adam_epsilon) + "\n\n";
  out += "[data]\n";
  out += "source = " + c.data_source + "\n";
  out += "ood_subsample = " +
         (c.ood_subsample ? std::to_string(*c.ood_subsample) : std::string("none")) + "\n";
  out += "cost_matrix = " + c.cost_matrix + "\n\n";
  out += "[eval]\n";
  out += "tnr_targets =";
  for (double target : c.tnr_targets) out += " " + num(target);
  out += "\n";
  out += "replications = " + std::to_string(c.replications) + "\n";
  out += "grid_x_min = " + num(c.grid.x_min) + "\n";
  out += "grid_x_max = " + num(c.grid.x_max) + "\n";
  out += "grid_y_min = " + num(c.grid.y_min) + "\n";
  out += "grid_y_max = " + num(c.grid.y_max) + "\n";
  out += "grid_resolution = " + std::to_string(c.grid.resolution) + "\n";
  return out;
}

std::string config_help() {
  return R"(Configuration file (INI style; '#' or ';' start a comment line)

[method]
  name               see_ood | wood                       (required unless a preset is used)
  preset             setting1 | setting2 | wood2d         applied first; other keys override
                       setting1: see_ood (beta_ood, beta_z, n_d, n_g, lr_d, lr_g) = (1, 0.001, 2, 1, 0.0001, 0.0001)
                       setting2: see_ood (1, 100, 1, 3, 0.0001, 0.001)
                       wood2d:   wood, beta_ood = 1, lr_d = 0.001, n_d = 1
                       every preset also sets iterations = 5000
[train]
  beta_ood           weight of the observed-OoD score term         default 1
  beta_z             weight of the generated-sample score term     default 0.001
  n_d                discriminator steps per iteration             default 2
  n_g                generator steps per iteration                 default 1
  lr_d               discriminator learning rate                   default 0.0001
  lr_g               generator learning rate                       default 0.0001
  batch_ind          InD minibatch size                            default 64
  batch_ood          OoD minibatch size (capped at the pool size)  default 32
  batch_gen          generated minibatch size                      default 64
  noise_dim          generator noise dimension                     default 2
  iterations         outer training iterations                     default 2000
  seed               base seed; replication r uses seed + r        default 0
  discriminator_arch layer sizes, input to output                  default 2 128 3
  generator_arch     layer sizes, noise to data                    default 2 128 2
  hidden_activation  ReLU | Tanh                                   default ReLU
  adam_beta1         Adam first-moment decay                       default 0.5
  adam_beta2         Adam second-moment decay                      default 0.999
  adam_epsilon       Adam denominator epsilon                      default 1e-08
[data]
  source             builtin | path to a dataset CSV               default builtin
  ood_subsample      OoD training samples kept | none              default 2
  cost_matrix        binary | path to a KxK cost-matrix CSV        default binary
[eval]
  tnr_targets        list of TNR targets in (0, 1]                 default 0.95 0.99
  replications       Monte Carlo replications                      default 3
  grid_x_min         heatmap grid bounds                           default -1
  grid_x_max                                                       default 8
  grid_y_min                                                       default -1
  grid_y_max                                                       default 8
  grid_resolution    cells per axis                                default 200
)";
}

}  // namespace seeood
