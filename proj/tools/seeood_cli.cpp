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

// seeood: command-line driver for the Wasserstein-score OoD lab.
//
//   seeood gen-data  --preset setting1 --out run/ --seed 0
//   seeood train     --config my.ini   --out run/
//   seeood evaluate  --preset setting1 --out run/ --weights run/discriminator.txt
//   seeood heatmap   --preset setting1 --out run/ --weights run/discriminator.txt
//   seeood replicate --preset setting2 --out s2/
//   seeood compare   --preset setting1 --against-preset wood2d --out cmp/
//
// Exit status: 0 on success, 2 for configuration or usage errors, 3 for
// runtime and numeric failures.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "seeood/seeood.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

// Thrown to unwind with a status from the library.
struct Failure {
  seeood_status status;
  std::string context;
  std::string detail = {};
};

void check(seeood_status status, const std::string& context) {
  if (status != SEEOOD_OK) throw Failure{status, context, seeood_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

using Config = Handle<seeood_config, seeood_config_free>;
using DatasetH = Handle<seeood_dataset, seeood_dataset_free>;
using Mlp = Handle<seeood_mlp, seeood_mlp_free>;
using History = Handle<seeood_history, seeood_history_free>;
using EvaluationH = Handle<seeood_evaluation, seeood_evaluation_free>;
using HeatmapH = Handle<seeood_heatmap, seeood_heatmap_free>;
using Report = Handle<seeood_report, seeood_report_free>;
using Comparison = Handle<seeood_comparison, seeood_comparison_free>;

struct String {
  char* ptr = nullptr;
  ~String() { seeood_string_free(ptr); }
};

struct Common {
  std::string config_path;
  std::string preset;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "INI configuration file (see the key list below)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--preset", c.preset, "start from a named preset: setting1, setting2, wood2d")
      ->check(CLI::IsMember({"setting1", "setting2", "wood2d"}));
  cmd->add_option("--out", c.out, "output directory (created if missing)")->capture_default_str();
  cmd->add_option("--seed", c.seed, "base seed; overrides [train] seed");
}

// Preset first, then the file on top of it, then --seed.
void load_config(const std::string& path, const std::string& preset,
                 std::optional<std::uint64_t> seed, Config& config) {
  if (path.empty() && preset.empty()) {
    throw Failure{SEEOOD_ERR_PARSE, "either --config or --preset is required"};
  }
  Config base;
  if (!preset.empty()) check(seeood_config_preset(preset.c_str(), base.out()), "preset");
  if (!path.empty()) {
    check(seeood_config_load(path.c_str(), base.get(), config.out()), path);
  } else {
    std::swap(base.ptr, config.ptr);
  }
  if (seed) check(seeood_config_set_seed(config.get(), *seed), "seed");
}

std::uint64_t seed_of(const Config& config) {
  std::uint64_t s = 0;
  check(seeood_config_get_seed(config.get(), &s), "seed");
  return s;
}

std::string ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Failure{SEEOOD_ERR_IO, "cannot create '" + dir + "': " + ec.message()};
  return dir;
}

std::string join(const std::string& dir, const char* name) { return (fs::path(dir) / name).string(); }

void load_dataset(const Config& config, const std::string& data_path, std::uint64_t seed,
                  DatasetH& ds) {
  if (data_path.empty()) {
    check(seeood_dataset_build(config.get(), seed, ds.out()), "dataset");
  } else {
    check(seeood_dataset_load_csv(data_path.c_str(), ds.out()), data_path);
  }
}

void print_tpr(const Config& config, const EvaluationH& ev) {
  std::size_t n = 0;
  check(seeood_config_tnr_target_count(config.get(), &n), "targets");
  double acc = 0.0;
  check(seeood_evaluation_accuracy(ev.get(), &acc), "accuracy");
  std::printf("accuracy %.4f\n", acc);
  for (std::size_t i = 0; i < n; ++i) {
    double target = 0.0;
    double tpr = 0.0;
    double eta = 0.0;
    check(seeood_config_tnr_target(config.get(), i, &target), "targets");
    check(seeood_evaluation_tpr(ev.get(), i, &tpr, &eta), "tpr");
    std::printf("TPR@%g%%TNR %.2f%% (eta %.6f)\n", target * 100.0, tpr * 100.0, eta);
  }
}

int cmd_gen_data(const Common& c) {
  Config config;
  load_config(c.config_path, c.preset, c.seed, config);
  DatasetH ds;
  check(seeood_dataset_build(config.get(), seed_of(config), ds.out()), "dataset");
  const std::string path = join(ensure_dir(c.out), "dataset.csv");
  check(seeood_dataset_save_csv(ds.get(), path.c_str()), path);
  std::size_t dim = 0;
  std::size_t k = 0;
  std::size_t counts[4] = {0, 0, 0, 0};
  check(seeood_dataset_info(ds.get(), &dim, &k, counts), "dataset");
  std::printf("wrote %s: d=%zu K=%zu ind_train=%zu ind_test=%zu ood_train=%zu ood_test=%zu\n",
              path.c_str(), dim, k, counts[0], counts[1], counts[2], counts[3]);
  return kExitOk;
}

int cmd_train(const Common& c, const std::string& data_path) {
  Config config;
  load_config(c.config_path, c.preset, c.seed, config);
  const std::uint64_t seed = seed_of(config);
  DatasetH ds;
  load_dataset(config, data_path, seed, ds);
  History h;
  check(seeood_train(config.get(), ds.get(), seed, h.out()), "training");
  const std::string dir = ensure_dir(c.out);
  check(seeood_history_save_csv(h.get(), join(dir, "history.csv").c_str()), "history.csv");
  Mlp d;
  Mlp g;
  check(seeood_history_discriminator(h.get(), d.out()), "discriminator");
  check(seeood_mlp_save(d.get(), join(dir, "discriminator.txt").c_str()), "discriminator.txt");
  check(seeood_history_generator(h.get(), g.out()), "generator");
  if (g.get() != nullptr) {
    check(seeood_mlp_save(g.get(), join(dir, "generator.txt").c_str()), "generator.txt");
  }
  std::size_t n = 0;
  check(seeood_history_length(h.get(), &n), "history");
  std::printf("trained %zu iterations (seed %llu); outputs in %s\n", n,
              static_cast<unsigned long long>(seed), dir.c_str());
  return kExitOk;
}

int cmd_evaluate(const Common& c, const std::string& weights, const std::string& data_path) {
  Config config;
  load_config(c.config_path, c.preset, c.seed, config);
  DatasetH ds;
  load_dataset(config, data_path, seed_of(config), ds);
  const std::string dir = ensure_dir(c.out);
  const std::string w = weights.empty() ? join(dir, "discriminator.txt") : weights;
  Mlp d;
  check(seeood_mlp_load(w.c_str(), d.out()), w);
  EvaluationH ev;
  check(seeood_evaluate(config.get(), d.get(), ds.get(), ev.out()), "evaluation");
  check(seeood_evaluation_save_csv(ev.get(), join(dir, "evaluation.csv").c_str()),
        "evaluation.csv");
  print_tpr(config, ev);
  return kExitOk;
}

int cmd_heatmap(const Common& c, const std::string& weights) {
  Config config;
  load_config(c.config_path, c.preset, c.seed, config);
  const std::string dir = ensure_dir(c.out);
  const std::string w = weights.empty() ? join(dir, "discriminator.txt") : weights;
  Mlp d;
  check(seeood_mlp_load(w.c_str(), d.out()), w);
  HeatmapH hm;
  check(seeood_heatmap_compute(config.get(), d.get(), hm.out()), "heatmap");
  check(seeood_heatmap_save_csv(hm.get(), join(dir, "heatmap.csv").c_str()), "heatmap.csv");
  check(seeood_heatmap_save_pgm(hm.get(), join(dir, "heatmap.pgm").c_str()), "heatmap.pgm");
  std::size_t res = 0;
  check(seeood_heatmap_resolution(hm.get(), &res), "heatmap");
  std::printf("wrote %zux%zu heatmap to %s\n", res, res, dir.c_str());
  return kExitOk;
}

void run_report(const Config& config, const std::string& dir, Report& report) {
  check(seeood_experiment_run(config.get(), dir.c_str(), report.out()), "experiment");
}

int cmd_replicate(const Common& c) {
  Config config;
  load_config(c.config_path, c.preset, c.seed, config);
  Report report;
  run_report(config, ensure_dir(c.out), report);
  String summary;
  check(seeood_report_summary(report.get(), &summary.ptr), "summary");
  std::fputs(summary.ptr, stdout);
  return kExitOk;
}

int cmd_compare(const Common& c, const std::string& against, const std::string& against_preset,
                double tnr) {
  Config a;
  load_config(c.config_path, c.preset, c.seed, a);
  Config b;
  load_config(against, against_preset, c.seed, b);
  const std::string dir = ensure_dir(c.out);
  Report ra;
  Report rb;
  run_report(a, ensure_dir(join(dir, "a")), ra);
  run_report(b, ensure_dir(join(dir, "b")), rb);
  Comparison cmp;
  check(seeood_compare(ra.get(), rb.get(), tnr, cmp.out()), "comparison");
  check(seeood_comparison_save_csv(cmp.get(), join(dir, "comparison.csv").c_str()),
        "comparison.csv");
  std::size_t n = 0;
  check(seeood_comparison_count(cmp.get(), &n), "comparison");
  std::printf("rejection-region area at %g%% TNR (a = --config/--preset, b = --against)\n",
              tnr * 100.0);
  for (std::size_t r = 0; r < n; ++r) {
    double area_a = 0.0;
    double area_b = 0.0;
    check(seeood_comparison_areas(cmp.get(), r, &area_a, &area_b), "comparison");
    std::printf("  replication %zu: a %.4f  b %.4f  a-b %+.4f\n", r, area_a, area_b,
                area_a - area_b);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wasserstein-score OoD detection lab: data, training, evaluation, heatmaps"};
  app.require_subcommand(1);
  app.footer(std::string("\nExit status: 0 success, 2 configuration error, 3 runtime error.\n\n") +
             seeood_config_help());

  Common common;
  std::string weights;
  std::string data_path;
  std::string against;
  std::string against_preset;
  double tnr = 0.95;

  auto* gen = app.add_subcommand("gen-data", "simulate the dataset and write dataset.csv");
  add_common(gen, common);

  auto* train = app.add_subcommand(
      "train", "train one model; writes history.csv, discriminator.txt, generator.txt");
  add_common(train, common);
  train->add_option("--data", data_path, "dataset CSV written by gen-data (default: simulate)");

  auto* evaluate = app.add_subcommand("evaluate", "TPR at each TNR target; writes evaluation.csv");
  add_common(evaluate, common);
  evaluate->add_option("--weights", weights, "discriminator file (default: <out>/discriminator.txt)");
  evaluate->add_option("--data", data_path, "dataset CSV written by gen-data (default: simulate)");

  auto* heatmap = app.add_subcommand("heatmap", "score heatmap; writes heatmap.csv and heatmap.pgm");
  add_common(heatmap, common);
  heatmap->add_option("--weights", weights, "discriminator file (default: <out>/discriminator.txt)");

  auto* replicate = app.add_subcommand(
      "replicate", "Monte Carlo replications; writes report.csv, summary.txt and rep_<r>/");
  add_common(replicate, common);

  auto* compare = app.add_subcommand(
      "compare", "rejection-region areas of two experiments; writes a/, b/ and comparison.csv");
  add_common(compare, common);
  compare->add_option("--against", against, "configuration of the second experiment")
      ->check(CLI::ExistingFile);
  compare->add_option("--against-preset", against_preset, "preset of the second experiment")
      ->check(CLI::IsMember({"setting1", "setting2", "wood2d"}));
  compare->add_option("--tnr", tnr, "TNR target at which areas are compared")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*gen) return cmd_gen_data(common);
    if (*train) return cmd_train(common, data_path);
    if (*evaluate) return cmd_evaluate(common, weights, data_path);
    if (*heatmap) return cmd_heatmap(common, weights);
    if (*replicate) return cmd_replicate(common);
    if (*compare) {
      if (against.empty() && against_preset.empty()) {
        throw Failure{SEEOOD_ERR_PARSE, "compare needs --against or --against-preset"};
      }
      return cmd_compare(common, against, against_preset, tnr);
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "seeood: %s: %s%s%s\n", f.context.c_str(), seeood_status_name(f.status),
                 f.detail.empty() ? "" : ": ", f.detail.c_str());
    return f.status == SEEOOD_ERR_PARSE ? kExitConfig : kExitRuntime;
  }
  return kExitConfig;
}
