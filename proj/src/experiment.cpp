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

#include "seeood/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "seeood/error.hpp"
#include "seeood/rng.hpp"
#include "text_io.hpp"

namespace seeood {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kDataStream = 0;
constexpr std::uint64_t kTrainStream = 1;

std::vector<Point> inputs_of(const std::vector<LabeledPoint>& labeled) {
  std::vector<Point> xs;
  xs.reserve(labeled.size());
  for (const auto& lp : labeled) xs.push_back(lp.x);
  return xs;
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

std::string target_label(double target) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", target);
  return buf;
}

}  // namespace

CostMatrix resolve_cost_matrix(const ExperimentConfig& config, std::size_t num_classes) {
  if (config.cost_matrix == "binary") return CostMatrix::binary(num_classes);
  CostMatrix m = CostMatrix::load_csv(config.cost_matrix);
  if (m.num_classes() != num_classes) {
    throw_shape("cost matrix is " + std::to_string(m.num_classes()) + "x" +
                std::to_string(m.num_classes()) + " but the data has " +
                std::to_string(num_classes) + " classes");
  }
  return m;
}

Dataset build_dataset(const ExperimentConfig& config, std::uint64_t seed) {
  Rng rng(derive_seed(seed, kDataStream));
  Dataset ds = config.data_source == "builtin" ? make_simulation_dataset(rng)
                                               : load_dataset(config.data_source);
  if (config.ood_subsample) ds = subsample_ood(ds, *config.ood_subsample, rng);
  return ds;
}

TrainHistory train_model(const ExperimentConfig& config, const Dataset& data, std::uint64_t seed) {
  Rng rng(derive_seed(seed, kTrainStream));
  const CostMatrix cost = resolve_cost_matrix(config, data.num_classes);
  return config.method == Method::kSeeOod ? train_see_ood(config.train, data, cost, rng)
                                          : train_wood(config.train, data, cost, rng);
}

Evaluation evaluate_model(const ExperimentConfig& config, const MlpParams& discriminator,
                          const Dataset& data) {
  const CostMatrix cost = resolve_cost_matrix(config, data.num_classes);
  if (data.ind_test.empty() || data.ood_test.empty()) {
    throw_domain("evaluation needs InD and OoD test data");
  }
  const auto ind_scores = score_batch(discriminator, inputs_of(data.ind_test), cost);
  const auto ood_scores = score_batch(discriminator, data.ood_test, cost);
  Evaluation ev;
  ev.tnr_targets = config.tnr_targets;
  for (double target : config.tnr_targets) {
    const TprResult r = tpr_at_tnr(ind_scores, ood_scores, target);
    ev.tpr.push_back(r.tpr);
    ev.eta.push_back(r.threshold.eta);
  }
  ev.accuracy = classification_accuracy(discriminator, data.ind_test);
  ev.mean_ind_score = mean_of(ind_scores);
  ev.mean_ood_score = mean_of(ood_scores);
  return ev;
}

std::string evaluation_to_csv(const Evaluation& ev) {
  std::string out = "metric,value\n";
  const auto num = text::format_double;
  out += "accuracy," + num(ev.accuracy) + "\n";
  out += "mean_ind_score," + num(ev.mean_ind_score) + "\n";
  out += "mean_ood_score," + num(ev.mean_ood_score) + "\n";
  for (std::size_t i = 0; i < ev.tnr_targets.size(); ++i) {
    out += "tpr@" + target_label(ev.tnr_targets[i]) + "," + num(ev.tpr[i]) + "\n";
    out += "eta@" + target_label(ev.tnr_targets[i]) + "," + num(ev.eta[i]) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Replications

namespace {

ReplicationResult run_replication(const ExperimentConfig& config, std::size_t index) {
  ReplicationResult r;
  r.index = index;
  r.seed = config.train.seed + index;
  const Dataset data = build_dataset(config, r.seed);
  r.history = train_model(config, data, r.seed);
  r.evaluation = evaluate_model(config, r.history.discriminator, data);
  if (r.history.discriminator.input_dim() == 2) {
    r.heatmap = score_heatmap(r.history.discriminator, config.grid,
                              resolve_cost_matrix(config, data.num_classes));
  }
  return r;
}

void aggregate(ExperimentReport& report) {
  const auto& reps = report.replications;
  auto collect = [&reps](auto getter) {
    std::vector<double> v;
    for (const auto& r : reps) v.push_back(getter(r));
    return v;
  };
  for (std::size_t t = 0; t < report.config.tnr_targets.size(); ++t) {
    const auto tpr = collect([t](const ReplicationResult& r) { return r.evaluation.tpr[t]; });
    const auto eta = collect([t](const ReplicationResult& r) { return r.evaluation.eta[t]; });
    report.mean_tpr.push_back(mean_of(tpr));
    report.mad_tpr.push_back(mad(tpr));
    report.mean_eta.push_back(mean_of(eta));
    report.mad_eta.push_back(mad(eta));
  }
  const auto acc = collect([](const ReplicationResult& r) { return r.evaluation.accuracy; });
  const auto ind = collect([](const ReplicationResult& r) { return r.evaluation.mean_ind_score; });
  const auto ood = collect([](const ReplicationResult& r) { return r.evaluation.mean_ood_score; });
  report.mean_accuracy = mean_of(acc);
  report.mad_accuracy = mad(acc);
  report.mean_ind_score = mean_of(ind);
  report.mad_ind_score = mad(ind);
  report.mean_ood_score = mean_of(ood);
  report.mad_ood_score = mad(ood);
}

void write_outputs(ExperimentReport& report, const std::string& output_dir) {
  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec) throw_io("cannot create output directory '" + output_dir + "': " + ec.message());
  auto emit = [&report, &output_dir](const std::string& rel, const std::string& content) {
    text::write_file((fs::path(output_dir) / rel).string(), content);
    report.files.push_back(rel);
  };
  for (const auto& r : report.replications) {
    const std::string dir = "rep_" + std::to_string(r.index);
    fs::create_directories(fs::path(output_dir) / dir, ec);
    if (ec) throw_io("cannot create '" + dir + "': " + ec.message());
    emit(dir + "/history.csv", history_to_csv(r.history));
    emit(dir + "/discriminator.txt", mlp_to_text(r.history.discriminator));
    if (r.history.generator) emit(dir + "/generator.txt", mlp_to_text(*r.history.generator));
    if (r.heatmap) {
      emit(dir + "/heatmap.csv", heatmap_to_csv(*r.heatmap));
      emit(dir + "/heatmap.pgm", heatmap_to_pgm(*r.heatmap));
    }
  }
  emit("config.ini", serialize_config(report.config));
  emit("report.csv", report_to_csv(report));
  report.files.push_back("summary.txt");
  text::write_file((fs::path(output_dir) / "summary.txt").string(), report_summary(report));
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config, const std::string& output_dir) {
  config.validate();
  ExperimentReport report;
  report.config = config;
  for (std::size_t i = 0; i < config.replications; ++i) {
    try {
      report.replications.push_back(run_replication(config, i));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kNumeric) {
        throw_numeric("replication " + std::to_string(i) + ": " + e.what());
      }
      throw;
    }
  }
  aggregate(report);
  if (!output_dir.empty()) write_outputs(report, output_dir);
  return report;
}

std::string report_to_csv(const ExperimentReport& report) {
  const auto num = text::format_double;
  const auto& targets = report.config.tnr_targets;
  std::string out = "replication,seed,accuracy,mean_ind_score,mean_ood_score";
  for (double t : targets) out += ",tpr@" + target_label(t) + ",eta@" + target_label(t);
  out += "\n";
  for (const auto& r : report.replications) {
    const auto& ev = r.evaluation;
    out += std::to_string(r.index) + "," + std::to_string(r.seed) + "," + num(ev.accuracy) + "," +
           num(ev.mean_ind_score) + "," + num(ev.mean_ood_score);
    for (std::size_t i = 0; i < targets.size(); ++i) out += "," + num(ev.tpr[i]) + "," + num(ev.eta[i]);
    out += "\n";
  }
  out += "mean,," + num(report.mean_accuracy) + "," + num(report.mean_ind_score) + "," +
         num(report.mean_ood_score);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    out += "," + num(report.mean_tpr[i]) + "," + num(report.mean_eta[i]);
  }
  out += "\nmad,," + num(report.mad_accuracy) + "," + num(report.mad_ind_score) + "," +
         num(report.mad_ood_score);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    out += "," + num(report.mad_tpr[i]) + "," + num(report.mad_eta[i]);
  }
  out += "\n";
  return out;
}

std::string report_summary(const ExperimentReport& report) {
  const auto& c = report.config;
  const auto& t = c.train;
  char buf[512];
  std::string out = "Wasserstein-score OoD experiment\n================================\n\n";
  out += "method: " + std::string(to_string(c.method)) + "\n";
  if (c.method == Method::kSeeOod) {
    std::snprintf(buf, sizeof(buf),
                  "(beta_ood, beta_z, n_d, n_g, lr_d, lr_g) = (%g, %g, %zu, %zu, %g, %g)\n",
                  t.beta_ood, t.beta_z, t.n_d, t.n_g, t.lr_d, t.lr_g);
  } else {
    std::snprintf(buf, sizeof(buf), "(beta, lr, steps per iteration) = (%g, %g, %zu)\n",
                  t.beta_ood, t.lr_d, t.n_d);
  }
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "iterations: %zu   batches (InD, OoD, gen): (%zu, %zu, %zu)   noise_dim: %zu\n"
                "adam: beta1 = %g, beta2 = %g, epsilon = %g\n",
                t.iterations, t.batch_ind, t.batch_ood, t.batch_gen, t.noise_dim, t.adam_beta1,
                t.adam_beta2, t.adam_epsilon);
  out += buf;
  out += "data: " + c.data_source + ", OoD training samples kept: " +
         (c.ood_subsample ? std::to_string(*c.ood_subsample) : std::string("all")) +
         ", cost matrix: " + c.cost_matrix + "\n";
  std::snprintf(buf, sizeof(buf), "heatmap grid: x in [%g, %g], y in [%g, %g], %zu x %zu cells\n",
                c.grid.x_min, c.grid.x_max, c.grid.y_min, c.grid.y_max, c.grid.resolution,
                c.grid.resolution);
  out += buf;
  out += "presets (5000 iterations each): setting1 = (1, 0.001, 2, 1, 0.0001, 0.0001), "
         "setting2 = (1, 100, 1, 3, 0.0001, 0.001), wood2d = (beta 1, lr 0.001)\n\n";

  out += "replications: " + std::to_string(report.replications.size()) + "\n";
  for (const auto& r : report.replications) {
    std::snprintf(buf, sizeof(buf), "  #%zu seed %llu: accuracy %.4f, mean InD score %.4f, mean OoD score %.4f",
                  r.index, static_cast<unsigned long long>(r.seed), r.evaluation.accuracy,
                  r.evaluation.mean_ind_score, r.evaluation.mean_ood_score);
    out += buf;
    for (std::size_t i = 0; i < c.tnr_targets.size(); ++i) {
      std::snprintf(buf, sizeof(buf), ", TPR@%g%%TNR %.2f%% (eta %.6f)", c.tnr_targets[i] * 100.0,
                    r.evaluation.tpr[i] * 100.0, r.evaluation.eta[i]);
      out += buf;
    }
    out += "\n";
  }
  out += "\naggregate (mean +- MAD):\n";
  for (std::size_t i = 0; i < c.tnr_targets.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "  TPR@%g%%TNR: %.2f%% +- %.2f%%\n", c.tnr_targets[i] * 100.0,
                  report.mean_tpr[i] * 100.0, report.mad_tpr[i] * 100.0);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "  accuracy: %.2f%% +- %.2f%%\n", report.mean_accuracy * 100.0,
                report.mad_accuracy * 100.0);
  out += buf;
  return out;
}

// ---------------------------------------------------------------------------
// Comparison

RegionComparison compare_rejection_regions(const ExperimentReport& a, const ExperimentReport& b,
                                           double tnr) {
  if (!(a.config.grid == b.config.grid)) throw_domain("reports use different heatmap grids");
  if (a.replications.size() != b.replications.size()) {
    throw_domain("reports have different replication counts");
  }
  auto target_index = [tnr](const ExperimentReport& r) {
    const auto& targets = r.config.tnr_targets;
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (std::abs(targets[i] - tnr) <= 1e-12) return i;
    }
    throw_domain("TNR target " + target_label(tnr) + " was not evaluated in a report");
  };
  const std::size_t ia = target_index(a);
  const std::size_t ib = target_index(b);
  RegionComparison cmp;
  cmp.tnr = tnr;
  for (std::size_t r = 0; r < a.replications.size(); ++r) {
    const auto& ra = a.replications[r];
    const auto& rb = b.replications[r];
    if (!ra.heatmap || !rb.heatmap) throw_domain("reports carry no heatmaps");
    if (!(ra.heatmap->grid == rb.heatmap->grid)) throw_domain("heatmap grids differ");
    cmp.area_a.push_back(rejection_region_area(*ra.heatmap, {ra.evaluation.eta[ia], tnr}));
    cmp.area_b.push_back(rejection_region_area(*rb.heatmap, {rb.evaluation.eta[ib], tnr}));
    cmp.difference.push_back(cmp.area_a.back() - cmp.area_b.back());
  }
  return cmp;
}

std::string comparison_to_csv(const RegionComparison& cmp) {
  const auto num = text::format_double;
  std::string out = "replication,tnr,area_a,area_b,difference\n";
  for (std::size_t r = 0; r < cmp.area_a.size(); ++r) {
    out += std::to_string(r) + "," + num(cmp.tnr) + "," + num(cmp.area_a[r]) + "," +
           num(cmp.area_b[r]) + "," + num(cmp.difference[r]) + "\n";
  }
  return out;
}

}  // namespace seeood
