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

#ifndef SEEOOD_EXPERIMENT_HPP_
#define SEEOOD_EXPERIMENT_HPP_

// Experiment orchestration: INI-style configs, presets, Monte Carlo
// replications with mean/MAD aggregation, and report files.
//
// Replication r uses seed = train.seed + r. Its dataset is drawn from the
// stream derive_seed(seed, 0) (simulation, then OoD subsampling) and its
// training from derive_seed(seed, 1), so `gen-data` followed by `train` on the
// exported CSV reproduces the same run.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seeood/detection.hpp"
#include "seeood/synthetic_data.hpp"
#include "seeood/training.hpp"
#include "seeood/wasserstein.hpp"

namespace seeood {

enum class Method { kSeeOod, kWood };

const char* to_string(Method method) noexcept;

struct ExperimentConfig {
  Method method = Method::kSeeOod;
  TrainConfig train;
  std::string data_source = "builtin";       // "builtin" or a dataset CSV path
  std::optional<std::size_t> ood_subsample = 2;
  std::string cost_matrix = "binary";        // "binary" or a cost-matrix CSV path
  std::vector<double> tnr_targets{0.95, 0.99};
  std::size_t replications = 3;
  GridSpec grid;

  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Named presets: "setting1", "setting2", "wood2d".
ExperimentConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

/// Parses the INI text. Keys not set in the text keep the value from `base`
/// (or from a `preset` key in [method], which is applied first). Without a
/// base or preset, [method] name is required.
ExperimentConfig parse_config(const std::string& text,
                              const std::optional<ExperimentConfig>& base = std::nullopt);
ExperimentConfig load_config(const std::string& path,
                             const std::optional<ExperimentConfig>& base = std::nullopt);

/// Every key written explicitly; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

/// Human-readable list of every section and key with its default.
std::string config_help();

CostMatrix resolve_cost_matrix(const ExperimentConfig& config, std::size_t num_classes);

/// Dataset of one run: builtin simulation or CSV, then optional OoD subsampling.
Dataset build_dataset(const ExperimentConfig& config, std::uint64_t seed);

/// Trains per the configured method with the seed's training stream.
TrainHistory train_model(const ExperimentConfig& config, const Dataset& data, std::uint64_t seed);

struct Evaluation {
  std::vector<double> tnr_targets;
  std::vector<double> tpr;
  std::vector<double> eta;
  double accuracy = 0.0;
  double mean_ind_score = 0.0;
  double mean_ood_score = 0.0;
};

Evaluation evaluate_model(const ExperimentConfig& config, const MlpParams& discriminator,
                          const Dataset& data);
std::string evaluation_to_csv(const Evaluation& evaluation);

struct ReplicationResult {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  Evaluation evaluation;
  TrainHistory history;
  std::optional<Heatmap> heatmap;  // only for 2D inputs
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ReplicationResult> replications;
  // Aggregates per TNR target.
  std::vector<double> mean_tpr;
  std::vector<double> mad_tpr;
  std::vector<double> mean_eta;
  std::vector<double> mad_eta;
  double mean_accuracy = 0.0;
  double mad_accuracy = 0.0;
  double mean_ind_score = 0.0;
  double mad_ind_score = 0.0;
  double mean_ood_score = 0.0;
  double mad_ood_score = 0.0;
  std::vector<std::string> files;  // relative to the output directory
};

/// Runs every replication. With a non-empty output_dir, writes report.csv,
/// summary.txt, config.ini and rep_<r>/ {history.csv, discriminator.txt,
/// generator.txt, heatmap.csv, heatmap.pgm}.
ExperimentReport run_experiment(const ExperimentConfig& config, const std::string& output_dir = "");

std::string report_to_csv(const ExperimentReport& report);
std::string report_summary(const ExperimentReport& report);

struct RegionComparison {
  double tnr = 0.0;
  std::vector<double> area_a;
  std::vector<double> area_b;
  std::vector<double> difference;  // area_a - area_b
};

/// Rejection-region areas of both reports, each at its own calibrated eta.
RegionComparison compare_rejection_regions(const ExperimentReport& a, const ExperimentReport& b,
                                           double tnr);
std::string comparison_to_csv(const RegionComparison& comparison);

}  // namespace seeood

#endif  // SEEOOD_EXPERIMENT_HPP_
