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

#ifndef SEEOOD_SYNTHETIC_DATA_HPP_
#define SEEOOD_SYNTHETIC_DATA_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace seeood {

class Rng;

using Point = std::vector<double>;

struct LabeledPoint {
  Point x;
  std::size_t label;  // 0-based class index

  friend bool operator==(const LabeledPoint&, const LabeledPoint&) = default;
};

/// Isotropic Gaussian cluster; `label` is empty for an OoD cluster.
struct GaussianClusterSpec {
  Point mean;
  double stddev = 0.0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::optional<std::size_t> label;
};

struct Dataset {
  std::vector<LabeledPoint> ind_train;
  std::vector<LabeledPoint> ind_test;
  std::vector<Point> ood_train;
  std::vector<Point> ood_test;
  std::size_t dim = 0;
  std::size_t num_classes = 0;

  /// Throws on a label outside [0, num_classes) or a point of the wrong length.
  void validate() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// `count` draws of mean + stddev * N(0, I).
std::vector<Point> sample_gaussian_cluster(const GaussianClusterSpec& spec, std::size_t count,
                                           Rng& rng);

/// Draws every cluster in order: for each, its train points then its test
/// points. InD clusters feed ind_train/ind_test, OoD clusters ood_train/ood_test.
Dataset make_gaussian_dataset(std::span<const GaussianClusterSpec> clusters,
                              std::size_t num_classes, Rng& rng);

/// The three-cluster bivariate benchmark plus one OoD cluster.
std::vector<GaussianClusterSpec> simulation_clusters();
Dataset make_simulation_dataset(Rng& rng);

/// Keeps a uniform without-replacement subsample (Fisher-Yates prefix) of the
/// OoD training pool. Nothing else changes.
Dataset subsample_ood(const Dataset& dataset, std::size_t n_keep, Rng& rng);

std::vector<Point> sample_noise(std::size_t dim, std::size_t count, Rng& rng);

// CSV columns: x1..xd,label,split. Labels are written 1-based; OoD rows carry
// label -1. split is one of ind_train, ind_test, ood_train, ood_test.
std::string dataset_to_csv(const Dataset& dataset);
Dataset dataset_from_csv(const std::string& content);
void save_dataset(const Dataset& dataset, const std::string& path);
Dataset load_dataset(const std::string& path);

}  // namespace seeood

#endif  // SEEOOD_SYNTHETIC_DATA_HPP_
