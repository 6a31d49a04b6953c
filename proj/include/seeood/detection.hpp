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

#ifndef SEEOOD_DETECTION_HPP_
#define SEEOOD_DETECTION_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "seeood/synthetic_data.hpp"

namespace seeood {

struct MlpParams;
class CostMatrix;

/// A sample is flagged OoD iff its score is strictly greater than eta.
struct Threshold {
  double eta = 0.0;
  double target_tnr = 1.0;
};

enum class Verdict { kInD, kOoD };

/// Smallest observed InD score eta with |{s <= eta}| / N >= target_tnr.
Threshold select_threshold(std::span<const double> ind_scores, double target_tnr);

Verdict detect(double score, const Threshold& threshold) noexcept;

struct TprResult {
  double tpr = 0.0;
  Threshold threshold;
};

/// Calibrates on the InD scores, then counts OoD scores strictly above eta.
TprResult tpr_at_tnr(std::span<const double> ind_scores, std::span<const double> ood_scores,
                     double target_tnr);

/// Fraction of points whose argmax class (smallest index on ties) is the label.
double classification_accuracy(const MlpParams& net, std::span<const LabeledPoint> labeled);

/// Mean absolute deviation from the mean.
double mad(std::span<const double> values);

struct GridSpec {
  double x_min = -1.0;
  double x_max = 8.0;
  double y_min = -1.0;
  double y_max = 8.0;
  std::size_t resolution = 200;

  void validate() const;
  double cell_x(std::size_t col) const noexcept;
  double cell_y(std::size_t row) const noexcept;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// resolution x resolution scores at cell centres. Row r holds the r-th y
/// value from y_min upward; column c the c-th x value from x_min.
struct Heatmap {
  GridSpec grid;
  std::size_t num_classes = 0;
  std::vector<double> values;  // row-major

  double at(std::size_t row, std::size_t col) const {
    return values[row * grid.resolution + col];
  }

  friend bool operator==(const Heatmap&, const Heatmap&) = default;
};

Heatmap score_heatmap(const MlpParams& net, const GridSpec& grid, const CostMatrix& cost);

/// Fraction of cells with score > eta.
double rejection_region_area(std::span<const double> heatmap, const Threshold& threshold);
inline double rejection_region_area(const Heatmap& heatmap, const Threshold& threshold) {
  return rejection_region_area(heatmap.values, threshold);
}

/// One line per heatmap row, comma separated, 17 significant digits.
std::string heatmap_to_csv(const Heatmap& heatmap);
Heatmap heatmap_from_csv(const std::string& content, const GridSpec& grid,
                         std::size_t num_classes);

/// ASCII "P2" image. The top image row is the highest y. Scores map linearly
/// from [0, 1 - 1/K] to [0, 255], rounded half up and clamped.
std::string heatmap_to_pgm(const Heatmap& heatmap);

}  // namespace seeood

#endif  // SEEOOD_DETECTION_HPP_
