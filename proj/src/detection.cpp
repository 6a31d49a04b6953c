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

#include "seeood/detection.hpp"

#include <algorithm>
#include <cmath>

#include "seeood/error.hpp"
#include "seeood/tensor_nn.hpp"
#include "seeood/wasserstein.hpp"
#include "text_io.hpp"

namespace seeood {

Threshold select_threshold(std::span<const double> ind_scores, double target_tnr) {
  if (ind_scores.empty()) throw_domain("threshold calibration needs InD scores");
  if (!(target_tnr > 0.0 && target_tnr <= 1.0)) throw_domain("target TNR must lie in (0, 1]");
  std::vector<double> sorted(ind_scores.begin(), ind_scores.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double dn = static_cast<double>(n);

  // Smallest count m with m / n >= target, using the same division as the
  // empirical TNR so rounding cannot disagree with it.
  auto m = static_cast<std::size_t>(std::ceil(target_tnr * dn));
  m = std::clamp<std::size_t>(m, 1, n);
  while (m > 1 && static_cast<double>(m - 1) / dn >= target_tnr) --m;
  while (m < n && static_cast<double>(m) / dn < target_tnr) ++m;
  return {sorted[m - 1], target_tnr};
}

Verdict detect(double score, const Threshold& threshold) noexcept {
  return score > threshold.eta ? Verdict::kOoD : Verdict::kInD;
}

TprResult tpr_at_tnr(std::span<const double> ind_scores, std::span<const double> ood_scores,
                     double target_tnr) {
  if (ood_scores.empty()) throw_domain("TPR needs OoD scores");
  TprResult r;
  r.threshold = select_threshold(ind_scores, target_tnr);
  std::size_t flagged = 0;
  for (double s : ood_scores) {
    if (detect(s, r.threshold) == Verdict::kOoD) ++flagged;
  }
  r.tpr = static_cast<double>(flagged) / static_cast<double>(ood_scores.size());
  return r;
}

double classification_accuracy(const MlpParams& net, std::span<const LabeledPoint> labeled) {
  if (labeled.empty()) throw_domain("accuracy of an empty set");
  std::size_t correct = 0;
  for (const auto& sample : labeled) {
    const auto out = mlp_predict(net, sample.x);
    const auto best = static_cast<std::size_t>(
        std::distance(out.begin(), std::max_element(out.begin(), out.end())));
    if (best == sample.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(labeled.size());
}

double mad(std::span<const double> values) {
  if (values.empty()) throw_domain("MAD of an empty list");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double dev = 0.0;
  for (double v : values) dev += std::abs(v - mean);
  return dev / static_cast<double>(values.size());
}

// ---------------------------------------------------------------------------
// Heatmaps

void GridSpec::validate() const {
  if (!(x_max > x_min) || !(y_max > y_min)) throw_domain("grid bounds must satisfy max > min");
  if (resolution == 0) throw_domain("grid resolution must be positive");
}

double GridSpec::cell_x(std::size_t col) const noexcept {
  return x_min + (static_cast<double>(col) + 0.5) * (x_max - x_min) /
                     static_cast<double>(resolution);
}

double GridSpec::cell_y(std::size_t row) const noexcept {
  return y_min + (static_cast<double>(row) + 0.5) * (y_max - y_min) /
                     static_cast<double>(resolution);
}

Heatmap score_heatmap(const MlpParams& net, const GridSpec& grid, const CostMatrix& cost) {
  grid.validate();
  if (net.input_dim() != 2) throw_domain("heatmaps need a network with 2D input");
  if (net.output_head != OutputHead::kSoftmax || net.output_dim() != cost.num_classes()) {
    throw_shape("heatmap network must be a softmax classifier matching the cost matrix");
  }
  Heatmap h;
  h.grid = grid;
  h.num_classes = cost.num_classes();
  h.values.resize(grid.resolution * grid.resolution);
  std::vector<double> point(2);
  for (std::size_t r = 0; r < grid.resolution; ++r) {
    point[1] = grid.cell_y(r);
    for (std::size_t c = 0; c < grid.resolution; ++c) {
      point[0] = grid.cell_x(c);
      h.values[r * grid.resolution + c] = wasserstein_score(mlp_predict(net, point), cost).score;
    }
  }
  return h;
}

double rejection_region_area(std::span<const double> heatmap, const Threshold& threshold) {
  if (heatmap.empty()) return 0.0;
  std::size_t rejected = 0;
  for (double s : heatmap) {
    if (detect(s, threshold) == Verdict::kOoD) ++rejected;
  }
  return static_cast<double>(rejected) / static_cast<double>(heatmap.size());
}

std::string heatmap_to_csv(const Heatmap& heatmap) {
  std::string out;
  const std::size_t n = heatmap.grid.resolution;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (c > 0) out += ',';
      out += text::format_double(heatmap.at(r, c));
    }
    out += '\n';
  }
  return out;
}

Heatmap heatmap_from_csv(const std::string& content, const GridSpec& grid,
                         std::size_t num_classes) {
  grid.validate();
  Heatmap h;
  h.grid = grid;
  h.num_classes = num_classes;
  std::size_t rows = 0;
  for (const auto& line : text::lines(content)) {
    if (text::trim(line).empty()) continue;
    const auto cells = text::split(line, ',');
    if (cells.size() != grid.resolution) throw_shape("heatmap CSV row length differs from grid");
    for (auto cell : cells) h.values.push_back(text::parse_double(cell, "heatmap CSV"));
    ++rows;
  }
  if (rows != grid.resolution) throw_shape("heatmap CSV row count differs from grid");
  return h;
}

std::string heatmap_to_pgm(const Heatmap& heatmap) {
  if (heatmap.num_classes < 2) throw_domain("heatmap needs the class count for PGM scaling");
  const std::size_t n = heatmap.grid.resolution;
  const double top = 1.0 - 1.0 / static_cast<double>(heatmap.num_classes);
  std::string out = "P2\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
  for (std::size_t r = n; r-- > 0;) {
    for (std::size_t c = 0; c < n; ++c) {
      const double scaled = heatmap.at(r, c) / top * 255.0;
      const long level = std::clamp(static_cast<long>(std::floor(scaled + 0.5)), 0L, 255L);
      if (c > 0) out += ' ';
      out += std::to_string(level);
    }
    out += '\n';
  }
  return out;
}

}  // namespace seeood
