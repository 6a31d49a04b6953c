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

#ifndef SEEOOD_WASSERSTEIN_HPP_
#define SEEOOD_WASSERSTEIN_HPP_

// Wasserstein score of a predicted class distribution.
//
// The transport cost from p to the one-hot target e_k has a unique plan that
// moves every p_j to class k, so
//
//     W(p, e_k; M) = sum_j p_j * M[j][k]
//
// and the score is the minimum of that over k. Under the binary cost
// (ones off the diagonal) it reduces to 1 - max_j p_j.
//
// Class indices are 0-based throughout the C++ API. Ties in every argmin or
// argmax resolve to the smallest index.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace seeood {

struct MlpParams;

/// Validated probability vector: K >= 2, entries >= 0, sum within 1e-9 of 1.
class ProbVector {
 public:
  explicit ProbVector(std::vector<double> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> values() const noexcept { return entries_; }

 private:
  std::vector<double> entries_;
};

/// Square, nonnegative, zero diagonal.
class CostMatrix {
 public:
  CostMatrix(std::size_t num_classes, std::vector<double> row_major);

  /// Ones everywhere except a zero diagonal.
  static CostMatrix binary(std::size_t num_classes);

  /// K rows of K comma-separated values.
  static CostMatrix from_csv(const std::string& content);
  static CostMatrix load_csv(const std::string& path);
  std::string to_csv() const;

  std::size_t num_classes() const noexcept { return k_; }
  double operator()(std::size_t row, std::size_t col) const { return entries_[row * k_ + col]; }
  std::span<const double> values() const noexcept { return entries_; }
  bool is_binary() const noexcept;

  friend bool operator==(const CostMatrix&, const CostMatrix&) = default;

 private:
  std::size_t k_;
  std::vector<double> entries_;
};

CostMatrix binary_cost_matrix(std::size_t num_classes);

struct ScoreResult {
  double score;
  std::size_t argmin_class;
};

/// Cost of transporting p onto e_k.
double wasserstein_to_onehot(std::span<const double> p, std::size_t k, const CostMatrix& cost);

ScoreResult wasserstein_score(std::span<const double> p, const CostMatrix& cost);
inline ScoreResult wasserstein_score(const ProbVector& p, const CostMatrix& cost) {
  return wasserstein_score(p.values(), cost);
}

/// d score / d p, i.e. column k* of the cost matrix for the tie-broken argmin k*.
std::vector<double> score_gradient(std::span<const double> p, const CostMatrix& cost);

/// Scores of a softmax network's outputs, in input order.
std::vector<double> score_batch(const MlpParams& net,
                                std::span<const std::vector<double>> inputs,
                                const CostMatrix& cost);

}  // namespace seeood

#endif  // SEEOOD_WASSERSTEIN_HPP_
