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

#include "seeood/wasserstein.hpp"

#include <cmath>

#include "seeood/error.hpp"
#include "seeood/tensor_nn.hpp"
#include "text_io.hpp"

namespace seeood {

ProbVector::ProbVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.size() < 2) throw_domain("a probability vector needs at least two classes");
  double sum = 0.0;
  for (double v : entries_) {
    if (!std::isfinite(v) || v < 0.0) throw_domain("probability entries must be finite and >= 0");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw_domain("probability entries must sum to 1");
}

CostMatrix::CostMatrix(std::size_t num_classes, std::vector<double> row_major)
    : k_(num_classes), entries_(std::move(row_major)) {
  if (k_ < 2) throw_domain("cost matrix needs at least two classes");
  if (entries_.size() != k_ * k_) throw_shape("cost matrix must be square");
  for (std::size_t r = 0; r < k_; ++r) {
    for (std::size_t c = 0; c < k_; ++c) {
      const double v = entries_[r * k_ + c];
      if (!std::isfinite(v) || v < 0.0) {
        throw_domain("cost matrix entries must be finite and nonnegative");
      }
      if (r == c && v != 0.0) throw_domain("cost matrix diagonal must be zero");
    }
  }
}

CostMatrix CostMatrix::binary(std::size_t num_classes) {
  if (num_classes < 2) throw_domain("binary cost matrix needs K >= 2");
  std::vector<double> m(num_classes * num_classes, 1.0);
  for (std::size_t i = 0; i < num_classes; ++i) m[i * num_classes + i] = 0.0;
  return CostMatrix(num_classes, std::move(m));
}

CostMatrix binary_cost_matrix(std::size_t num_classes) { return CostMatrix::binary(num_classes); }

bool CostMatrix::is_binary() const noexcept {
  for (std::size_t r = 0; r < k_; ++r) {
    for (std::size_t c = 0; c < k_; ++c) {
      if ((*this)(r, c) != (r == c ? 0.0 : 1.0)) return false;
    }
  }
  return true;
}

CostMatrix CostMatrix::from_csv(const std::string& content) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  for (const auto& line : text::lines(content)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    std::vector<double> row;
    for (auto cell : text::split(line, ',')) {
      row.push_back(text::parse_double(cell, "cost matrix line " + std::to_string(line_no)));
    }
    rows.push_back(std::move(row));
  }
  const std::size_t k = rows.size();
  std::vector<double> flat;
  for (const auto& row : rows) {
    if (row.size() != k) {
      throw_shape("cost matrix CSV must have K rows of K values");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return CostMatrix(k, std::move(flat));
}

CostMatrix CostMatrix::load_csv(const std::string& path) {
  return from_csv(text::read_file(path));
}

std::string CostMatrix::to_csv() const {
  std::string out;
  for (std::size_t r = 0; r < k_; ++r) {
    for (std::size_t c = 0; c < k_; ++c) {
      if (c > 0) out += ',';
      out += text::format_double((*this)(r, c));
    }
    out += '\n';
  }
  return out;
}

namespace {

void check_dims(std::span<const double> p, const CostMatrix& cost) {
  if (p.size() != cost.num_classes()) {
    throw_shape("probability vector has " + std::to_string(p.size()) +
                " entries, cost matrix is " + std::to_string(cost.num_classes()) + "x" +
                std::to_string(cost.num_classes()));
  }
}

double column_cost(std::span<const double> p, std::size_t k, const CostMatrix& cost) {
  double total = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) total += p[j] * cost(j, k);
  return total;
}

}  // namespace

double wasserstein_to_onehot(std::span<const double> p, std::size_t k, const CostMatrix& cost) {
  check_dims(p, cost);
  if (k >= cost.num_classes()) {
    throw_domain("class index " + std::to_string(k) + " out of range");
  }
  return column_cost(p, k, cost);
}

ScoreResult wasserstein_score(std::span<const double> p, const CostMatrix& cost) {
  check_dims(p, cost);
  if (cost.is_binary()) {
    // 1 - max p, without accumulating the off-diagonal sum.
    std::size_t best = 0;
    for (std::size_t j = 1; j < p.size(); ++j) {
      if (p[j] > p[best]) best = j;
    }
    return {1.0 - p[best], best};
  }
  ScoreResult result{column_cost(p, 0, cost), 0};
  for (std::size_t k = 1; k < cost.num_classes(); ++k) {
    const double w = column_cost(p, k, cost);
    if (w < result.score) result = {w, k};
  }
  return result;
}

std::vector<double> score_gradient(std::span<const double> p, const CostMatrix& cost) {
  const std::size_t k = wasserstein_score(p, cost).argmin_class;
  std::vector<double> grad(cost.num_classes());
  for (std::size_t j = 0; j < grad.size(); ++j) grad[j] = cost(j, k);
  return grad;
}

std::vector<double> score_batch(const MlpParams& net,
                                std::span<const std::vector<double>> inputs,
                                const CostMatrix& cost) {
  if (net.output_head != OutputHead::kSoftmax) {
    throw_shape("score_batch needs a softmax network");
  }
  if (net.output_dim() != cost.num_classes()) {
    throw_shape("network output size does not match the cost matrix");
  }
  std::vector<double> scores;
  scores.reserve(inputs.size());
  for (const auto& x : inputs) scores.push_back(wasserstein_score(mlp_predict(net, x), cost).score);
  return scores;
}

}  // namespace seeood
