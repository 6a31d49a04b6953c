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

#include "seeood/synthetic_data.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "seeood/error.hpp"
#include "seeood/rng.hpp"
#include "text_io.hpp"

namespace seeood {

void Dataset::validate() const {
  if (dim == 0) throw_shape("dataset dimension must be positive");
  if (num_classes < 2) throw_domain("dataset needs at least two classes");
  auto check_point = [this](const Point& p) {
    if (p.size() != dim) throw_shape("dataset point has the wrong dimension");
    for (double v : p) {
      if (!std::isfinite(v)) throw_numeric("dataset point is not finite");
    }
  };
  for (const auto* split : {&ind_train, &ind_test}) {
    for (const auto& lp : *split) {
      check_point(lp.x);
      if (lp.label >= num_classes) throw_domain("dataset label out of range");
    }
  }
  for (const auto* split : {&ood_train, &ood_test}) {
    for (const auto& p : *split) check_point(p);
  }
}

std::vector<Point> sample_gaussian_cluster(const GaussianClusterSpec& spec, std::size_t count,
                                           Rng& rng) {
  if (!(spec.stddev >= 0.0)) throw_domain("cluster standard deviation must be >= 0");
  std::vector<Point> points(count, Point(spec.mean.size()));
  for (auto& p : points) {
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = spec.mean[i] + spec.stddev * rng.normal();
  }
  return points;
}

Dataset make_gaussian_dataset(std::span<const GaussianClusterSpec> clusters,
                              std::size_t num_classes, Rng& rng) {
  if (clusters.empty()) throw_domain("no clusters given");
  Dataset ds;
  ds.dim = clusters.front().mean.size();
  ds.num_classes = num_classes;
  for (const auto& c : clusters) {
    if (c.mean.size() != ds.dim) throw_shape("clusters disagree on dimension");
    if (c.label && *c.label >= num_classes) throw_domain("cluster label out of range");
    auto train = sample_gaussian_cluster(c, c.n_train, rng);
    auto test = sample_gaussian_cluster(c, c.n_test, rng);
    if (c.label) {
      for (auto& p : train) ds.ind_train.push_back({std::move(p), *c.label});
      for (auto& p : test) ds.ind_test.push_back({std::move(p), *c.label});
    } else {
      for (auto& p : train) ds.ood_train.push_back(std::move(p));
      for (auto& p : test) ds.ood_test.push_back(std::move(p));
    }
  }
  ds.validate();
  return ds;
}

std::vector<GaussianClusterSpec> simulation_clusters() {
  return {
      {{4.0, 3.0}, 0.3, 1000, 1000, 0},
      {{3.0, 5.0}, 0.3, 1000, 1000, 1},
      {{3.0, 1.0}, 0.3, 1000, 1000, 2},
      {{1.5, 6.0}, 0.3, 1000, 1000, std::nullopt},
  };
}

Dataset make_simulation_dataset(Rng& rng) {
  const auto clusters = simulation_clusters();
  return make_gaussian_dataset(clusters, 3, rng);
}

Dataset subsample_ood(const Dataset& dataset, std::size_t n_keep, Rng& rng) {
  const std::size_t pool = dataset.ood_train.size();
  if (n_keep > pool) {
    throw_domain("cannot keep " + std::to_string(n_keep) + " OoD samples from a pool of " +
                 std::to_string(pool));
  }
  std::vector<std::size_t> order(pool);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < n_keep; ++i) {
    const std::size_t j = i + rng.uniform_index(pool - i);
    std::swap(order[i], order[j]);
  }
  Dataset out = dataset;
  out.ood_train.clear();
  out.ood_train.reserve(n_keep);
  for (std::size_t i = 0; i < n_keep; ++i) out.ood_train.push_back(dataset.ood_train[order[i]]);
  return out;
}

std::vector<Point> sample_noise(std::size_t dim, std::size_t count, Rng& rng) {
  if (dim == 0) throw_domain("noise dimension must be positive");
  return sample_gaussian_cluster({Point(dim, 0.0), 1.0, 0, 0, std::nullopt}, count, rng);
}

// ---------------------------------------------------------------------------
// CSV

std::string dataset_to_csv(const Dataset& dataset) {
  dataset.validate();
  std::string out;
  for (std::size_t i = 1; i <= dataset.dim; ++i) out += "x" + std::to_string(i) + ",";
  out += "label,split\n";
  auto row = [&out](const Point& p, long label, const char* split) {
    for (double v : p) out += text::format_double(v) + ",";
    out += std::to_string(label) + "," + split + "\n";
  };
  for (const auto& lp : dataset.ind_train) row(lp.x, static_cast<long>(lp.label) + 1, "ind_train");
  for (const auto& lp : dataset.ind_test) row(lp.x, static_cast<long>(lp.label) + 1, "ind_test");
  for (const auto& p : dataset.ood_train) row(p, -1, "ood_train");
  for (const auto& p : dataset.ood_test) row(p, -1, "ood_test");
  return out;
}

Dataset dataset_from_csv(const std::string& content) {
  const auto all = text::lines(content);
  if (all.empty()) throw_parse("dataset CSV is empty");
  const auto header = text::split(all[0], ',');
  if (header.size() < 3 || text::trim(header[header.size() - 2]) != "label" ||
      text::trim(header.back()) != "split") {
    throw_parse("dataset CSV header must be x1..xd,label,split");
  }
  Dataset ds;
  ds.dim = header.size() - 2;
  for (std::size_t i = 0; i < ds.dim; ++i) {
    if (text::trim(header[i]) != "x" + std::to_string(i + 1)) {
      throw_parse("dataset CSV header: expected column x" + std::to_string(i + 1));
    }
  }
  std::size_t max_label = 0;
  for (std::size_t n = 1; n < all.size(); ++n) {
    if (text::trim(all[n]).empty()) continue;
    const std::string where = "dataset CSV line " + std::to_string(n + 1);
    const auto cells = text::split(all[n], ',');
    if (cells.size() != ds.dim + 2) throw_parse(where + ": wrong number of columns");
    Point p(ds.dim);
    for (std::size_t i = 0; i < ds.dim; ++i) p[i] = text::parse_double(cells[i], where);
    long label = 0;
    if (!text::try_parse_int(cells[ds.dim], label)) throw_parse(where + ": bad label");
    const auto split = text::trim(cells[ds.dim + 1]);
    const bool is_ind = split == "ind_train" || split == "ind_test";
    const bool is_ood = split == "ood_train" || split == "ood_test";
    if (!is_ind && !is_ood) throw_parse(where + ": unknown split '" + std::string(split) + "'");
    if (is_ind) {
      if (label < 1) throw_parse(where + ": InD labels start at 1");
      const auto k = static_cast<std::size_t>(label - 1);
      max_label = std::max(max_label, k + 1);
      (split == "ind_train" ? ds.ind_train : ds.ind_test).push_back({std::move(p), k});
    } else {
      if (label != -1) throw_parse(where + ": OoD rows must have label -1");
      (split == "ood_train" ? ds.ood_train : ds.ood_test).push_back(std::move(p));
    }
  }
  ds.num_classes = max_label;
  ds.validate();
  return ds;
}

void save_dataset(const Dataset& dataset, const std::string& path) {
  text::write_file(path, dataset_to_csv(dataset));
}

Dataset load_dataset(const std::string& path) { return dataset_from_csv(text::read_file(path)); }

}  // namespace seeood
