#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "seeood/detection.hpp"
#include "seeood/error.hpp"
#include "seeood/rng.hpp"
#include "seeood/tensor_nn.hpp"
#include "seeood/wasserstein.hpp"

using namespace seeood;

TEST_CASE("select_threshold: worked examples") {
  std::vector<double> s;
  for (int i = 1; i <= 10; ++i) s.push_back(i / 10.0);
  CHECK(select_threshold(s, 0.9).eta == 0.9);
  CHECK(select_threshold(s, 1.0).eta == 1.0);
  const std::vector<double> flat(7, 0.25);
  for (double t : {0.1, 0.5, 1.0}) CHECK(select_threshold(flat, t).eta == 0.25);
  CHECK_THROWS_AS(select_threshold({}, 0.9), Error);
  CHECK_THROWS_AS(select_threshold(s, 0.0), Error);
  CHECK_THROWS_AS(select_threshold(s, 1.5), Error);
}

TEST_CASE("select_threshold: sound and minimal on random lists") {
  Rng rng(1);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + rng.uniform_index(60);
    std::vector<double> s(n);
    for (double& v : s) v = rng.uniform_index(4) == 0 ? 0.5 : std::floor(rng.uniform() * 20) / 20;
    for (double target : {0.9, 0.95, 0.99, 1.0}) {
      const double eta = select_threshold(s, target).eta;
      CHECK(eta == oracle::threshold(s, target));
      const auto below = std::count_if(s.begin(), s.end(), [&](double v) { return v <= eta; });
      CHECK(static_cast<double>(below) / n >= target);
      for (double c : s) {
        if (c < eta) {
          const auto k = std::count_if(s.begin(), s.end(), [&](double v) { return v <= c; });
          CHECK(static_cast<double>(k) / n < target);
        }
      }
    }
  }
}

TEST_CASE("detect: ties are InD") {
  const Threshold th{0.3, 0.95};
  CHECK(detect(0.3, th) == Verdict::kInD);
  CHECK(detect(0.3 + 1e-9, th) == Verdict::kOoD);
  CHECK(detect(0.0, th) == Verdict::kInD);
}

TEST_CASE("tpr_at_tnr: worked examples") {
  const auto r = tpr_at_tnr(std::vector<double>{0.1, 0.2}, std::vector<double>{0.5, 0.6}, 1.0);
  CHECK(r.threshold.eta == 0.2);
  CHECK(r.tpr == 1.0);
  const std::vector<double> same{0.5, 0.5};
  const auto tie = tpr_at_tnr(same, same, 1.0);
  CHECK(tie.threshold.eta == 0.5);
  CHECK(tie.tpr == 0.0);
  CHECK_THROWS_AS(tpr_at_tnr(same, {}, 0.9), Error);
  CHECK_THROWS_AS(tpr_at_tnr({}, same, 0.9), Error);
}

TEST_CASE("tpr_at_tnr: separated scores and monotone in the target") {
  Rng rng(2);
  std::vector<double> ind(100);
  std::vector<double> ood(100);
  for (double& v : ind) v = 0.3 * rng.uniform();
  for (double& v : ood) v = 0.31 + 0.3 * rng.uniform();
  for (double t : {0.5, 0.9, 0.99, 1.0}) CHECK(tpr_at_tnr(ind, ood, t).tpr == 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    for (double& v : ind) v = rng.uniform();
    for (double& v : ood) v = rng.uniform();
    double prev = 1.0;
    for (double t = 0.05; t <= 1.0; t += 0.05) {
      const double tpr = tpr_at_tnr(ind, ood, t).tpr;
      CHECK(tpr <= prev);
      prev = tpr;
    }
  }
}

TEST_CASE("mad: worked examples") {
  CHECK(mad(std::vector<double>{1, 2, 3}) == doctest::Approx(2.0 / 3.0));
  CHECK(mad(std::vector<double>{4.2}) == 0.0);
  CHECK(mad(std::vector<double>{7, 7, 7}) == 0.0);
  CHECK_THROWS_AS(mad({}), Error);
}

TEST_CASE("classification_accuracy: tie-break and range") {
  const MlpParams zero = MlpParams::zeros({2, 3, 3}, Activation::kReLU, OutputHead::kSoftmax);
  std::vector<LabeledPoint> pts{{{0, 0}, 0}, {{1, 1}, 1}, {{2, 2}, 0}, {{3, 3}, 2}};
  CHECK(classification_accuracy(zero, pts) == 0.5);
  MlpParams one = MlpParams::zeros({2, 3}, Activation::kReLU, OutputHead::kSoftmax);
  one.biases[0] = {0.0, 10.0, 0.0};
  CHECK(classification_accuracy(one, std::vector<LabeledPoint>{{{0, 0}, 1}}) == 1.0);
  CHECK_THROWS_AS(classification_accuracy(zero, {}), Error);
}

TEST_CASE("heatmap: zero net, cell centres and single cell") {
  const MlpParams zero = MlpParams::zeros({2, 3, 3}, Activation::kReLU, OutputHead::kSoftmax);
  GridSpec g;
  g.resolution = 5;
  const Heatmap h = score_heatmap(zero, g, CostMatrix::binary(3));
  CHECK(h.values.size() == 25u);
  for (double v : h.values) CHECK(v == doctest::Approx(2.0 / 3.0));
  CHECK(g.cell_x(0) == doctest::Approx(-1.0 + 0.9));
  CHECK(g.cell_y(4) == doctest::Approx(8.0 - 0.9));
  GridSpec one{0.0, 2.0, 4.0, 6.0, 1};
  CHECK(one.cell_x(0) == 1.0);
  CHECK(one.cell_y(0) == 5.0);
  const MlpParams three = MlpParams::zeros({3, 3}, Activation::kReLU, OutputHead::kSoftmax);
  CHECK_THROWS_AS(score_heatmap(three, g, CostMatrix::binary(3)), Error);
  CHECK_THROWS_AS((GridSpec{1.0, 0.0, 0.0, 1.0, 3}.validate()), Error);
  CHECK_THROWS_AS((GridSpec{0.0, 1.0, 0.0, 1.0, 0}.validate()), Error);
}

TEST_CASE("heatmap: rows follow y, bounded and deterministic") {
  Rng rng(3);
  const MlpParams net = init_mlp({2, 16, 3}, Activation::kReLU, OutputHead::kSoftmax, rng);
  const GridSpec g{-1.0, 8.0, -1.0, 8.0, 20};
  const auto mb = CostMatrix::binary(3);
  const Heatmap h = score_heatmap(net, g, mb);
  CHECK(h == score_heatmap(net, g, mb));
  for (double v : h.values) {
    CHECK(v >= 0.0);
    CHECK(v <= 2.0 / 3.0 + 1e-15);
  }
  const std::size_t r = 13;
  const std::size_t c = 4;
  const auto p = oracle::forward(net, {g.cell_x(c), g.cell_y(r)});
  CHECK(h.at(r, c) == doctest::Approx(oracle::score(p, oracle::binary_cost(3))).epsilon(1e-14));
}

TEST_CASE("rejection_region_area: counts cells strictly above eta") {
  const std::vector<double> cells{0.1, 0.9, 0.9, 0.9};
  CHECK(rejection_region_area(cells, Threshold{0.5, 0.95}) == 0.75);
  CHECK(rejection_region_area(std::vector<double>(4, 0.2), Threshold{0.5, 0.95}) == 0.0);
  CHECK(rejection_region_area(std::vector<double>(4, 0.6), Threshold{0.5, 0.95}) == 1.0);
  CHECK(rejection_region_area(std::vector<double>(4, 0.5), Threshold{0.5, 0.95}) == 0.0);
}

TEST_CASE("heatmap CSV and PGM") {
  Heatmap h;
  h.grid = GridSpec{0.0, 1.0, 0.0, 1.0, 2};
  h.num_classes = 3;
  h.values = {0.0, 0.25, 0.5, 2.0 / 3.0};
  const std::string csv = heatmap_to_csv(h);
  CHECK(heatmap_from_csv(csv, h.grid, 3) == h);
  const std::string pgm = heatmap_to_pgm(h);
  std::istringstream in(pgm);
  std::string magic;
  int w = 0;
  int hh = 0;
  int maxv = 0;
  in >> magic >> w >> hh >> maxv;
  CHECK(magic == "P2");
  CHECK(w == 2);
  CHECK(hh == 2);
  CHECK(maxv == 255);
  std::vector<int> px(4);
  for (int& v : px) in >> v;
  // top image row is the highest y (row 1 of the heatmap)
  CHECK(px == std::vector<int>{191, 255, 0, 96});
  CHECK(heatmap_to_pgm(h) == pgm);
  CHECK_THROWS_AS(heatmap_from_csv("0.1,0.2\n", h.grid, 3), Error);
}
