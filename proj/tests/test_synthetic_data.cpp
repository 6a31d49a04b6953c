#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "seeood/error.hpp"
#include "seeood/rng.hpp"
#include "seeood/synthetic_data.hpp"

using namespace seeood;

namespace {

void moments(const std::vector<Point>& pts, std::size_t coord, double& mean, double& sd) {
  double sum = 0.0;
  for (const auto& p : pts) sum += p[coord];
  mean = sum / static_cast<double>(pts.size());
  double sq = 0.0;
  for (const auto& p : pts) sq += (p[coord] - mean) * (p[coord] - mean);
  sd = std::sqrt(sq / static_cast<double>(pts.size() - 1));
}

}  // namespace

TEST_CASE("cluster: zero stddev returns the mean") {
  Rng rng(1);
  const GaussianClusterSpec spec{{1.5, -2.0}, 0.0, 0, 0, std::nullopt};
  for (const auto& p : sample_gaussian_cluster(spec, 5, rng)) CHECK(p == Point{1.5, -2.0});
}

TEST_CASE("cluster: sample moments over 10000 draws") {
  Rng rng(2);
  const GaussianClusterSpec spec{{4.0, 3.0}, 0.3, 0, 0, 0};
  const auto pts = sample_gaussian_cluster(spec, 10000, rng);
  REQUIRE(pts.size() == 10000u);
  for (std::size_t c = 0; c < 2; ++c) {
    double mean = 0.0;
    double sd = 0.0;
    moments(pts, c, mean, sd);
    CHECK(std::abs(mean - spec.mean[c]) < 0.02);
    CHECK(std::abs(sd - 0.3) < 0.02);
  }
}

TEST_CASE("cluster: deterministic under a fixed seed") {
  const GaussianClusterSpec spec{{0.0, 0.0, 1.0}, 2.0, 0, 0, 0};
  Rng a(9);
  Rng b(9);
  CHECK(sample_gaussian_cluster(spec, 100, a) == sample_gaussian_cluster(spec, 100, b));
}

TEST_CASE("simulation dataset: counts, labels and cluster means") {
  Rng rng(3);
  const Dataset ds = make_simulation_dataset(rng);
  CHECK(ds.dim == 2u);
  CHECK(ds.num_classes == 3u);
  CHECK(ds.ind_train.size() == 3000u);
  CHECK(ds.ind_test.size() == 3000u);
  CHECK(ds.ood_train.size() == 1000u);
  CHECK(ds.ood_test.size() == 1000u);
  const double means[3][2] = {{4, 3}, {3, 5}, {3, 1}};
  for (std::size_t k = 0; k < 3; ++k) {
    for (const auto* split : {&ds.ind_train, &ds.ind_test}) {
      std::vector<Point> pts;
      for (const auto& lp : *split)
        if (lp.label == k) pts.push_back(lp.x);
      CHECK(pts.size() == 1000u);
      for (std::size_t c = 0; c < 2; ++c) {
        double m = 0.0;
        double sd = 0.0;
        moments(pts, c, m, sd);
        CHECK(std::abs(m - means[k][c]) < 0.05);
        CHECK(std::abs(sd - 0.3) < 0.03);
      }
    }
  }
  double m = 0.0;
  double sd = 0.0;
  moments(ds.ood_test, 0, m, sd);
  CHECK(std::abs(m - 1.5) < 0.05);
  moments(ds.ood_test, 1, m, sd);
  CHECK(std::abs(m - 6.0) < 0.05);
  const auto specs = simulation_clusters();
  REQUIRE(specs.size() == 4u);
  CHECK_FALSE(specs[3].label.has_value());
}

TEST_CASE("subsample: sizes, membership and errors") {
  Rng rng(4);
  const Dataset ds = make_simulation_dataset(rng);
  const Dataset two = subsample_ood(ds, 2, rng);
  CHECK(two.ood_train.size() == 2u);
  for (const auto& p : two.ood_train)
    CHECK(std::find(ds.ood_train.begin(), ds.ood_train.end(), p) != ds.ood_train.end());
  CHECK(two.ood_train[0] != two.ood_train[1]);
  CHECK(two.ind_train == ds.ind_train);
  CHECK(two.ood_test == ds.ood_test);
  CHECK(subsample_ood(ds, 0, rng).ood_train.empty());
  Dataset all = subsample_ood(ds, ds.ood_train.size(), rng);
  auto sorted_a = all.ood_train;
  auto sorted_b = ds.ood_train;
  std::sort(sorted_a.begin(), sorted_a.end());
  std::sort(sorted_b.begin(), sorted_b.end());
  CHECK(sorted_a == sorted_b);
  try {
    subsample_ood(ds, 1001, rng);
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDomain);
  }
}

TEST_CASE("subsample: uniform over 10000 size-one draws from a pool of 10") {
  Dataset ds;
  ds.dim = 1;
  ds.num_classes = 2;
  for (int i = 0; i < 10; ++i) ds.ood_train.push_back({static_cast<double>(i)});
  Rng rng(5);
  std::vector<int> counts(10, 0);
  for (int t = 0; t < 10000; ++t) {
    const Dataset one = subsample_ood(ds, 1, rng);
    counts[static_cast<std::size_t>(one.ood_train[0][0])]++;
  }
  for (int c : counts) CHECK(std::abs(c / 10000.0 - 0.1) < 0.02);
}

TEST_CASE("noise: moments, empty draw and determinism") {
  Rng rng(6);
  CHECK(sample_noise(2, 0, rng).empty());
  const auto z = sample_noise(2, 10000, rng);
  for (std::size_t c = 0; c < 2; ++c) {
    double m = 0.0;
    double sd = 0.0;
    moments(z, c, m, sd);
    CHECK(std::abs(m) < 0.05);
    CHECK(std::abs(sd - 1.0) < 0.05);
  }
  Rng a(7);
  Rng b(7);
  CHECK(sample_noise(3, 50, a) == sample_noise(3, 50, b));
}

TEST_CASE("dataset CSV: round trip and labels") {
  Rng rng(8);
  const Dataset ds = subsample_ood(make_simulation_dataset(rng), 2, rng);
  const std::string csv = dataset_to_csv(ds);
  CHECK(csv.rfind("x1,x2,label,split\n", 0) == 0);
  CHECK(csv.find(",-1,ood_train\n") != std::string::npos);
  CHECK(csv.find(",0,ind_") == std::string::npos);
  const Dataset back = dataset_from_csv(csv);
  CHECK(back == ds);
  CHECK(dataset_to_csv(back) == csv);
}

TEST_CASE("dataset CSV: malformed input") {
  CHECK_THROWS_AS(dataset_from_csv(""), Error);
  CHECK_THROWS_AS(dataset_from_csv("a,b\n"), Error);
  CHECK_THROWS_AS(dataset_from_csv("x1,label,split\n1.0,1,bogus\n2.0,2,ind_train\n"), Error);
  CHECK_THROWS_AS(dataset_from_csv("x1,label,split\n1.0,x,ind_train\n"), Error);
}

TEST_CASE("dataset: validate rejects bad labels and dimensions") {
  Dataset ds;
  ds.dim = 2;
  ds.num_classes = 3;
  ds.ind_train.push_back({{1.0, 2.0}, 3});
  CHECK_THROWS_AS(ds.validate(), Error);
  ds.ind_train[0].label = 2;
  CHECK_NOTHROW(ds.validate());
  ds.ood_test.push_back({1.0});
  CHECK_THROWS_AS(ds.validate(), Error);
}
