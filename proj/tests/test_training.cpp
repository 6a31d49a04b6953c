#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "seeood/error.hpp"
#include "seeood/experiment.hpp"
#include "seeood/rng.hpp"
#include "seeood/training.hpp"

using namespace seeood;

namespace {

MlpParams random_d(Rng& rng, std::size_t hidden = 8) {
  MlpParams d = init_mlp({2, hidden, 3}, Activation::kReLU, OutputHead::kSoftmax, rng);
  for (auto& w : d.weights)
    for (double& v : w.values) v *= 3.0;
  for (auto& b : d.biases)
    for (double& v : b) v = 0.5 * rng.normal();
  return d;
}

MlpParams random_g(Rng& rng) {
  MlpParams g = init_mlp({2, 8, 2}, Activation::kReLU, OutputHead::kIdentity, rng);
  for (auto& b : g.biases)
    for (double& v : b) v = 0.5 * rng.normal();
  return g;
}

std::vector<Point> random_points(std::size_t n, Rng& rng) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({2.0 * rng.normal(), 2.0 * rng.normal()});
  return out;
}

std::vector<LabeledPoint> random_labeled(std::size_t n, Rng& rng) {
  std::vector<LabeledPoint> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({{2.0 * rng.normal(), 2.0 * rng.normal()}, rng.uniform_index(3)});
  }
  return out;
}

Dataset small_dataset(std::uint64_t seed, std::size_t n_ood = 2) {
  Rng rng(seed);
  std::vector<GaussianClusterSpec> specs{
      {{4.0, 3.0}, 0.3, 40, 10, 0},
      {{3.0, 5.0}, 0.3, 40, 10, 1},
      {{3.0, 1.0}, 0.3, 40, 10, 2},
      {{1.5, 6.0}, 0.3, 20, 10, std::nullopt}};
  return subsample_ood(make_gaussian_dataset(specs, 3, rng), n_ood, rng);
}

TrainConfig small_config() {
  TrainConfig c;
  c.discriminator_arch = {2, 16, 3};
  c.generator_arch = {2, 16, 2};
  c.iterations = 30;
  c.lr_d = 1e-3;
  c.lr_g = 1e-3;
  c.batch_ind = 16;
  c.batch_gen = 8;
  return c;
}

const CostMatrix kBinary = CostMatrix::binary(3);

}  // namespace

TEST_CASE("discriminator loss: uniform D gives ln 3") {
  const MlpParams d = MlpParams::zeros({2, 4, 3}, Activation::kReLU, OutputHead::kSoftmax);
  Rng rng(1);
  const auto l = discriminator_loss_and_grads(d, random_labeled(5, rng), random_points(3, rng),
                                              random_points(4, rng), 1.0, 1.0, kBinary);
  CHECK(l.loss == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(l.ce == doctest::Approx(std::log(3.0)));
  CHECK(l.ood_score_mean == doctest::Approx(2.0 / 3.0));
  CHECK(l.gen_score_mean == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("discriminator loss: zero weights on the score terms leave plain CE") {
  Rng rng(2);
  const MlpParams d = random_d(rng);
  const auto ind = random_labeled(6, rng);
  const auto l = discriminator_loss_and_grads(d, ind, random_points(3, rng), random_points(3, rng),
                                              0.0, 0.0, kBinary);
  double ce = 0.0;
  for (const auto& s : ind) ce += oracle::cross_entropy(d, s.x, s.label);
  CHECK(l.loss == doctest::Approx(ce / 6.0).epsilon(1e-13));
  CHECK(l.loss == l.ce);
}

TEST_CASE("discriminator loss: decomposition and oracle value") {
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const MlpParams d = random_d(rng);
    const auto ind = random_labeled(4, rng);
    const auto ood = random_points(3, rng);
    const auto gen = random_points(5, rng);
    const double bo = 0.5 + rng.uniform();
    const double bz = 2.0 * rng.uniform();
    const auto l = discriminator_loss_and_grads(d, ind, ood, gen, bo, bz, kBinary);
    CHECK(std::abs(l.loss - (l.ce - bo * l.ood_score_mean + bz * l.gen_score_mean)) < 1e-12);
    CHECK(l.loss == doctest::Approx(oracle::discriminator_loss(d, ind, ood, gen, bo, bz,
                                                               oracle::binary_cost(3)))
                        .epsilon(1e-12));
  }
}

TEST_CASE("discriminator loss: gradients match central differences") {
  Rng rng(4);
  const auto m = oracle::binary_cost(3);
  for (int t = 0; t < 10; ++t) {
    const MlpParams d = random_d(rng);
    const auto ind = random_labeled(4, rng);
    const auto ood = random_points(4, rng);
    const auto gen = random_points(4, rng);
    const double bo = 1.0;
    const double bz = 0.5 + rng.uniform();
    const auto l = discriminator_loss_and_grads(d, ind, ood, gen, bo, bz, kBinary);
    const auto numeric = oracle::numeric_gradient(
        [&](const MlpParams& p) { return oracle::discriminator_loss(p, ind, ood, gen, bo, bz, m); },
        d, 1e-4);
    CHECK(oracle::max_relative_error(oracle::flatten(l.grads), numeric) < 1e-4);
  }
}

TEST_CASE("discriminator loss: general cost matrix gradients") {
  Rng rng(5);
  const CostMatrix cost(3, {0.0, 1.0, 2.0, 0.5, 0.0, 1.5, 2.0, 0.7, 0.0});
  const std::vector<double> m(cost.values().begin(), cost.values().end());
  const MlpParams d = random_d(rng);
  const auto ind = random_labeled(4, rng);
  const auto ood = random_points(4, rng);
  const auto gen = random_points(4, rng);
  const auto l = discriminator_loss_and_grads(d, ind, ood, gen, 1.0, 1.0, cost);
  const auto numeric = oracle::numeric_gradient(
      [&](const MlpParams& p) { return oracle::discriminator_loss(p, ind, ood, gen, 1.0, 1.0, m); },
      d, 1e-4);
  CHECK(oracle::max_relative_error(oracle::flatten(l.grads), numeric) < 1e-4);
}

TEST_CASE("discriminator loss: errors") {
  const MlpParams d = MlpParams::zeros({2, 4, 3}, Activation::kReLU, OutputHead::kSoftmax);
  Rng rng(6);
  const auto ind = random_labeled(2, rng);
  const auto pts = random_points(2, rng);
  CHECK_THROWS_AS(discriminator_loss_and_grads(d, {}, pts, pts, 1, 1, kBinary), Error);
  CHECK_THROWS_AS(discriminator_loss_and_grads(d, ind, {}, pts, 1, 1, kBinary), Error);
  CHECK_NOTHROW(discriminator_loss_and_grads(d, ind, pts, {}, 1, 1, kBinary));
  CHECK_THROWS_AS(discriminator_loss_and_grads(d, ind, pts, pts, 1, 1, CostMatrix::binary(4)),
                  Error);
  std::vector<LabeledPoint> bad{{{0.0, 0.0}, 3}};
  CHECK_THROWS_AS(discriminator_loss_and_grads(d, bad, pts, pts, 1, 1, kBinary), Error);
}

TEST_CASE("generator objective: uniform D gives beta_z * 2/3 and zero gradient") {
  const MlpParams d = MlpParams::zeros({2, 4, 3}, Activation::kReLU, OutputHead::kSoftmax);
  Rng rng(7);
  const MlpParams g = random_g(rng);
  const auto noise = random_points(6, rng);
  const auto obj = generator_objective_and_grads(d, g, noise, 2.5, kBinary);
  CHECK(obj.objective == doctest::Approx(2.5 * 2.0 / 3.0));
  CHECK(obj.grads.max_abs() == 0.0);
  const auto zero = generator_objective_and_grads(d, g, noise, 0.0, kBinary);
  CHECK(zero.objective == 0.0);
  CHECK(zero.grads.max_abs() == 0.0);
}

TEST_CASE("generator objective: gradients match central differences") {
  Rng rng(8);
  const auto m = oracle::binary_cost(3);
  for (int t = 0; t < 10; ++t) {
    const MlpParams d = random_d(rng);
    const MlpParams g = random_g(rng);
    const auto noise = random_points(4, rng);
    const double bz = 0.5 + rng.uniform();
    const auto obj = generator_objective_and_grads(d, g, noise, bz, kBinary);
    CHECK(obj.objective == doctest::Approx(oracle::generator_objective(d, g, noise, bz, m)));
    CHECK(obj.objective >= 0.0);
    const auto numeric = oracle::numeric_gradient(
        [&](const MlpParams& p) { return oracle::generator_objective(d, p, noise, bz, m); }, g,
        1e-4);
    CHECK(oracle::max_relative_error(oracle::flatten(obj.grads), numeric) < 1e-4);
  }
}

TEST_CASE("generator objective: shape mismatch") {
  const MlpParams d = MlpParams::zeros({3, 4, 3}, Activation::kReLU, OutputHead::kSoftmax);
  const MlpParams g = MlpParams::zeros({2, 4, 2}, Activation::kReLU, OutputHead::kIdentity);
  try {
    generator_objective_and_grads(d, g, std::vector<Point>{{0.0, 0.0}}, 1.0, kBinary);
    FAIL("expected a shape error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kShape);
  }
}

TEST_CASE("sample_generator: identity generator reproduces the noise") {
  MlpParams g = MlpParams::zeros({2, 2}, Activation::kReLU, OutputHead::kIdentity);
  g.weights[0](0, 0) = 1.0;
  g.weights[0](1, 1) = 1.0;
  Rng a(9);
  Rng b(9);
  CHECK(sample_generator(g, 20, 2, a) == sample_noise(2, 20, b));
  CHECK(sample_generator(g, 0, 2, a).empty());
  CHECK_THROWS_AS(sample_generator(g, 1, 3, a), Error);
}

TEST_CASE("train: loss decomposition in every record") {
  const Dataset ds = small_dataset(10);
  const TrainConfig c = small_config();
  Rng rng(11);
  const auto h = train_see_ood(c, ds, kBinary, rng);
  REQUIRE(h.records.size() == c.iterations);
  REQUIRE(h.generator.has_value());
  for (const auto& r : h.records) {
    REQUIRE(r.gen_score_mean.has_value());
    CHECK(std::abs(r.loss - (r.ce - c.beta_ood * r.ood_score_mean + c.beta_z * *r.gen_score_mean)) <
          1e-12);
    CHECK(std::isfinite(*r.gen_objective));
  }
}

TEST_CASE("train: deterministic under a fixed seed") {
  const Dataset ds = small_dataset(12);
  const TrainConfig c = small_config();
  Rng a(13);
  Rng b(13);
  const auto ha = train_see_ood(c, ds, kBinary, a);
  const auto hb = train_see_ood(c, ds, kBinary, b);
  CHECK(ha == hb);
  CHECK(history_to_csv(ha) == history_to_csv(hb));
  Rng wa(14);
  Rng wb(14);
  CHECK(train_wood(c, ds, kBinary, wa) == train_wood(c, ds, kBinary, wb));
}

TEST_CASE("train: OoD batches are capped at the pool size") {
  const Dataset ds = small_dataset(15, 3);
  TrainConfig big = small_config();
  big.batch_ood = 32;
  TrainConfig exact = big;
  exact.batch_ood = 3;
  CHECK(big.effective_batch_ood(ds.ood_train.size()) == 3u);
  Rng a(16);
  Rng b(16);
  CHECK(train_see_ood(big, ds, kBinary, a) == train_see_ood(exact, ds, kBinary, b));
  Rng wa(17);
  Rng wb(17);
  CHECK(train_wood(big, ds, kBinary, wa) == train_wood(exact, ds, kBinary, wb));
}

TEST_CASE("train: zero iterations return the initialization") {
  const Dataset ds = small_dataset(18);
  TrainConfig c = small_config();
  c.iterations = 0;
  Rng rng(19);
  const auto h = train_see_ood(c, ds, kBinary, rng);
  CHECK(h.records.empty());
  Rng ref(19);
  const MlpParams d0 = init_mlp(c.discriminator_arch, c.hidden_activation, OutputHead::kSoftmax, ref);
  const MlpParams g0 = init_mlp(c.generator_arch, c.hidden_activation, OutputHead::kIdentity, ref);
  CHECK(h.discriminator == d0);
  CHECK(*h.generator == g0);
  CHECK(history_to_csv(h) == "iteration,loss,ce,ood_score_mean,gen_score_mean,gen_objective\n");
}

TEST_CASE("train: WOOD with beta 0 follows a plain classifier") {
  const Dataset ds = small_dataset(20);
  TrainConfig c = small_config();
  c.beta_ood = 0.0;
  c.n_d = 2;
  Rng rng(21);
  const auto h = train_wood(c, ds, kBinary, rng);
  CHECK_FALSE(h.generator.has_value());

  Rng ref(21);
  MlpParams d = init_mlp(c.discriminator_arch, c.hidden_activation, OutputHead::kSoftmax, ref);
  AdamState opt = AdamState::fresh(d, c.adam_beta1, c.adam_beta2, c.adam_epsilon);
  const std::size_t b_ood = c.effective_batch_ood(ds.ood_train.size());
  for (std::size_t it = 0; it < c.iterations; ++it) {
    for (std::size_t s = 0; s < c.n_d; ++s) {
      std::vector<LabeledPoint> batch;
      for (std::size_t i = 0; i < c.batch_ind; ++i)
        batch.push_back(ds.ind_train[ref.uniform_index(ds.ind_train.size())]);
      for (std::size_t i = 0; i < b_ood; ++i) ref.uniform_index(ds.ood_train.size());
      Gradients g = Gradients::zeros_like(d);
      const double w = 1.0 / static_cast<double>(batch.size());
      for (const auto& p : batch) {
        const auto fwd = mlp_forward(d, p.x);
        std::vector<double> gz = fwd.output;
        gz[p.label] -= 1.0;
        for (double& v : gz) v *= w;
        g.add_scaled(mlp_backward(d, fwd.cache, gz).grads, 1.0);
      }
      adam_step(d, g, opt, c.lr_d);
    }
  }
  CHECK(h.discriminator == d);
}

TEST_CASE("train: errors") {
  Dataset ds = small_dataset(22, 0);
  const TrainConfig c = small_config();
  Rng rng(23);
  CHECK_THROWS_AS(train_see_ood(c, ds, kBinary, rng), Error);
  CHECK_THROWS_AS(train_wood(c, ds, kBinary, rng), Error);
  const Dataset ok = small_dataset(22);
  TrainConfig bad = c;
  bad.n_d = 0;
  CHECK_THROWS_AS(train_see_ood(bad, ok, kBinary, rng), Error);
  bad = c;
  bad.generator_arch = {3, 16, 2};
  CHECK_THROWS_AS(train_see_ood(bad, ok, kBinary, rng), Error);
  CHECK_THROWS_AS(train_see_ood(c, ok, CostMatrix::binary(4), rng), Error);
}

TEST_CASE("train: history CSV leaves generator columns empty for WOOD") {
  const Dataset ds = small_dataset(24);
  TrainConfig c = small_config();
  c.iterations = 2;
  Rng rng(25);
  const std::string csv = history_to_csv(train_wood(c, ds, kBinary, rng));
  const auto second_line = csv.substr(csv.find('\n') + 1);
  CHECK(second_line.rfind("1,", 0) == 0);
  CHECK(second_line.find(",,\n") != std::string::npos);
}

TEST_CASE("train: frozen Setting II discriminator, generator ascent does not decrease the objective") {
  ExperimentConfig cfg = preset_config("setting2");
  const Dataset data = build_dataset(cfg, 0);
  const TrainHistory h = train_model(cfg, data, 0);
  const MlpParams& d = h.discriminator;
  MlpParams g = *h.generator;
  const auto& t = cfg.train;
  AdamState opt = AdamState::fresh(g, t.adam_beta1, t.adam_beta2, t.adam_epsilon);
  Rng rng(26);
  const auto probe = sample_noise(t.noise_dim, 2000, rng);
  const double before = generator_objective_and_grads(d, g, probe, t.beta_z, kBinary).objective;
  for (int step = 0; step < 200; ++step) {
    const auto noise = sample_noise(t.noise_dim, t.batch_gen, rng);
    auto obj = generator_objective_and_grads(d, g, noise, t.beta_z, kBinary);
    obj.grads.scale(-1.0);
    adam_step(g, obj.grads, opt, t.lr_g);
  }
  const double after = generator_objective_and_grads(d, g, probe, t.beta_z, kBinary).objective;
  CHECK(after >= before);
}
