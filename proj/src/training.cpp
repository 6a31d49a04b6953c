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

#include "seeood/training.hpp"

#include <algorithm>
#include <cmath>

#include "seeood/error.hpp"
#include "seeood/rng.hpp"
#include "text_io.hpp"

namespace seeood {

void TrainConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw_domain(std::string("invalid training config: ") + what);
  };
  require(beta_ood >= 0.0 && std::isfinite(beta_ood), "beta_ood must be >= 0");
  require(beta_z >= 0.0 && std::isfinite(beta_z), "beta_z must be >= 0");
  require(n_d > 0, "n_d must be positive");
  require(n_g > 0, "n_g must be positive");
  require(lr_d > 0.0 && std::isfinite(lr_d), "lr_d must be > 0");
  require(lr_g > 0.0 && std::isfinite(lr_g), "lr_g must be > 0");
  require(batch_ind > 0, "batch_ind must be positive");
  require(batch_ood > 0, "batch_ood must be positive");
  require(batch_gen > 0, "batch_gen must be positive");
  require(noise_dim > 0, "noise_dim must be positive");
  require(discriminator_arch.size() >= 2, "discriminator_arch needs at least two sizes");
  require(generator_arch.size() >= 2, "generator_arch needs at least two sizes");
  require(std::find(discriminator_arch.begin(), discriminator_arch.end(), 0u) ==
              discriminator_arch.end(),
          "discriminator_arch sizes must be positive");
  require(std::find(generator_arch.begin(), generator_arch.end(), 0u) == generator_arch.end(),
          "generator_arch sizes must be positive");
  require(generator_arch.front() == noise_dim, "generator input size must equal noise_dim");
  require(generator_arch.back() == discriminator_arch.front(),
          "generator output size must equal discriminator input size");
  require(adam_beta1 >= 0.0 && adam_beta1 < 1.0, "adam_beta1 must lie in [0, 1)");
  require(adam_beta2 >= 0.0 && adam_beta2 < 1.0, "adam_beta2 must lie in [0, 1)");
  require(adam_epsilon > 0.0, "adam_epsilon must be > 0");
}

std::size_t TrainConfig::effective_batch_ood(std::size_t pool_size) const noexcept {
  return std::min(batch_ood, pool_size);
}

namespace {

// Vector-Jacobian product of softmax: d/dz given d/dp.
std::vector<double> softmax_vjp(const std::vector<double>& p, const std::vector<double>& grad_p,
                                double scale) {
  double dot = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) dot += grad_p[j] * p[j];
  std::vector<double> grad_z(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) grad_z[j] = scale * p[j] * (grad_p[j] - dot);
  return grad_z;
}

void check_discriminator(const MlpParams& d, const CostMatrix& cost) {
  if (d.output_head != OutputHead::kSoftmax) throw_shape("discriminator needs a softmax head");
  if (d.output_dim() != cost.num_classes()) {
    throw_shape("discriminator output size does not match the cost matrix");
  }
}

// Accumulates scale * dS/dtheta for one point and returns its score.
double accumulate_score_term(const MlpParams& d, const Point& x, double scale,
                             const CostMatrix& cost, Gradients& grads) {
  const ForwardResult fwd = mlp_forward(d, x);
  const ScoreResult s = wasserstein_score(fwd.output, cost);
  if (scale != 0.0) {
    const std::vector<double> col = score_gradient(fwd.output, cost);
    const auto grad_z = softmax_vjp(fwd.output, col, scale);
    grads.add_scaled(mlp_backward(d, fwd.cache, grad_z).grads, 1.0);
  }
  return s.score;
}

}  // namespace

DiscriminatorLoss discriminator_loss_and_grads(const MlpParams& discriminator,
                                               std::span<const LabeledPoint> ind_batch,
                                               std::span<const Point> ood_batch,
                                               std::span<const Point> gen_batch,
                                               double beta_ood, double beta_z,
                                               const CostMatrix& cost) {
  check_discriminator(discriminator, cost);
  if (ind_batch.empty()) throw_domain("discriminator loss needs a nonempty InD batch");
  if (ood_batch.empty()) throw_domain("discriminator loss needs a nonempty OoD batch");

  DiscriminatorLoss out;
  out.grads = Gradients::zeros_like(discriminator);

  // (1) cross-entropy; d/dz of -log softmax(z)_y is (p - e_y).
  const double w_ind = 1.0 / static_cast<double>(ind_batch.size());
  for (const auto& sample : ind_batch) {
    if (sample.label >= cost.num_classes()) throw_domain("InD label out of range");
    const ForwardResult fwd = mlp_forward(discriminator, sample.x);
    const auto& logits = fwd.cache.pre_activation.back();
    out.ce += w_ind * (log_sum_exp(logits) - logits[sample.label]);
    std::vector<double> grad_z = fwd.output;
    grad_z[sample.label] -= 1.0;
    for (double& g : grad_z) g *= w_ind;
    out.grads.add_scaled(mlp_backward(discriminator, fwd.cache, grad_z).grads, 1.0);
  }

  // (2) observed OoD scores, pushed up.
  const double w_ood = 1.0 / static_cast<double>(ood_batch.size());
  for (const auto& x : ood_batch) {
    out.ood_score_mean +=
        w_ood * accumulate_score_term(discriminator, x, -beta_ood * w_ood, cost, out.grads);
  }

  // (3) generated scores, pushed down. An empty batch contributes nothing.
  if (!gen_batch.empty()) {
    const double w_gen = 1.0 / static_cast<double>(gen_batch.size());
    for (const auto& x : gen_batch) {
      out.gen_score_mean +=
          w_gen * accumulate_score_term(discriminator, x, beta_z * w_gen, cost, out.grads);
    }
  }

  out.loss = out.ce - beta_ood * out.ood_score_mean + beta_z * out.gen_score_mean;
  if (!std::isfinite(out.loss)) throw_numeric("discriminator loss is not finite");
  return out;
}

GeneratorObjective generator_objective_and_grads(const MlpParams& discriminator,
                                                 const MlpParams& generator,
                                                 std::span<const Point> noise_batch,
                                                 double beta_z, const CostMatrix& cost) {
  check_discriminator(discriminator, cost);
  if (noise_batch.empty()) throw_domain("generator objective needs a nonempty noise batch");
  if (generator.output_dim() != discriminator.input_dim()) {
    throw_shape("generator output size does not match the discriminator input");
  }

  GeneratorObjective out;
  out.grads = Gradients::zeros_like(generator);
  const double w = 1.0 / static_cast<double>(noise_batch.size());
  for (const auto& z : noise_batch) {
    const ForwardResult g_fwd = mlp_forward(generator, z);
    const ForwardResult d_fwd = mlp_forward(discriminator, g_fwd.output);
    out.objective += w * beta_z * wasserstein_score(d_fwd.output, cost).score;
    if (beta_z == 0.0) continue;
    const auto grad_z =
        softmax_vjp(d_fwd.output, score_gradient(d_fwd.output, cost), beta_z * w);
    const auto d_back = mlp_backward(discriminator, d_fwd.cache, grad_z);
    out.grads.add_scaled(mlp_backward(generator, g_fwd.cache, d_back.input_gradient).grads, 1.0);
  }
  if (!std::isfinite(out.objective)) throw_numeric("generator objective is not finite");
  return out;
}

std::vector<Point> sample_generator(const MlpParams& generator, std::size_t count,
                                    std::size_t noise_dim, Rng& rng) {
  if (generator.input_dim() != noise_dim) {
    throw_shape("generator input size does not match the noise dimension");
  }
  std::vector<Point> out;
  out.reserve(count);
  for (const auto& z : sample_noise(noise_dim, count, rng)) out.push_back(mlp_predict(generator, z));
  return out;
}

namespace {

void check_training_inputs(const TrainConfig& config, const Dataset& data,
                           const CostMatrix& cost) {
  config.validate();
  data.validate();
  if (data.ind_train.empty()) throw_domain("training needs InD training data");
  if (data.ood_train.empty()) {
    throw_domain("training needs at least one observed OoD training sample");
  }
  if (config.discriminator_arch.front() != data.dim) {
    throw_shape("discriminator input size does not match the data dimension");
  }
  if (config.discriminator_arch.back() != data.num_classes ||
      cost.num_classes() != data.num_classes) {
    throw_shape("discriminator output size, cost matrix and class count disagree");
  }
}

template <typename T>
std::vector<T> draw_batch(const std::vector<T>& pool, std::size_t size, Rng& rng) {
  std::vector<T> batch;
  batch.reserve(size);
  for (std::size_t i = 0; i < size; ++i) batch.push_back(pool[rng.uniform_index(pool.size())]);
  return batch;
}

MlpParams init_discriminator(const TrainConfig& config, Rng& rng) {
  return init_mlp(config.discriminator_arch, config.hidden_activation, OutputHead::kSoftmax, rng);
}

}  // namespace

TrainHistory train_see_ood(const TrainConfig& config, const Dataset& data, const CostMatrix& cost,
                           Rng& rng) {
  check_training_inputs(config, data, cost);
  TrainHistory history;
  history.discriminator = init_discriminator(config, rng);
  history.generator =
      init_mlp(config.generator_arch, config.hidden_activation, OutputHead::kIdentity, rng);
  MlpParams& d = history.discriminator;
  MlpParams& g = *history.generator;
  AdamState d_opt = AdamState::fresh(d, config.adam_beta1, config.adam_beta2, config.adam_epsilon);
  AdamState g_opt = AdamState::fresh(g, config.adam_beta1, config.adam_beta2, config.adam_epsilon);
  const std::size_t b_ood = config.effective_batch_ood(data.ood_train.size());

  history.records.reserve(config.iterations);
  for (std::size_t it = 0; it < config.iterations; ++it) {
    IterationRecord rec;
    double gen_score = 0.0;
    for (std::size_t step = 0; step < config.n_d; ++step) {
      const auto ind = draw_batch(data.ind_train, config.batch_ind, rng);
      const auto ood = draw_batch(data.ood_train, b_ood, rng);
      const auto gen = sample_generator(g, config.batch_gen, config.noise_dim, rng);
      const auto l = discriminator_loss_and_grads(d, ind, ood, gen, config.beta_ood,
                                                  config.beta_z, cost);
      adam_step(d, l.grads, d_opt, config.lr_d);
      rec.loss += l.loss;
      rec.ce += l.ce;
      rec.ood_score_mean += l.ood_score_mean;
      gen_score += l.gen_score_mean;
    }
    const double inv_d = 1.0 / static_cast<double>(config.n_d);
    rec.loss *= inv_d;
    rec.ce *= inv_d;
    rec.ood_score_mean *= inv_d;
    rec.gen_score_mean = gen_score * inv_d;

    double objective = 0.0;
    for (std::size_t step = 0; step < config.n_g; ++step) {
      const auto noise = sample_noise(config.noise_dim, config.batch_gen, rng);
      auto obj = generator_objective_and_grads(d, g, noise, config.beta_z, cost);
      obj.grads.scale(-1.0);  // ascent
      adam_step(g, obj.grads, g_opt, config.lr_g);
      objective += obj.objective;
    }
    rec.gen_objective = objective / static_cast<double>(config.n_g);
    history.records.push_back(rec);
  }
  return history;
}

TrainHistory train_wood(const TrainConfig& config, const Dataset& data, const CostMatrix& cost,
                        Rng& rng) {
  check_training_inputs(config, data, cost);
  TrainHistory history;
  history.discriminator = init_discriminator(config, rng);
  MlpParams& d = history.discriminator;
  AdamState d_opt = AdamState::fresh(d, config.adam_beta1, config.adam_beta2, config.adam_epsilon);
  const std::size_t b_ood = config.effective_batch_ood(data.ood_train.size());

  history.records.reserve(config.iterations);
  for (std::size_t it = 0; it < config.iterations; ++it) {
    IterationRecord rec;
    for (std::size_t step = 0; step < config.n_d; ++step) {
      const auto ind = draw_batch(data.ind_train, config.batch_ind, rng);
      const auto ood = draw_batch(data.ood_train, b_ood, rng);
      const auto l = discriminator_loss_and_grads(d, ind, ood, {}, config.beta_ood, 0.0, cost);
      adam_step(d, l.grads, d_opt, config.lr_d);
      rec.loss += l.loss;
      rec.ce += l.ce;
      rec.ood_score_mean += l.ood_score_mean;
    }
    const double inv_d = 1.0 / static_cast<double>(config.n_d);
    rec.loss *= inv_d;
    rec.ce *= inv_d;
    rec.ood_score_mean *= inv_d;
    history.records.push_back(rec);
  }
  return history;
}

std::string history_to_csv(const TrainHistory& history) {
  std::string out = "iteration,loss,ce,ood_score_mean,gen_score_mean,gen_objective\n";
  auto opt = [](const std::optional<double>& v) {
    return v ? text::format_double(*v) : std::string();
  };
  for (std::size_t i = 0; i < history.records.size(); ++i) {
    const auto& r = history.records[i];
    out += std::to_string(i + 1) + "," + text::format_double(r.loss) + "," +
           text::format_double(r.ce) + "," + text::format_double(r.ood_score_mean) + "," +
           opt(r.gen_score_mean) + "," + opt(r.gen_objective) + "\n";
  }
  return out;
}

}  // namespace seeood
