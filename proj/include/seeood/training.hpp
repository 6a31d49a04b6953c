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

#ifndef SEEOOD_TRAINING_HPP_
#define SEEOOD_TRAINING_HPP_

// Adversarial training of a Wasserstein-score OoD discriminator.
//
// The discriminator D minimizes
//
//     mean CE(D(x_ind), y) - beta_ood * mean S(D(x_ood)) + beta_z * mean S(D(G(z)))
//
// and the generator G maximizes beta_z * mean S(D(G(z))), where S is the
// Wasserstein score. WOOD is the same discriminator loss without the
// generator term.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seeood/synthetic_data.hpp"
#include "seeood/tensor_nn.hpp"
#include "seeood/wasserstein.hpp"

namespace seeood {

class Rng;

struct TrainConfig {
  double beta_ood = 1.0;
  double beta_z = 0.001;
  std::size_t n_d = 2;
  std::size_t n_g = 1;
  double lr_d = 1e-4;
  double lr_g = 1e-4;
  std::size_t batch_ind = 64;
  std::size_t batch_ood = 32;
  std::size_t batch_gen = 64;
  std::size_t noise_dim = 2;
  std::size_t iterations = 2000;
  std::uint64_t seed = 0;
  std::vector<std::size_t> discriminator_arch{2, 128, 3};
  std::vector<std::size_t> generator_arch{2, 128, 2};
  Activation hidden_activation = Activation::kReLU;
  double adam_beta1 = 0.5;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;

  /// Throws a domain error naming the first violated constraint.
  void validate() const;

  /// OoD minibatch size actually drawn: min(batch_ood, pool_size).
  std::size_t effective_batch_ood(std::size_t pool_size) const noexcept;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

struct IterationRecord {
  // Discriminator side, averaged over the n_d steps of the iteration.
  double loss = 0.0;
  double ce = 0.0;
  double ood_score_mean = 0.0;
  // Absent for WOOD.
  std::optional<double> gen_score_mean;
  // beta_z * mean S(D(G(z))) before each generator step, averaged over n_g.
  std::optional<double> gen_objective;

  friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

struct TrainHistory {
  std::vector<IterationRecord> records;
  MlpParams discriminator;
  std::optional<MlpParams> generator;

  friend bool operator==(const TrainHistory&, const TrainHistory&) = default;
};

struct DiscriminatorLoss {
  double loss = 0.0;
  double ce = 0.0;               // term (1)
  double ood_score_mean = 0.0;   // term (2), before the -beta_ood weight
  double gen_score_mean = 0.0;   // term (3), before the beta_z weight
  Gradients grads;
};

DiscriminatorLoss discriminator_loss_and_grads(const MlpParams& discriminator,
                                               std::span<const LabeledPoint> ind_batch,
                                               std::span<const Point> ood_batch,
                                               std::span<const Point> gen_batch,
                                               double beta_ood, double beta_z,
                                               const CostMatrix& cost);

struct GeneratorObjective {
  double objective = 0.0;
  Gradients grads;  // gradient of the objective (ascent direction)
};

/// The discriminator is held fixed; its input gradient is chained into G.
GeneratorObjective generator_objective_and_grads(const MlpParams& discriminator,
                                                 const MlpParams& generator,
                                                 std::span<const Point> noise_batch,
                                                 double beta_z, const CostMatrix& cost);

std::vector<Point> sample_generator(const MlpParams& generator, std::size_t count,
                                    std::size_t noise_dim, Rng& rng);

/// Alternating descent/ascent. D is initialized first, then G, both from
/// `rng`. Each discriminator step draws (in order) the InD batch, the OoD
/// batch and the noise batch, uniformly with replacement.
TrainHistory train_see_ood(const TrainConfig& config, const Dataset& data, const CostMatrix& cost,
                           Rng& rng);

/// Discriminator-only training; each iteration runs n_d steps with lr_d.
TrainHistory train_wood(const TrainConfig& config, const Dataset& data, const CostMatrix& cost,
                        Rng& rng);

std::string history_to_csv(const TrainHistory& history);

}  // namespace seeood

#endif  // SEEOOD_TRAINING_HPP_
