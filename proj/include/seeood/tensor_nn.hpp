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

#ifndef SEEOOD_TENSOR_NN_HPP_
#define SEEOOD_TENSOR_NN_HPP_

// Dense feed-forward networks with explicit backpropagation and Adam.
//
// A network with layer sizes s0, s1, ..., sL has L affine layers. Hidden
// layers apply the hidden activation; the last layer applies the output head.
//
// Gradient convention of mlp_backward: the output gradient is taken with
// respect to
//   - the pre-softmax logits when the head is Softmax (the loss layer folds
//     the softmax Jacobian in itself),
//   - the head output otherwise (Tanh's derivative is applied here).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace seeood {

class Rng;

enum class Activation { kReLU, kTanh };
enum class OutputHead { kSoftmax, kTanh, kIdentity };

const char* to_string(Activation activation) noexcept;
const char* to_string(OutputHead head) noexcept;
Activation parse_activation(const std::string& text);
OutputHead parse_output_head(const std::string& text);

/// Row-major dense matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), values(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return values[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values[r * cols + c]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

struct MlpParams {
  std::vector<std::size_t> layer_sizes;
  std::vector<Matrix> weights;               // layer l: sizes[l+1] x sizes[l]
  std::vector<std::vector<double>> biases;   // layer l: sizes[l+1]
  Activation hidden_activation = Activation::kReLU;
  OutputHead output_head = OutputHead::kIdentity;

  /// All-zero network of the given shape.
  static MlpParams zeros(std::vector<std::size_t> layer_sizes, Activation hidden,
                         OutputHead head);

  std::size_t layer_count() const noexcept { return weights.size(); }
  std::size_t input_dim() const { return layer_sizes.front(); }
  std::size_t output_dim() const { return layer_sizes.back(); }
  std::size_t parameter_count() const noexcept;

  /// Throws a shape error if the shape invariants are broken and a numeric
  /// error if an entry is not finite.
  void validate() const;

  /// Views over every weight matrix, then every bias vector, in layer order.
  std::vector<std::span<double>> blocks();
  std::vector<std::span<const double>> blocks() const;

  friend bool operator==(const MlpParams&, const MlpParams&) = default;
};

/// Glorot-uniform weights, zero biases.
MlpParams init_mlp(std::vector<std::size_t> layer_sizes, Activation hidden,
                   OutputHead head, Rng& rng);

/// Same shape as the MlpParams it belongs to.
struct Gradients {
  std::vector<Matrix> weights;
  std::vector<std::vector<double>> biases;

  static Gradients zeros_like(const MlpParams& params);

  bool matches(const MlpParams& params) const noexcept;
  void add_scaled(const Gradients& other, double scale);
  void scale(double factor);
  double max_abs() const noexcept;

  std::vector<std::span<double>> blocks();
  std::vector<std::span<const double>> blocks() const;

  friend bool operator==(const Gradients&, const Gradients&) = default;
};

/// Intermediate values of one forward pass.
struct ForwardCache {
  std::vector<std::size_t> layer_sizes;
  std::vector<std::vector<double>> layer_inputs;   // input to each layer
  std::vector<std::vector<double>> pre_activation;  // affine output of each layer
  std::vector<double> output;
};

struct ForwardResult {
  std::vector<double> output;
  ForwardCache cache;
};

struct BackwardResult {
  Gradients grads;
  std::vector<double> input_gradient;
};

ForwardResult mlp_forward(const MlpParams& params, std::span<const double> input);

/// Forward pass without keeping a cache.
std::vector<double> mlp_predict(const MlpParams& params, std::span<const double> input);

BackwardResult mlp_backward(const MlpParams& params, const ForwardCache& cache,
                            std::span<const double> output_gradient);

/// Max-shifted softmax.
std::vector<double> softmax(std::span<const double> logits);

/// log(sum(exp(z))) computed as max + log(sum(exp(z - max))).
double log_sum_exp(std::span<const double> logits);

struct AdamState {
  Gradients m;
  Gradients v;
  std::uint64_t t = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  static AdamState fresh(const MlpParams& params, double beta1, double beta2,
                         double epsilon);

  friend bool operator==(const AdamState&, const AdamState&) = default;
};

/// One bias-corrected Adam step (descent on `grads`). No weight decay.
void adam_step(MlpParams& params, const Gradients& grads, AdamState& state, double lr);

/// Central differences of `loss` with respect to every scalar parameter.
Gradients finite_difference_gradient(
    const std::function<double(const MlpParams&)>& loss, const MlpParams& params,
    double step);

/// Text form: header line, one line of weights per layer, one line of biases
/// per layer; 17 significant digits so that parsing is bit-exact.
std::string mlp_to_text(const MlpParams& params);
MlpParams mlp_from_text(const std::string& text);

void save_mlp(const MlpParams& params, const std::string& path);
MlpParams load_mlp(const std::string& path);

}  // namespace seeood

#endif  // SEEOOD_TENSOR_NN_HPP_
