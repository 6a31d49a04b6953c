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

#include "seeood/tensor_nn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "seeood/error.hpp"
#include "seeood/rng.hpp"
#include "text_io.hpp"

namespace seeood {

const char* to_string(Activation activation) noexcept {
  return activation == Activation::kReLU ? "ReLU" : "Tanh";
}

const char* to_string(OutputHead head) noexcept {
  switch (head) {
    case OutputHead::kSoftmax: return "Softmax";
    case OutputHead::kTanh: return "Tanh";
    case OutputHead::kIdentity: return "Identity";
  }
  return "Identity";
}

Activation parse_activation(const std::string& text) {
  if (text == "ReLU") return Activation::kReLU;
  if (text == "Tanh") return Activation::kTanh;
  throw_parse("unknown activation '" + text + "' (expected ReLU or Tanh)");
}

OutputHead parse_output_head(const std::string& text) {
  if (text == "Softmax") return OutputHead::kSoftmax;
  if (text == "Tanh") return OutputHead::kTanh;
  if (text == "Identity") return OutputHead::kIdentity;
  throw_parse("unknown output head '" + text + "' (expected Softmax, Tanh or Identity)");
}

// ---------------------------------------------------------------------------
// Parameters

MlpParams MlpParams::zeros(std::vector<std::size_t> layer_sizes, Activation hidden,
                           OutputHead head) {
  if (layer_sizes.size() < 2) throw_shape("an MLP needs at least input and output sizes");
  for (std::size_t s : layer_sizes) {
    if (s == 0) throw_shape("layer sizes must be positive");
  }
  MlpParams p;
  p.hidden_activation = hidden;
  p.output_head = head;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    p.weights.emplace_back(layer_sizes[l + 1], layer_sizes[l]);
    p.biases.emplace_back(layer_sizes[l + 1], 0.0);
  }
  p.layer_sizes = std::move(layer_sizes);
  return p;
}

std::size_t MlpParams::parameter_count() const noexcept {
  std::size_t n = 0;
  for (const auto& w : weights) n += w.values.size();
  for (const auto& b : biases) n += b.size();
  return n;
}

void MlpParams::validate() const {
  if (layer_sizes.size() < 2) throw_shape("an MLP needs at least input and output sizes");
  const std::size_t layers = layer_sizes.size() - 1;
  if (weights.size() != layers || biases.size() != layers) {
    throw_shape("layer count does not match layer_sizes");
  }
  for (std::size_t l = 0; l < layers; ++l) {
    const Matrix& w = weights[l];
    if (w.rows != layer_sizes[l + 1] || w.cols != layer_sizes[l] ||
        w.values.size() != w.rows * w.cols) {
      throw_shape("weight matrix " + std::to_string(l) + " has the wrong shape");
    }
    if (biases[l].size() != layer_sizes[l + 1]) {
      throw_shape("bias vector " + std::to_string(l) + " has the wrong length");
    }
  }
  for (const auto& block : blocks()) {
    for (double v : block) {
      if (!std::isfinite(v)) throw_numeric("MLP parameter is not finite");
    }
  }
}

namespace {

template <typename Owner, typename Span>
std::vector<Span> collect_blocks(Owner& owner) {
  std::vector<Span> out;
  out.reserve(owner.weights.size() + owner.biases.size());
  for (auto& w : owner.weights) out.emplace_back(w.values);
  for (auto& b : owner.biases) out.emplace_back(b);
  return out;
}

}  // namespace

std::vector<std::span<double>> MlpParams::blocks() {
  return collect_blocks<MlpParams, std::span<double>>(*this);
}
std::vector<std::span<const double>> MlpParams::blocks() const {
  return collect_blocks<const MlpParams, std::span<const double>>(*this);
}

MlpParams init_mlp(std::vector<std::size_t> layer_sizes, Activation hidden,
                   OutputHead head, Rng& rng) {
  MlpParams p = MlpParams::zeros(std::move(layer_sizes), hidden, head);
  for (auto& w : p.weights) {
    const double limit = std::sqrt(6.0 / static_cast<double>(w.rows + w.cols));
    for (double& v : w.values) v = (2.0 * rng.uniform() - 1.0) * limit;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Gradients

Gradients Gradients::zeros_like(const MlpParams& params) {
  Gradients g;
  for (const auto& w : params.weights) g.weights.emplace_back(w.rows, w.cols);
  for (const auto& b : params.biases) g.biases.emplace_back(b.size(), 0.0);
  return g;
}

bool Gradients::matches(const MlpParams& params) const noexcept {
  if (weights.size() != params.weights.size() || biases.size() != params.biases.size()) {
    return false;
  }
  for (std::size_t l = 0; l < weights.size(); ++l) {
    if (weights[l].rows != params.weights[l].rows ||
        weights[l].cols != params.weights[l].cols ||
        weights[l].values.size() != params.weights[l].values.size() ||
        biases[l].size() != params.biases[l].size()) {
      return false;
    }
  }
  return true;
}

void Gradients::add_scaled(const Gradients& other, double scale) {
  auto dst = blocks();
  const auto src = other.blocks();
  if (dst.size() != src.size()) throw_shape("gradient block count mismatch");
  for (std::size_t b = 0; b < dst.size(); ++b) {
    if (dst[b].size() != src[b].size()) throw_shape("gradient block size mismatch");
    for (std::size_t i = 0; i < dst[b].size(); ++i) dst[b][i] += scale * src[b][i];
  }
}

void Gradients::scale(double factor) {
  for (auto block : blocks()) {
    for (double& v : block) v *= factor;
  }
}

double Gradients::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& block : blocks()) {
    for (double v : block) m = std::max(m, std::abs(v));
  }
  return m;
}

std::vector<std::span<double>> Gradients::blocks() {
  return collect_blocks<Gradients, std::span<double>>(*this);
}
std::vector<std::span<const double>> Gradients::blocks() const {
  return collect_blocks<const Gradients, std::span<const double>>(*this);
}

// ---------------------------------------------------------------------------
// Forward / backward

std::vector<double> softmax(std::span<const double> logits) {
  if (logits.empty()) throw_shape("softmax of an empty vector");
  const double max = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - max);
    sum += out[i];
  }
  for (double& v : out) v /= sum;
  return out;
}

double log_sum_exp(std::span<const double> logits) {
  if (logits.empty()) throw_shape("log_sum_exp of an empty vector");
  const double max = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double z : logits) sum += std::exp(z - max);
  return max + std::log(sum);
}

namespace {

void affine(const Matrix& w, const std::vector<double>& b, std::span<const double> x,
            std::vector<double>& out) {
  out.assign(b.begin(), b.end());
  for (std::size_t r = 0; r < w.rows; ++r) {
    const double* row = &w.values[r * w.cols];
    double acc = 0.0;
    for (std::size_t c = 0; c < w.cols; ++c) acc += row[c] * x[c];
    out[r] += acc;
  }
}

void apply_hidden(Activation act, std::vector<double>& v) {
  if (act == Activation::kReLU) {
    for (double& x : v) x = x > 0.0 ? x : 0.0;
  } else {
    for (double& x : v) x = std::tanh(x);
  }
}

std::vector<double> apply_head(OutputHead head, const std::vector<double>& z) {
  switch (head) {
    case OutputHead::kSoftmax: return softmax(z);
    case OutputHead::kTanh: {
      std::vector<double> out(z.size());
      std::transform(z.begin(), z.end(), out.begin(), [](double x) { return std::tanh(x); });
      return out;
    }
    case OutputHead::kIdentity: return z;
  }
  return z;
}

void check_input(const MlpParams& params, std::span<const double> input) {
  if (params.layer_sizes.size() < 2 || params.weights.size() + 1 != params.layer_sizes.size()) {
    throw_shape("malformed MLP parameters");
  }
  if (input.size() != params.input_dim()) {
    throw_shape("input has length " + std::to_string(input.size()) + ", network expects " +
                std::to_string(params.input_dim()));
  }
}

}  // namespace

ForwardResult mlp_forward(const MlpParams& params, std::span<const double> input) {
  check_input(params, input);
  ForwardResult result;
  ForwardCache& cache = result.cache;
  const std::size_t layers = params.layer_count();
  cache.layer_sizes = params.layer_sizes;
  cache.layer_inputs.resize(layers);
  cache.pre_activation.resize(layers);
  cache.layer_inputs[0].assign(input.begin(), input.end());
  for (std::size_t l = 0; l < layers; ++l) {
    affine(params.weights[l], params.biases[l], cache.layer_inputs[l], cache.pre_activation[l]);
    if (l + 1 < layers) {
      cache.layer_inputs[l + 1] = cache.pre_activation[l];
      apply_hidden(params.hidden_activation, cache.layer_inputs[l + 1]);
    }
  }
  cache.output = apply_head(params.output_head, cache.pre_activation.back());
  result.output = cache.output;
  return result;
}

std::vector<double> mlp_predict(const MlpParams& params, std::span<const double> input) {
  check_input(params, input);
  std::vector<double> current(input.begin(), input.end());
  std::vector<double> next;
  for (std::size_t l = 0; l < params.layer_count(); ++l) {
    affine(params.weights[l], params.biases[l], current, next);
    if (l + 1 < params.layer_count()) apply_hidden(params.hidden_activation, next);
    current.swap(next);
  }
  return apply_head(params.output_head, current);
}

BackwardResult mlp_backward(const MlpParams& params, const ForwardCache& cache,
                            std::span<const double> output_gradient) {
  const std::size_t layers = params.layer_count();
  if (cache.layer_sizes != params.layer_sizes || cache.layer_inputs.size() != layers ||
      cache.pre_activation.size() != layers) {
    throw_contract("forward cache does not belong to these parameters");
  }
  if (output_gradient.size() != params.output_dim()) {
    throw_shape("output gradient has length " + std::to_string(output_gradient.size()) +
                ", network output is " + std::to_string(params.output_dim()));
  }

  BackwardResult result{Gradients::zeros_like(params), {}};
  std::vector<double> delta(output_gradient.begin(), output_gradient.end());
  if (params.output_head == OutputHead::kTanh) {
    for (std::size_t i = 0; i < delta.size(); ++i) {
      const double y = cache.output[i];
      delta[i] *= 1.0 - y * y;
    }
  }

  for (std::size_t l = layers; l-- > 0;) {
    const Matrix& w = params.weights[l];
    const std::vector<double>& x = cache.layer_inputs[l];
    Matrix& gw = result.grads.weights[l];
    for (std::size_t r = 0; r < w.rows; ++r) {
      const double d = delta[r];
      double* grow = &gw.values[r * w.cols];
      for (std::size_t c = 0; c < w.cols; ++c) grow[c] = d * x[c];
    }
    result.grads.biases[l] = delta;

    std::vector<double> upstream(w.cols, 0.0);
    for (std::size_t r = 0; r < w.rows; ++r) {
      const double d = delta[r];
      if (d == 0.0) continue;
      const double* row = &w.values[r * w.cols];
      for (std::size_t c = 0; c < w.cols; ++c) upstream[c] += row[c] * d;
    }
    if (l > 0) {
      const std::vector<double>& z = cache.pre_activation[l - 1];
      if (params.hidden_activation == Activation::kReLU) {
        // Subgradient at exactly zero is zero.
        for (std::size_t c = 0; c < upstream.size(); ++c) {
          if (!(z[c] > 0.0)) upstream[c] = 0.0;
        }
      } else {
        for (std::size_t c = 0; c < upstream.size(); ++c) {
          const double a = cache.layer_inputs[l][c];
          upstream[c] *= 1.0 - a * a;
        }
      }
    }
    delta.swap(upstream);
  }
  result.input_gradient = std::move(delta);
  return result;
}

// ---------------------------------------------------------------------------
// Adam

AdamState AdamState::fresh(const MlpParams& params, double beta1, double beta2,
                           double epsilon) {
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw_domain("Adam betas must lie in [0, 1)");
  }
  if (!(epsilon > 0.0)) throw_domain("Adam epsilon must be positive");
  AdamState s;
  s.m = Gradients::zeros_like(params);
  s.v = Gradients::zeros_like(params);
  s.beta1 = beta1;
  s.beta2 = beta2;
  s.epsilon = epsilon;
  return s;
}

void adam_step(MlpParams& params, const Gradients& grads, AdamState& state, double lr) {
  if (!(lr > 0.0)) throw_domain("learning rate must be positive");
  if (!grads.matches(params) || !state.m.matches(params) || !state.v.matches(params)) {
    throw_shape("Adam: gradient/state shape does not mirror the parameters");
  }
  state.t += 1;
  const double t = static_cast<double>(state.t);
  const double correction1 = 1.0 - std::pow(state.beta1, t);
  const double correction2 = 1.0 - std::pow(state.beta2, t);

  auto theta = params.blocks();
  const auto g = grads.blocks();
  auto m = state.m.blocks();
  auto v = state.v.blocks();
  for (std::size_t b = 0; b < theta.size(); ++b) {
    for (std::size_t i = 0; i < theta[b].size(); ++i) {
      const double gi = g[b][i];
      m[b][i] = state.beta1 * m[b][i] + (1.0 - state.beta1) * gi;
      v[b][i] = state.beta2 * v[b][i] + (1.0 - state.beta2) * gi * gi;
      const double m_hat = m[b][i] / correction1;
      const double v_hat = v[b][i] / correction2;
      theta[b][i] -= lr * m_hat / (std::sqrt(v_hat) + state.epsilon);
    }
  }
}

// ---------------------------------------------------------------------------
// Finite differences

Gradients finite_difference_gradient(
    const std::function<double(const MlpParams&)>& loss, const MlpParams& params,
    double step) {
  if (!(step > 0.0)) throw_domain("finite-difference step must be positive");
  MlpParams probe = params;
  Gradients out = Gradients::zeros_like(params);
  auto theta = probe.blocks();
  auto g = out.blocks();
  for (std::size_t b = 0; b < theta.size(); ++b) {
    for (std::size_t i = 0; i < theta[b].size(); ++i) {
      const double original = theta[b][i];
      theta[b][i] = original + step;
      const double plus = loss(probe);
      theta[b][i] = original - step;
      const double minus = loss(probe);
      theta[b][i] = original;
      if (!std::isfinite(plus) || !std::isfinite(minus)) {
        throw_numeric("loss evaluation is not finite during finite differencing");
      }
      g[b][i] = (plus - minus) / (2.0 * step);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text serialization

std::string mlp_to_text(const MlpParams& params) {
  params.validate();
  std::string out = "layers:";
  for (std::size_t s : params.layer_sizes) out += " " + std::to_string(s);
  out += "; hidden: ";
  out += to_string(params.hidden_activation);
  out += "; head: ";
  out += to_string(params.output_head);
  out += "\n";
  auto write_line = [&out](std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0) out += ' ';
      out += text::format_double(values[i]);
    }
    out += '\n';
  };
  for (const auto& w : params.weights) write_line(w.values);
  for (const auto& b : params.biases) write_line(b);
  return out;
}

MlpParams mlp_from_text(const std::string& content) {
  const auto all = text::lines(content);
  if (all.empty()) throw_parse("weights text is empty");

  // layers: 2 128 3; hidden: ReLU; head: Softmax
  const auto fields = text::split(all[0], ';');
  if (fields.size() != 3) throw_parse("weights header must have three ';'-separated fields");
  auto field_value = [](std::string_view field, std::string_view key) {
    field = text::trim(field);
    if (field.substr(0, key.size()) != key) {
      throw_parse("weights header: expected '" + std::string(key) + "'");
    }
    return text::trim(field.substr(key.size()));
  };
  std::vector<std::size_t> sizes;
  for (auto token : text::split_whitespace(field_value(fields[0], "layers:"))) {
    std::size_t s = 0;
    if (!text::try_parse_int(token, s)) {
      throw_parse("weights header: bad layer size '" + std::string(token) + "'");
    }
    sizes.push_back(s);
  }
  const Activation hidden = parse_activation(std::string(field_value(fields[1], "hidden:")));
  const OutputHead head = parse_output_head(std::string(field_value(fields[2], "head:")));
  MlpParams p;
  try {
    p = MlpParams::zeros(sizes, hidden, head);
  } catch (const Error& e) {
    throw_parse(std::string("weights header: ") + e.what());
  }

  auto blocks = p.blocks();
  std::size_t line_no = 1;
  for (auto block : blocks) {
    while (line_no < all.size() && text::trim(all[line_no]).empty()) ++line_no;
    if (line_no >= all.size()) throw_parse("weights text ends before all layers were read");
    const auto tokens = text::split_whitespace(all[line_no]);
    if (tokens.size() != block.size()) {
      throw_parse("weights line " + std::to_string(line_no + 1) + ": expected " +
                  std::to_string(block.size()) + " values, found " +
                  std::to_string(tokens.size()));
    }
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      block[i] = text::parse_double(tokens[i], "weights line " + std::to_string(line_no + 1));
    }
    ++line_no;
  }
  for (; line_no < all.size(); ++line_no) {
    if (!text::trim(all[line_no]).empty()) throw_parse("trailing content in weights text");
  }
  p.validate();
  return p;
}

void save_mlp(const MlpParams& params, const std::string& path) {
  text::write_file(path, mlp_to_text(params));
}

MlpParams load_mlp(const std::string& path) { return mlp_from_text(text::read_file(path)); }

}  // namespace seeood
