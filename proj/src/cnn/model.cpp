// Copyright 2026 The stabscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stabscope/cnn/model.hpp"

#include <cmath>

#include "stabscope/errors.hpp"

namespace stabscope::cnn {

std::string variant_name(Variant v) { return v == Variant::kMethod1 ? "method1" : "method2"; }

Variant parse_variant(const std::string& s) {
  if (s == "method1") return Variant::kMethod1;
  if (s == "method2") return Variant::kMethod2;
  throw DimensionError("unknown model variant '" + s + "'");
}

std::string pool_mode_name(PoolMode m) { return m == PoolMode::kMax ? "max" : "average"; }

PoolMode parse_pool_mode(const std::string& s) {
  if (s == "max") return PoolMode::kMax;
  if (s == "average") return PoolMode::kAverage;
  throw DimensionError("unknown pool mode '" + s + "'");
}

void ModelConfig::validate() const {
  if (conv_filters.empty()) throw DimensionError("ModelConfig: no conv blocks");
  for (auto f : conv_filters) {
    if (f == 0) throw DimensionError("ModelConfig: zero filters");
  }
  if (pooled_blocks > conv_filters.size()) throw DimensionError("ModelConfig: pooled_blocks exceeds conv blocks");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) throw DimensionError("ModelConfig: dropout_rate not in [0,1)");
  if (!(l2_coeff >= 0.0)) throw DimensionError("ModelConfig: negative l2_coeff");
  if (input_channels != 1 && input_channels != 4) throw DimensionError("ModelConfig: input_channels must be 1 or 4");
  for (auto e : input_extent) {
    if (e == 0) throw DimensionError("ModelConfig: zero input extent");
  }
  if (variant == Variant::kMethod1 && dense_hidden == 0) throw DimensionError("ModelConfig: zero dense_hidden");
}

ModelConfig method1_config(std::size_t n_snapshots, std::size_t n_qubits) {
  ModelConfig c;
  c.variant = Variant::kMethod1;
  c.kernel = {3, 1, 3};
  // Snapshot order carries no information, so the first block is averaged
  // over the whole snapshot axis and later blocks see per-qubit pattern
  // frequencies.
  c.pool = {n_snapshots, 1, 1};
  c.pool_mode = PoolMode::kAverage;
  c.pooled_blocks = 1;
  c.input_channels = 1;
  c.input_extent = {n_snapshots, 1, n_qubits};
  return c;
}

ModelConfig method2_config(std::size_t n_snapshots, std::size_t n_layers, std::size_t n_qubits) {
  ModelConfig c;
  c.variant = Variant::kMethod2;
  c.kernel = {3, 3, 3};
  c.pool = {n_snapshots, 1, 1};
  c.pool_mode = PoolMode::kAverage;
  c.pooled_blocks = 1;
  c.dropout_rate = 0.0;
  c.input_channels = 4;
  c.input_extent = {n_snapshots, n_layers, n_qubits};
  return c;
}

namespace {

// Glorot-uniform: U(-a, a) with a = sqrt(6 / (fan_in + fan_out)).
void init_glorot(Tensor& t, std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  const double a = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (auto& v : t.values()) v = a * (2.0 * uniform01(rng) - 1.0);
}

}  // namespace

Model::Model(const ModelConfig& config, std::uint64_t init_seed) : config_(config), init_seed_(init_seed) {
  config_.validate();
  Rng rng(sub_seed(init_seed, 0x1417));
  std::size_t channels = config_.input_channels;
  const std::size_t kvol = config_.kernel[0] * config_.kernel[1] * config_.kernel[2];
  for (std::size_t b = 0; b < config_.conv_filters.size(); ++b) {
    auto conv = std::make_unique<Conv3d>(channels, config_.conv_filters[b], config_.kernel);
    init_glorot(conv->weight().value, channels * kvol, config_.conv_filters[b] * kvol, rng);
    layers_.push_back(std::move(conv));
    layers_.push_back(std::make_unique<Relu>());
    if (b < config_.pooled_blocks) {
      if (config_.pool_mode == PoolMode::kMax) {
        layers_.push_back(std::make_unique<MaxPool3d>(config_.pool));
      } else {
        layers_.push_back(std::make_unique<AvgPool3d>(config_.pool));
      }
    }
    channels = config_.conv_filters[b];
  }
  if (config_.variant == Variant::kMethod1) {
    Shape s = input_shape(config_.input_extent[0], config_.input_extent[1], config_.input_extent[2]);
    for (auto& l : layers_) s = l->output_shape(s);
    const std::size_t flat = shape_size(s);
    layers_.push_back(std::make_unique<Flatten>());
    auto hidden = std::make_unique<Dense>(flat, config_.dense_hidden);
    init_glorot(hidden->weight().value, flat, config_.dense_hidden, rng);
    layers_.push_back(std::move(hidden));
    layers_.push_back(std::make_unique<Relu>());
    layers_.push_back(std::make_unique<Dropout>(config_.dropout_rate));
    channels = config_.dense_hidden;
  } else {
    layers_.push_back(std::make_unique<GlobalAvgPool>());
  }
  auto head = std::make_unique<Dense>(channels, 1);
  init_glorot(head->weight().value, channels, 1, rng);
  layers_.push_back(std::move(head));
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    for (auto* p : layers_[i]->params()) p->name = "layer" + std::to_string(i) + "." + p->name;
  }
  acts_.resize(layers_.size() + 1);
  grads_.resize(layers_.size() + 1);
}

Shape Model::input_shape(std::size_t n_snapshots, std::size_t n_layers, std::size_t n_qubits) const {
  return {config_.input_channels, n_snapshots, n_layers, n_qubits};
}

double Model::forward(const Tensor& input, bool training, Rng* rng) {
  acts_[0] = input;
  for (std::size_t i = 0; i < layers_.size(); ++i) layers_[i]->forward(acts_[i], acts_[i + 1], training, rng);
  return acts_.back()[0];
}

void Model::backward(double dlogit) {
  grads_.back() = Tensor({1}, dlogit);
  for (std::size_t i = layers_.size(); i-- > 0;) {
    layers_[i]->backward(acts_[i], grads_[i + 1], i == 0 ? nullptr : &grads_[i]);
  }
}

std::vector<Param*> Model::params() {
  std::vector<Param*> out;
  for (auto& l : layers_) {
    for (auto* p : l->params()) out.push_back(p);
  }
  return out;
}

std::size_t Model::n_parameters() {
  std::size_t n = 0;
  for (auto* p : params()) n += p->value.size();
  return n;
}

void Model::zero_grad() {
  for (auto* p : params()) p->grad.fill(0.0);
}

double Model::l2_penalty() {
  double s = 0.0;
  for (auto* p : params()) {
    if (!p->is_weight) continue;
    for (double v : p->value.values()) s += v * v;
  }
  return config_.l2_coeff * s;
}

void Model::add_l2_grad() {
  if (config_.l2_coeff == 0.0) return;
  for (auto* p : params()) {
    if (!p->is_weight) continue;
    for (std::size_t i = 0; i < p->value.size(); ++i) p->grad[i] += 2.0 * config_.l2_coeff * p->value[i];
  }
}

double bce_loss(double p, int label, Model& model) { return bce(p, label) + model.l2_penalty(); }

void adam_step(const std::vector<Param*>& params, AdamState& state, const AdamConfig& cfg) {
  for (auto* p : params) {
    if (!p->grad.all_finite()) throw DataError("non-finite gradient in " + p->name);
  }
  if (state.m.size() != params.size()) {
    state.m.clear();
    state.v.clear();
    for (auto* p : params) {
      state.m.emplace_back(p->value.shape());
      state.v.emplace_back(p->value.shape());
    }
    state.step = 0;
  }
  ++state.step;
  const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
  for (std::size_t k = 0; k < params.size(); ++k) {
    Param& p = *params[k];
    Tensor& m = state.m[k];
    Tensor& v = state.v[k];
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      const double g = p.grad[i];
      m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g;
      v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g * g;
      p.value[i] -= cfg.learning_rate * (m[i] / c1) / (std::sqrt(v[i] / c2) + cfg.eps);
    }
  }
}

}  // namespace stabscope::cnn
