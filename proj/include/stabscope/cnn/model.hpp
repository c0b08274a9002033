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

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "stabscope/cnn/layers.hpp"

namespace stabscope::cnn {

enum class Variant {
  kMethod1,  // computational-basis bit images, [1, snapshots, 1, qubits]
  kMethod2,  // one-hot Pauli letters, [4, snapshots, layers, qubits]
};

std::string variant_name(Variant v);
Variant parse_variant(const std::string& s);

enum class PoolMode { kMax, kAverage };

std::string pool_mode_name(PoolMode m);
PoolMode parse_pool_mode(const std::string& s);

struct ModelConfig {
  Variant variant = Variant::kMethod1;
  std::vector<std::size_t> conv_filters{16, 32, 64};
  Extent3 kernel{3, 1, 3};
  Extent3 pool{2, 1, 2};
  PoolMode pool_mode = PoolMode::kMax;
  /// Number of leading conv blocks followed by pooling.
  std::size_t pooled_blocks = 3;
  std::size_t dense_hidden = 64;
  double dropout_rate = 0.2;
  double l2_coeff = 1e-4;
  std::size_t input_channels = 1;
  /// Training geometry (snapshots, layers, qubits). Method1 sizes its dense
  /// head from it; method2 accepts any geometry.
  Extent3 input_extent{1, 1, 1};

  void validate() const;
};

ModelConfig method1_config(std::size_t n_snapshots, std::size_t n_qubits);
ModelConfig method2_config(std::size_t n_snapshots, std::size_t n_layers, std::size_t n_qubits);

/// Sequential binary classifier producing one logit per instance.
class Model {
 public:
  Model(const ModelConfig& config, std::uint64_t init_seed);
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;
  Model(Model&&) = default;
  Model& operator=(Model&&) = default;

  const ModelConfig& config() const { return config_; }
  std::uint64_t init_seed() const { return init_seed_; }
  const std::vector<std::unique_ptr<Layer>>& layers() const { return layers_; }

  /// [channels, snapshots, layers, qubits].
  Shape input_shape(std::size_t n_snapshots, std::size_t n_layers, std::size_t n_qubits) const;

  double forward(const Tensor& input, bool training = false, Rng* rng = nullptr);
  double predict(const Tensor& input) { return sigmoid(forward(input)); }
  /// Backpropagates dL/dlogit through the last forward pass, accumulating
  /// parameter gradients.
  void backward(double dlogit);

  std::vector<Param*> params();
  std::size_t n_parameters();
  void zero_grad();

  /// l2_coeff * sum of squared weights (biases excluded).
  double l2_penalty();
  void add_l2_grad();

 private:
  ModelConfig config_;
  std::uint64_t init_seed_;
  std::vector<std::unique_ptr<Layer>> layers_;
  std::vector<Tensor> acts_;
  std::vector<Tensor> grads_;
};

/// Clamped binary cross-entropy plus the model's L2 term.
double bce_loss(double p, int label, Model& model);

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::vector<Tensor> m;
  std::vector<Tensor> v;
  std::uint64_t step = 0;
};

/// One bias-corrected Adam update. Throws DataError on a non-finite gradient.
void adam_step(const std::vector<Param*>& params, AdamState& state, const AdamConfig& cfg);

}  // namespace stabscope::cnn
