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

#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "stabscope/cnn/tensor.hpp"
#include "stabscope/rng.hpp"

namespace stabscope::cnn {

// Layers process one instance at a time. Volumes are [C, D, H, W]; for the
// classifier the spatial axes are (snapshot, layer, qubit). Vectors are [F].

using Extent3 = std::array<std::size_t, 3>;

struct Param {
  std::string name;
  Tensor value;
  Tensor grad;
  bool is_weight = true;  // L2 applies to weights only
};

class Layer {
 public:
  virtual ~Layer() = default;
  virtual std::string name() const = 0;
  virtual Shape output_shape(const Shape& in) const = 0;
  /// `rng` is only consulted by stochastic layers in training mode.
  virtual void forward(const Tensor& in, Tensor& out, bool training, Rng* rng) = 0;
  /// Uses state cached by the most recent forward. Accumulates parameter
  /// gradients; writes the input gradient when `grad_in` is non-null.
  virtual void backward(const Tensor& in, const Tensor& grad_out, Tensor* grad_in) = 0;
  virtual std::vector<Param*> params() { return {}; }
};

/// Stride 1, zero "same" padding; kernel extents must be odd.
class Conv3d : public Layer {
 public:
  Conv3d(std::size_t in_channels, std::size_t out_channels, Extent3 kernel);
  std::string name() const override { return "conv3d"; }
  Shape output_shape(const Shape& in) const override;
  void forward(const Tensor& in, Tensor& out, bool training, Rng* rng) override;
  void backward(const Tensor& in, const Tensor& grad_out, Tensor* grad_in) override;
  std::vector<Param*> params() override { return {&weight_, &bias_}; }

  Param& weight() { return weight_; }
  Param& bias() { return bias_; }
  Extent3 kernel() const { return kernel_; }

 private:
  void im2col(const Tensor& in);

  std::size_t cin_, cout_;
  Extent3 kernel_;
  Param weight_;  // [cout, cin, kd, kh, kw]
  Param bias_;    // [cout]
  std::vector<double> col_;
};

class Relu : public Layer {
 public:
  std::string name() const override { return "relu"; }
  Shape output_shape(const Shape& in) const override { return in; }
  void forward(const Tensor& in, Tensor& out, bool training, Rng* rng) override;
  void backward(const Tensor& in, const Tensor& grad_out, Tensor* grad_in) override;
};

/// Non-overlapping max pooling with window = stride; partial windows at the
/// upper edge are kept (ceil mode).
class MaxPool3d : public Layer {
 public:
  explicit MaxPool3d(Extent3 window);
  std::string name() const override { return "maxpool3d"; }
  Shape output_shape(const Shape& in) const override;
  void forward(const Tensor& in, Tensor& out, bool training, Rng* rng) override;
  void backward(const Tensor& in, const Tensor& grad_out, Tensor* grad_in) override;

 private:
  Extent3 window_;
  std::vector<std::size_t> argmax_;
};

/// Mean over each window; ceil mode, partial edge windows average the
/// entries they cover.
class AvgPool3d : public Layer {
 public:
  explicit AvgPool3d(Extent3 window);
  std::string name() const override { return "avgpool3d"; }
  Shape output_shape(const Shape& in) const override;
  void forward(const Tensor& in, Tensor& out, bool training, Rng* rng) override;
  void backward(const Tensor& in, const Tensor& grad_out, Tensor* grad_in) override;

 private:
  // Calls fn(out_index, in_index, 1 / window_count) for every covered entry.
  template <typename Fn>
  void for_each_tap(const Shape& in, Fn&& fn) const;

  Extent3 window_;
};

/// [C, D, H, W] -> [C], mean over all spatial positions.
class GlobalAvgPool : public Layer {
 public:
  std::string name() const override { return "global_avg_pool"; }
  Shape output_shape(const Shape& in) const override;
  void forward(const Tensor& in, Tensor& out, bool training, Rng* rng) override;
  void backward(const Tensor& in, const Tensor& grad_out, Tensor* grad_in) override;
};

class Flatten : public Layer {
 public:
  std::string name() const override { return "flatten"; }
  Shape output_shape(const Shape& in) const override { return {shape_size(in)}; }
  void forward(const Tensor& in, Tensor& out, bool training, Rng* rng) override;
  void backward(const Tensor& in, const Tensor& grad_out, Tensor* grad_in) override;
};

class Dense : public Layer {
 public:
  Dense(std::size_t in_features, std::size_t out_features);
  std::string name() const override { return "dense"; }
  Shape output_shape(const Shape& in) const override;
  void forward(const Tensor& in, Tensor& out, bool training, Rng* rng) override;
  void backward(const Tensor& in, const Tensor& grad_out, Tensor* grad_in) override;
  std::vector<Param*> params() override { return {&weight_, &bias_}; }

  Param& weight() { return weight_; }
  Param& bias() { return bias_; }

 private:
  std::size_t in_, out_;
  Param weight_;  // [out, in]
  Param bias_;    // [out]
};

/// Inverted dropout: kept units are scaled by 1/(1-rate) during training;
/// identity at evaluation.
class Dropout : public Layer {
 public:
  explicit Dropout(double rate);
  std::string name() const override { return "dropout"; }
  Shape output_shape(const Shape& in) const override { return in; }
  void forward(const Tensor& in, Tensor& out, bool training, Rng* rng) override;
  void backward(const Tensor& in, const Tensor& grad_out, Tensor* grad_in) override;
  double rate() const { return rate_; }

 private:
  double rate_;
  std::vector<double> mask_;  // empty when the last forward was an eval pass
};

double sigmoid(double x);
/// d sigmoid / dx expressed through the output p.
double sigmoid_grad(double p);

constexpr double kProbClamp = 1e-7;

/// Binary cross-entropy on a clamped probability, no regularizer.
double bce(double p, int label);

/// Samples a normal deviate by Box-Muller from two uniform01 draws.
double normal(Rng& rng);

}  // namespace stabscope::cnn
