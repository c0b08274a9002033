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
#include <functional>
#include <string>
#include <vector>

#include "stabscope/cnn/model.hpp"

namespace stabscope::cnn {

/// Labeled instances encoded on demand, so large snapshot sets need not be
/// materialized as tensors.
class InputSource {
 public:
  virtual ~InputSource() = default;
  virtual std::size_t size() const = 0;
  virtual int label(std::size_t i) const = 0;
  virtual void encode(std::size_t i, Tensor& out) const = 0;
};

class TensorSource : public InputSource {
 public:
  TensorSource() = default;
  TensorSource(std::vector<Tensor> inputs, std::vector<int> labels);
  void add(Tensor input, int label);
  std::size_t size() const override { return inputs_.size(); }
  int label(std::size_t i) const override { return labels_[i]; }
  void encode(std::size_t i, Tensor& out) const override { out = inputs_[i]; }

 private:
  std::vector<Tensor> inputs_;
  std::vector<int> labels_;
};

/// Restriction of another source to an index list.
class SubsetSource : public InputSource {
 public:
  SubsetSource(const InputSource& base, std::vector<std::size_t> indices);
  std::size_t size() const override { return indices_.size(); }
  int label(std::size_t i) const override { return base_->label(indices_[i]); }
  void encode(std::size_t i, Tensor& out) const override { base_->encode(indices_[i], out); }
  const std::vector<std::size_t>& indices() const { return indices_; }

 private:
  const InputSource* base_;
  std::vector<std::size_t> indices_;
};

struct TrainConfig {
  double learning_rate = 1e-3;
  std::size_t batch_size = 32;
  std::size_t epochs = 20;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  std::uint64_t seed = 0;
  double validation_fraction = 0.2;

  void validate() const;
};

struct EpochMetrics {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double train_acc = 0.0;
  double val_loss = 0.0;
  double val_acc = 0.0;
};

struct TrainResult {
  Model model;
  std::vector<EpochMetrics> history;
};

struct Evaluation {
  double loss = 0.0;  // mean clamped BCE, no regularizer
  double accuracy = 0.0;
};

/// Called after each epoch; purely informational.
using EpochCallback = std::function<void(const EpochMetrics&)>;

/// Deterministic, label-stratified split into (train, validation) indices.
/// Each class contributes round(fraction * class_size) validation items,
/// at least one and leaving at least one for training.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_split(const std::vector<int>& labels,
                                                                              double validation_fraction,
                                                                              std::uint64_t seed);

/// Trains on `train` and reports metrics on `val` each epoch. The model is
/// initialized from train_cfg.seed; shuffles and dropout masks derive from it.
TrainResult train(const ModelConfig& model_cfg, const TrainConfig& train_cfg, const InputSource& train,
                  const InputSource& val, const EpochCallback& on_epoch = {});

/// Splits `data` with train_cfg.validation_fraction, then trains.
TrainResult train(const ModelConfig& model_cfg, const TrainConfig& train_cfg, const InputSource& data,
                  const EpochCallback& on_epoch = {});

std::vector<double> predict(Model& model, const InputSource& data);
Evaluation evaluate(Model& model, const InputSource& data);

void write_history_csv(const std::string& path, const std::vector<EpochMetrics>& history);

}  // namespace stabscope::cnn
