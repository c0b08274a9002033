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

#include "stabscope/cnn/train.hpp"

#include <algorithm>
#include <cmath>

#include "stabscope/csv.hpp"
#include "stabscope/errors.hpp"

namespace stabscope::cnn {

TensorSource::TensorSource(std::vector<Tensor> inputs, std::vector<int> labels)
    : inputs_(std::move(inputs)), labels_(std::move(labels)) {
  if (inputs_.size() != labels_.size()) throw DimensionError("TensorSource: inputs and labels differ in length");
}

void TensorSource::add(Tensor input, int label) {
  inputs_.push_back(std::move(input));
  labels_.push_back(label);
}

SubsetSource::SubsetSource(const InputSource& base, std::vector<std::size_t> indices)
    : base_(&base), indices_(std::move(indices)) {
  for (auto i : indices_) {
    if (i >= base.size()) throw DimensionError("SubsetSource: index out of range");
  }
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw DimensionError("TrainConfig: learning_rate must be positive");
  if (batch_size == 0) throw DimensionError("TrainConfig: batch_size must be positive");
  if (epochs == 0) throw DimensionError("TrainConfig: epochs must be positive");
  if (!(adam_beta1 > 0.0 && adam_beta1 < 1.0 && adam_beta2 > 0.0 && adam_beta2 < 1.0)) {
    throw DimensionError("TrainConfig: Adam betas must lie in (0,1)");
  }
  if (!(adam_eps > 0.0)) throw DimensionError("TrainConfig: adam_eps must be positive");
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
    throw DimensionError("TrainConfig: validation_fraction must lie in (0,1)");
  }
}

namespace {

void shuffle(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

void require_both_labels(const InputSource& data, const char* what) {
  bool seen[2] = {false, false};
  for (std::size_t i = 0; i < data.size(); ++i) {
    const int y = data.label(i);
    if (y != 0 && y != 1) throw DataError(std::string(what) + ": labels must be 0 or 1");
    seen[y] = true;
  }
  if (!seen[0] || !seen[1]) throw DataError(std::string(what) + ": both labels must be present");
}

}  // namespace

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_split(const std::vector<int>& labels,
                                                                              double validation_fraction,
                                                                              std::uint64_t seed) {
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
    throw DimensionError("split: fraction must lie in (0,1)");
  }
  std::vector<std::size_t> train_idx, val_idx;
  for (int y = 0; y <= 1; ++y) {
    std::vector<std::size_t> cls;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == y) cls.push_back(i);
    }
    if (cls.empty()) continue;
    if (cls.size() < 2) throw DataError("split: class " + std::to_string(y) + " has fewer than 2 members");
    Rng rng(sub_seed(seed, static_cast<std::uint64_t>(y)));
    shuffle(cls, rng);
    auto n_val = static_cast<std::size_t>(std::llround(validation_fraction * static_cast<double>(cls.size())));
    n_val = std::clamp<std::size_t>(n_val, 1, cls.size() - 1);
    val_idx.insert(val_idx.end(), cls.begin(), cls.begin() + static_cast<std::ptrdiff_t>(n_val));
    train_idx.insert(train_idx.end(), cls.begin() + static_cast<std::ptrdiff_t>(n_val), cls.end());
  }
  if (train_idx.empty() || val_idx.empty()) throw DataError("split: degenerate sizes");
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(val_idx.begin(), val_idx.end());
  return {train_idx, val_idx};
}

TrainResult train(const ModelConfig& model_cfg, const TrainConfig& train_cfg, const InputSource& train_data,
                  const InputSource& val, const EpochCallback& on_epoch) {
  train_cfg.validate();
  require_both_labels(train_data, "train");
  if (val.size() == 0) throw DataError("train: empty validation set");

  TrainResult result{Model(model_cfg, train_cfg.seed), {}};
  Model& model = result.model;
  const AdamConfig adam{train_cfg.learning_rate, train_cfg.adam_beta1, train_cfg.adam_beta2, train_cfg.adam_eps};
  AdamState state;
  const auto params = model.params();

  std::vector<std::size_t> order(train_data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Tensor x;

  for (std::size_t epoch = 1; epoch <= train_cfg.epochs; ++epoch) {
    Rng shuffle_rng(sub_seed(train_cfg.seed, 2 * epoch));
    Rng dropout_rng(sub_seed(train_cfg.seed, 2 * epoch + 1));
    shuffle(order, shuffle_rng);

    double loss_sum = 0.0;
    std::size_t correct = 0;
    for (std::size_t start = 0; start < order.size(); start += train_cfg.batch_size) {
      const std::size_t stop = std::min(order.size(), start + train_cfg.batch_size);
      const double inv_b = 1.0 / static_cast<double>(stop - start);
      const double l2 = model.l2_penalty();
      model.zero_grad();
      for (std::size_t k = start; k < stop; ++k) {
        train_data.encode(order[k], x);
        const int y = train_data.label(order[k]);
        const double p = sigmoid(model.forward(x, true, &dropout_rng));
        const double loss = bce(p, y) + l2;
        if (!std::isfinite(loss)) throw DataError("non-finite training loss at epoch " + std::to_string(epoch));
        loss_sum += loss;
        if ((p >= 0.5) == (y == 1)) ++correct;
        model.backward((p - static_cast<double>(y)) * inv_b);
      }
      model.add_l2_grad();
      adam_step(params, state, adam);
    }

    EpochMetrics m;
    m.epoch = epoch;
    m.train_loss = loss_sum / static_cast<double>(order.size());
    m.train_acc = static_cast<double>(correct) / static_cast<double>(order.size());
    const Evaluation ev = evaluate(model, val);
    m.val_loss = ev.loss;
    m.val_acc = ev.accuracy;
    result.history.push_back(m);
    if (on_epoch) on_epoch(m);
  }
  return result;
}

TrainResult train(const ModelConfig& model_cfg, const TrainConfig& train_cfg, const InputSource& data,
                  const EpochCallback& on_epoch) {
  train_cfg.validate();
  std::vector<int> labels(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) labels[i] = data.label(i);
  auto [tr, va] = stratified_split(labels, train_cfg.validation_fraction, sub_seed(train_cfg.seed, 0x5b1d));
  SubsetSource train_src(data, std::move(tr));
  SubsetSource val_src(data, std::move(va));
  return train(model_cfg, train_cfg, train_src, val_src, on_epoch);
}

std::vector<double> predict(Model& model, const InputSource& data) {
  std::vector<double> out(data.size());
  Tensor x;
  for (std::size_t i = 0; i < data.size(); ++i) {
    data.encode(i, x);
    out[i] = model.predict(x);
  }
  return out;
}

Evaluation evaluate(Model& model, const InputSource& data) {
  if (data.size() == 0) throw DataError("evaluate: empty dataset");
  const auto p = predict(model, data);
  Evaluation ev;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const int y = data.label(i);
    ev.loss += bce(p[i], y);
    if ((p[i] >= 0.5) == (y == 1)) ++correct;
  }
  ev.loss /= static_cast<double>(p.size());
  ev.accuracy = static_cast<double>(correct) / static_cast<double>(p.size());
  return ev;
}

void write_history_csv(const std::string& path, const std::vector<EpochMetrics>& history) {
  CsvTable t;
  t.header = {"epoch", "train_loss", "train_acc", "val_loss", "val_acc"};
  for (const auto& m : history) {
    t.add_row({format_number(static_cast<std::uint64_t>(m.epoch)), format_number(m.train_loss),
               format_number(m.train_acc), format_number(m.val_loss), format_number(m.val_acc)});
  }
  t.write(path);
}

}  // namespace stabscope::cnn
