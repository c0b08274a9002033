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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stabscope/cnn/model.hpp"
#include "stabscope/cnn/train.hpp"
#include "stabscope/statevector.hpp"

namespace stabscope {

enum class Basis { kZ, kPauli };

std::string basis_name(Basis b);
Basis parse_basis(const std::string& s);

constexpr int kContainerFormatVersion = 1;

struct DatasetConfig {
  std::size_t n_qubits = 8;
  std::size_t n_states = 100;
  std::size_t n_snapshots = 500;
  Basis basis = Basis::kZ;
  std::size_t depth = 0;
  /// Pauli basis only; forced to 1 for the z basis.
  std::size_t n_layers = 1;
  std::uint64_t master_seed = 0;
  /// Dense-simulation limit for z-basis data with depth > 0.
  std::size_t dense_cap = kDefaultDenseCap;

  void validate() const;
};

/// Snapshot entries in (state, sample, layer, qubit) order. The layer axis
/// has extent 1 for z-basis data.
struct SnapshotContainer {
  DatasetConfig config;
  std::vector<int> labels;
  std::vector<double> m2_density;
  std::vector<std::uint8_t> entries;

  std::size_t n_layers() const { return config.basis == Basis::kZ ? 1 : config.n_layers; }
  std::size_t state_stride() const { return config.n_snapshots * n_layers() * config.n_qubits; }
  std::span<const std::uint8_t> state_entries(std::size_t i) const {
    return {entries.data() + i * state_stride(), state_stride()};
  }
};

/// State i uses label i % 2 and draws everything from sub_seed(master, i).
SnapshotContainer build_z_dataset(const DatasetConfig& cfg, std::size_t threads = 1);
SnapshotContainer build_pauli_dataset(const DatasetConfig& cfg, std::size_t threads = 1);
SnapshotContainer build_dataset(const DatasetConfig& cfg, std::size_t threads = 1);

/// JSON manifest, '\n', u64 little-endian entry count, entry bytes.
std::string container_bytes(const SnapshotContainer& c);
SnapshotContainer parse_container(const std::string& bytes);
void write_container(const std::string& path, const SnapshotContainer& c);
SnapshotContainer read_container(const std::string& path);

/// Label-stratified (train, validation) index sets.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split(const SnapshotContainer& c,
                                                                     double validation_fraction,
                                                                     std::uint64_t seed);

struct InsetBin {
  std::size_t bin = 0;
  double m2_lo = 0.0;
  double m2_hi = 0.0;
  double mean_prediction = 0.0;  // NaN for an empty bin
  std::size_t count = 0;
};

/// Uniform bins over the observed magic-density range; a degenerate range
/// puts everything in bin 0.
std::vector<InsetBin> inset_bins(const std::vector<double>& m2_density, const std::vector<double>& predictions,
                                 std::size_t n_bins = 10);

/// Presents a container to the classifier: method1 reads z bits as
/// [1, snapshots, 1, qubits]; method2 one-hot encodes Pauli letters as
/// [4, snapshots, layers, qubits].
class ContainerSource : public cnn::InputSource {
 public:
  ContainerSource(const SnapshotContainer& c, cnn::Variant variant);
  std::size_t size() const override { return container_->labels.size(); }
  int label(std::size_t i) const override { return container_->labels[i]; }
  void encode(std::size_t i, cnn::Tensor& out) const override;

 private:
  const SnapshotContainer* container_;
  cnn::Variant variant_;
};

}  // namespace stabscope
