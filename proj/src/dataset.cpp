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

#include "stabscope/dataset.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>

#include "json.hpp"
#include "stabscope/csv.hpp"
#include "stabscope/errors.hpp"
#include "stabscope/magic.hpp"
#include "stabscope/parallel.hpp"
#include "stabscope/stategen.hpp"

namespace stabscope {

namespace {

using Json = nlohmann::ordered_json;

static_assert(std::endian::native == std::endian::little, "container I/O assumes a little-endian host");

// Independent per-qubit Born sampling of an unevolved product state.
ByteMatrix sample_z_product(const ProductState& p, std::size_t count, Rng& rng) {
  const std::size_t n = p.num_qubits();
  std::vector<double> p1(n);
  for (std::size_t j = 0; j < n; ++j) p1[j] = std::norm(p.qubit(j).b);
  ByteMatrix out(count, n);
  for (std::size_t r = 0; r < count; ++r)
    for (std::size_t j = 0; j < n; ++j) out(r, j) = uniform01(rng) < p1[j] ? 1 : 0;
  return out;
}

SnapshotContainer empty_container(const DatasetConfig& cfg) {
  SnapshotContainer c;
  c.config = cfg;
  if (cfg.basis == Basis::kZ) c.config.n_layers = 1;
  c.labels.resize(cfg.n_states);
  c.m2_density.resize(cfg.n_states);
  c.entries.resize(cfg.n_states * c.state_stride());
  return c;
}

}  // namespace

std::string basis_name(Basis b) { return b == Basis::kZ ? "z" : "pauli"; }

Basis parse_basis(const std::string& s) {
  if (s == "z") return Basis::kZ;
  if (s == "pauli") return Basis::kPauli;
  throw DimensionError("unknown basis '" + s + "' (expected z or pauli)");
}

void DatasetConfig::validate() const {
  if (n_qubits == 0) throw DimensionError("dataset: n_qubits must be >= 1");
  if (n_states < 2) throw DimensionError("dataset: n_states must be >= 2 so both labels occur");
  if (n_snapshots == 0) throw DimensionError("dataset: n_snapshots must be >= 1");
  if (basis == Basis::kPauli && n_layers == 0) throw DimensionError("dataset: n_layers must be >= 1");
  const bool needs_circuit = depth > 0 || (basis == Basis::kPauli && n_layers > 1);
  if (needs_circuit && n_qubits < 2) throw DimensionError("dataset: Clifford circuits need n_qubits >= 2");
  if (basis == Basis::kZ && depth > 0 && n_qubits > dense_cap) {
    throw CapacityError("dataset: z-basis evolution needs a dense state; n_qubits " + std::to_string(n_qubits) +
                        " exceeds cap " + std::to_string(dense_cap));
  }
}

SnapshotContainer build_z_dataset(const DatasetConfig& cfg, std::size_t threads) {
  if (cfg.basis != Basis::kZ) throw DimensionError("build_z_dataset: config basis is not z");
  cfg.validate();
  SnapshotContainer c = empty_container(cfg);
  const std::size_t stride = c.state_stride();
  parallel_for(cfg.n_states, threads, [&](std::size_t i) {
    Rng rng(sub_seed(cfg.master_seed, i));
    const auto label = static_cast<StateLabel>(i % 2);
    const LabeledState ls = random_product(cfg.n_qubits, label, rng);
    ByteMatrix rows;
    if (cfg.depth == 0) {
      rows = sample_z_product(ls.state, cfg.n_snapshots, rng);
    } else {
      const Circuit circuit = random_brickwork_circuit(cfg.n_qubits, cfg.depth, rng);
      const DenseState evolved = apply_circuit(expand(ls.state, cfg.dense_cap), circuit);
      rows = sample_z(evolved, cfg.n_snapshots, rng);
    }
    c.labels[i] = static_cast<int>(label);
    c.m2_density[i] = ls.m2_density;
    std::copy(rows.data.begin(), rows.data.end(), c.entries.begin() + static_cast<std::ptrdiff_t>(i * stride));
  });
  return c;
}

SnapshotContainer build_pauli_dataset(const DatasetConfig& cfg, std::size_t threads) {
  if (cfg.basis != Basis::kPauli) throw DimensionError("build_pauli_dataset: config basis is not pauli");
  cfg.validate();
  SnapshotContainer c = empty_container(cfg);
  const std::size_t stride = c.state_stride();
  const std::size_t n = cfg.n_qubits, l = cfg.n_layers;
  parallel_for(cfg.n_states, threads, [&](std::size_t i) {
    Rng rng(sub_seed(cfg.master_seed, i));
    const auto label = static_cast<StateLabel>(i % 2);
    const LabeledState ls = random_product(n, label, rng);
    ByteMatrix slice = sample_pauli_product(ls.state, cfg.n_snapshots, rng);
    if (cfg.depth > 0) {
      slice = evolve_pauli_snapshots(slice, circuit_tableau(random_brickwork_circuit(n, cfg.depth, rng)));
    }
    // Extra layers continue the brickwork pattern of the test circuit.
    Circuit extra;
    if (l > 1) extra = random_brickwork_circuit(n, l - 1, rng, cfg.depth);
    std::uint8_t* base = c.entries.data() + i * stride;
    for (std::size_t k = 0; k < l; ++k) {
      if (k > 0) slice = evolve_pauli_snapshots(slice, layer_tableau(extra.layers[k - 1], n));
      for (std::size_t s = 0; s < cfg.n_snapshots; ++s) {
        std::copy_n(slice.data.data() + s * n, n, base + (s * l + k) * n);
      }
    }
    c.labels[i] = static_cast<int>(label);
    c.m2_density[i] = ls.m2_density;
  });
  return c;
}

SnapshotContainer build_dataset(const DatasetConfig& cfg, std::size_t threads) {
  return cfg.basis == Basis::kZ ? build_z_dataset(cfg, threads) : build_pauli_dataset(cfg, threads);
}

std::string container_bytes(const SnapshotContainer& c) {
  Json m;
  m["format_version"] = kContainerFormatVersion;
  m["basis"] = basis_name(c.config.basis);
  m["n_qubits"] = c.config.n_qubits;
  m["n_states"] = c.config.n_states;
  m["n_snapshots"] = c.config.n_snapshots;
  m["n_layers"] = c.n_layers();
  m["depth"] = c.config.depth;
  m["master_seed"] = c.config.master_seed;
  m["labels"] = c.labels;
  m["m2_density"] = c.m2_density;
  std::string out = m.dump() + "\n";
  const std::uint64_t len = c.entries.size();
  char buf[8];
  std::memcpy(buf, &len, 8);
  out.append(buf, 8);
  out.append(reinterpret_cast<const char*>(c.entries.data()), c.entries.size());
  return out;
}

SnapshotContainer parse_container(const std::string& bytes) {
  const auto nl = bytes.find('\n');
  if (nl == std::string::npos) throw DataError("container: missing manifest line");
  SnapshotContainer c;
  try {
    const Json m = Json::parse(bytes.substr(0, nl));
    if (m.at("format_version").get<int>() != kContainerFormatVersion) {
      throw DataError("container: unsupported format_version");
    }
    c.config.basis = parse_basis(m.at("basis").get<std::string>());
    c.config.n_qubits = m.at("n_qubits").get<std::size_t>();
    c.config.n_states = m.at("n_states").get<std::size_t>();
    c.config.n_snapshots = m.at("n_snapshots").get<std::size_t>();
    c.config.n_layers = m.at("n_layers").get<std::size_t>();
    c.config.depth = m.at("depth").get<std::size_t>();
    c.config.master_seed = m.at("master_seed").get<std::uint64_t>();
    c.labels = m.at("labels").get<std::vector<int>>();
    c.m2_density = m.at("m2_density").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("container: bad manifest: ") + e.what());
  } catch (const DimensionError& e) {
    throw DataError(std::string("container: bad manifest: ") + e.what());
  }
  if (c.labels.size() != c.config.n_states || c.m2_density.size() != c.config.n_states) {
    throw DataError("container: labels/m2_density length differs from n_states");
  }
  for (int y : c.labels) {
    if (y != 0 && y != 1) throw DataError("container: labels must be 0 or 1");
  }
  if (bytes.size() < nl + 1 + 8) throw DataError("container: truncated length field");
  std::uint64_t len = 0;
  std::memcpy(&len, bytes.data() + nl + 1, 8);
  const std::size_t expect = c.config.n_states * c.state_stride();
  if (len != expect) throw DataError("container: entry length field does not match manifest");
  if (bytes.size() - nl - 9 != len) throw DataError("container: entry block length mismatch");
  c.entries.assign(bytes.begin() + static_cast<std::ptrdiff_t>(nl + 9), bytes.end());
  const std::uint8_t max_code = c.config.basis == Basis::kZ ? 1 : 3;
  for (auto v : c.entries) {
    if (v > max_code) throw DataError("container: entry value out of range");
  }
  return c;
}

void write_container(const std::string& path, const SnapshotContainer& c) { write_file(path, container_bytes(c)); }

SnapshotContainer read_container(const std::string& path) { return parse_container(read_file(path)); }

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split(const SnapshotContainer& c,
                                                                     double validation_fraction,
                                                                     std::uint64_t seed) {
  return cnn::stratified_split(c.labels, validation_fraction, seed);
}

std::vector<InsetBin> inset_bins(const std::vector<double>& m2_density, const std::vector<double>& predictions,
                                 std::size_t n_bins) {
  if (m2_density.empty()) throw DataError("inset_bins: empty input");
  if (m2_density.size() != predictions.size()) throw DimensionError("inset_bins: length mismatch");
  if (n_bins == 0) throw DimensionError("inset_bins: n_bins must be positive");
  const auto [lo_it, hi_it] = std::minmax_element(m2_density.begin(), m2_density.end());
  const double lo = *lo_it, hi = *hi_it;
  const double width = (hi - lo) / static_cast<double>(n_bins);
  std::vector<InsetBin> bins(n_bins);
  std::vector<double> sums(n_bins, 0.0);
  for (std::size_t b = 0; b < n_bins; ++b) {
    bins[b].bin = b;
    bins[b].m2_lo = lo + width * static_cast<double>(b);
    bins[b].m2_hi = b + 1 == n_bins ? hi : lo + width * static_cast<double>(b + 1);
  }
  for (std::size_t i = 0; i < m2_density.size(); ++i) {
    std::size_t b = 0;
    if (hi > lo) {
      b = static_cast<std::size_t>((m2_density[i] - lo) / (hi - lo) * static_cast<double>(n_bins));
      b = std::min(b, n_bins - 1);
    }
    sums[b] += predictions[i];
    ++bins[b].count;
  }
  for (std::size_t b = 0; b < n_bins; ++b) {
    bins[b].mean_prediction = bins[b].count ? sums[b] / static_cast<double>(bins[b].count)
                                            : std::numeric_limits<double>::quiet_NaN();
  }
  return bins;
}

ContainerSource::ContainerSource(const SnapshotContainer& c, cnn::Variant variant)
    : container_(&c), variant_(variant) {
  const bool ok = (variant == cnn::Variant::kMethod1) == (c.config.basis == Basis::kZ);
  if (!ok) {
    throw DimensionError("model variant " + cnn::variant_name(variant) + " does not match " +
                         basis_name(c.config.basis) + "-basis data");
  }
}

void ContainerSource::encode(std::size_t i, cnn::Tensor& out) const {
  const auto& cfg = container_->config;
  const std::size_t s = cfg.n_snapshots, l = container_->n_layers(), n = cfg.n_qubits;
  const auto src = container_->state_entries(i);
  if (variant_ == cnn::Variant::kMethod1) {
    out.resize({1, s, 1, n});
    for (std::size_t k = 0; k < src.size(); ++k) out[k] = src[k];
    return;
  }
  const std::size_t plane = s * l * n;
  out.resize({4, s, l, n});
  out.fill(0.0);
  for (std::size_t k = 0; k < plane; ++k) out[src[k] * plane + k] = 1.0;
}

}  // namespace stabscope
