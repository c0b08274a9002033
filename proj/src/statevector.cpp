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

#include "stabscope/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "stabscope/errors.hpp"

namespace stabscope {

namespace {

constexpr double kUnitaryTol = 1e-10;

void check_qubit(const DenseState& s, std::size_t j, const char* what) {
  if (j >= s.num_qubits()) {
    throw std::out_of_range(std::string(what) + ": qubit " + std::to_string(j) + " out of range for " +
                            std::to_string(s.num_qubits()) + " qubits");
  }
}

// Bit position of qubit j inside a basis index.
std::size_t bit_of(std::size_t n, std::size_t j) { return n - 1 - j; }

struct IndexMasks {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
};

IndexMasks index_masks(const PauliString& p) {
  IndexMasks m;
  const std::size_t n = p.num_qubits();
  for (std::size_t j = 0; j < n; ++j) {
    if (p.x_bit(j)) m.x |= std::uint64_t{1} << bit_of(n, j);
    if (p.z_bit(j)) m.z |= std::uint64_t{1} << bit_of(n, j);
  }
  return m;
}

// i^k
cplx i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

bool SingleQubitState::is_normalized(double tol) const {
  return std::abs(std::norm(a) + std::norm(b) - 1.0) <= tol;
}

double SingleQubitState::expect_x() const { return 2.0 * (std::conj(a) * b).real(); }
double SingleQubitState::expect_y() const { return 2.0 * (std::conj(a) * b).imag(); }
double SingleQubitState::expect_z() const { return std::norm(a) - std::norm(b); }

ProductState::ProductState(std::vector<SingleQubitState> qubits) : qubits_(std::move(qubits)) {
  for (std::size_t j = 0; j < qubits_.size(); ++j) {
    if (!qubits_[j].is_normalized()) {
      throw std::invalid_argument("ProductState: factor " + std::to_string(j) + " is not normalized");
    }
  }
}

DenseState::DenseState(std::size_t n) : n_(n), amps_(std::size_t{1} << n, cplx(0.0)) { amps_[0] = 1.0; }

DenseState::DenseState(std::size_t n, std::vector<cplx> amplitudes) : n_(n), amps_(std::move(amplitudes)) {
  if (amps_.size() != (std::size_t{1} << n)) throw DimensionError("DenseState: amplitude count is not 2^n");
  if (std::abs(norm_squared() - 1.0) > 1e-10) throw std::invalid_argument("DenseState: state is not normalized");
}

double DenseState::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

void Circuit::validate() const {
  for (std::size_t k = 0; k < layers.size(); ++k) {
    std::vector<bool> used(n, false);
    for (const auto& block : layers[k]) {
      if (block.qubits.size() != block.local.num_qubits()) {
        throw DimensionError("Circuit: block qubit list does not match its tableau");
      }
      for (std::size_t q : block.qubits) {
        if (q >= n) throw std::out_of_range("Circuit: block qubit out of range");
        if (used[q]) throw std::invalid_argument("Circuit: layer " + std::to_string(k) + " reuses qubit " + std::to_string(q));
        used[q] = true;
      }
    }
  }
}

DenseState expand(const ProductState& p, std::size_t cap) {
  const std::size_t n = p.num_qubits();
  if (n > cap) {
    throw CapacityError("expand: " + std::to_string(n) + " qubits exceeds dense cap " + std::to_string(cap));
  }
  std::vector<cplx> amps{cplx(1.0)};
  amps.reserve(std::size_t{1} << n);
  for (const auto& q : p.qubits()) {
    std::vector<cplx> next(amps.size() * 2);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      next[2 * i] = amps[i] * q.a;
      next[2 * i + 1] = amps[i] * q.b;
    }
    amps = std::move(next);
  }
  DenseState out(n);
  out.amplitudes() = std::move(amps);
  return out;
}

DenseState apply_1q(DenseState s, std::size_t j, const CMatrix& u) {
  check_qubit(s, j, "apply_1q");
  if (u.rows() != 2 || u.cols() != 2) throw DimensionError("apply_1q: expected a 2x2 matrix");
  if (!u.is_unitary(kUnitaryTol)) throw std::invalid_argument("apply_1q: matrix is not unitary");
  const std::size_t stride = std::size_t{1} << bit_of(s.num_qubits(), j);
  auto& a = s.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i & stride) continue;
    const cplx v0 = a[i], v1 = a[i | stride];
    a[i] = u(0, 0) * v0 + u(0, 1) * v1;
    a[i | stride] = u(1, 0) * v0 + u(1, 1) * v1;
  }
  return s;
}

DenseState apply_2q(DenseState s, std::size_t j, std::size_t k, const CMatrix& u) {
  check_qubit(s, j, "apply_2q");
  check_qubit(s, k, "apply_2q");
  if (j == k) throw std::invalid_argument("apply_2q: qubits must differ");
  if (u.rows() != 4 || u.cols() != 4) throw DimensionError("apply_2q: expected a 4x4 matrix");
  if (!u.is_unitary(kUnitaryTol)) throw std::invalid_argument("apply_2q: matrix is not unitary");
  const std::size_t sj = std::size_t{1} << bit_of(s.num_qubits(), j);
  const std::size_t sk = std::size_t{1} << bit_of(s.num_qubits(), k);
  auto& a = s.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i & (sj | sk)) continue;
    const std::size_t idx[4] = {i, i | sk, i | sj, i | sj | sk};
    cplx v[4];
    for (int r = 0; r < 4; ++r) v[r] = a[idx[r]];
    for (int r = 0; r < 4; ++r) {
      cplx acc = 0.0;
      for (int c = 0; c < 4; ++c) acc += u(r, c) * v[c];
      a[idx[r]] = acc;
    }
  }
  return s;
}

DenseState apply_cnot(DenseState s, std::size_t control, std::size_t target) {
  check_qubit(s, control, "apply_cnot");
  check_qubit(s, target, "apply_cnot");
  if (control == target) throw std::invalid_argument("apply_cnot: control equals target");
  const std::size_t sc = std::size_t{1} << bit_of(s.num_qubits(), control);
  const std::size_t st = std::size_t{1} << bit_of(s.num_qubits(), target);
  auto& a = s.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((i & sc) && !(i & st)) std::swap(a[i], a[i | st]);
  }
  return s;
}

DenseState apply_circuit(DenseState s, const Circuit& c) {
  if (c.n != s.num_qubits()) throw DimensionError("apply_circuit: circuit and state sizes differ");
  c.validate();
  for (const auto& layer : c.layers) {
    for (const auto& block : layer) {
      const CMatrix u = tableau_unitary(block.local);
      if (block.qubits.size() == 1) {
        s = apply_1q(std::move(s), block.qubits[0], u);
      } else if (block.qubits.size() == 2) {
        s = apply_2q(std::move(s), block.qubits[0], block.qubits[1], u);
      } else {
        throw std::invalid_argument("apply_circuit: only 1- and 2-qubit blocks are supported");
      }
    }
  }
  return s;
}

CMatrix pauli_matrix(const PauliString& p) {
  const std::size_t n = p.num_qubits();
  if (n > 12) throw CapacityError("pauli_matrix: too many qubits for a dense matrix");
  const std::size_t dim = std::size_t{1} << n;
  const IndexMasks m = index_masks(p);
  const cplx base = i_pow(std::popcount(m.x & m.z) + (p.negative() ? 2 : 0));
  CMatrix out(dim, dim);
  for (std::size_t s = 0; s < dim; ++s) {
    const double parity = (std::popcount(m.z & s) & 1) ? -1.0 : 1.0;
    out(s ^ m.x, s) = base * parity;
  }
  return out;
}

CMatrix tableau_unitary(const CliffordTableau& t) {
  const std::size_t k = t.num_qubits();
  if (k > 6) throw CapacityError("tableau_unitary: too many qubits");
  const std::size_t dim = std::size_t{1} << k;

  // U|0..0> is the joint +1 eigenvector of the images of Z_j.
  CMatrix proj = CMatrix::identity(dim);
  for (std::size_t j = 0; j < k; ++j) {
    proj = proj * (0.5 * (CMatrix::identity(dim) + pauli_matrix(t.z_image(j))));
  }
  std::size_t best = 0;
  double best_norm = -1.0;
  for (std::size_t c = 0; c < dim; ++c) {
    double nrm = 0.0;
    for (std::size_t r = 0; r < dim; ++r) nrm += std::norm(proj(r, c));
    if (nrm > best_norm) {
      best_norm = nrm;
      best = c;
    }
  }
  std::vector<cplx> col0(dim);
  const double scale = 1.0 / std::sqrt(best_norm);
  std::size_t lead = dim;
  for (std::size_t r = 0; r < dim; ++r) {
    col0[r] = proj(r, best) * scale;
    if (lead == dim && std::abs(col0[r]) > 1e-9) lead = r;
  }
  const cplx phase = std::abs(col0[lead]) / col0[lead];
  for (auto& v : col0) v *= phase;

  std::vector<CMatrix> x_mats;
  for (std::size_t j = 0; j < k; ++j) x_mats.push_back(pauli_matrix(t.x_image(j)));

  CMatrix u(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    std::vector<cplx> v = col0;
    for (std::size_t j = 0; j < k; ++j) {
      if (!((col >> bit_of(k, j)) & 1)) continue;
      std::vector<cplx> w(dim, cplx(0.0));
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) w[r] += x_mats[j](r, c) * v[c];
      v = std::move(w);
    }
    for (std::size_t r = 0; r < dim; ++r) u(r, col) = v[r];
  }
  return u;
}

double expectation(const DenseState& s, const PauliString& p) {
  if (p.num_qubits() != s.num_qubits()) throw DimensionError("expectation: Pauli and state sizes differ");
  const IndexMasks m = index_masks(p);
  const auto& a = s.amplitudes();
  cplx acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double parity = (std::popcount(m.z & i) & 1) ? -1.0 : 1.0;
    acc += std::conj(a[i ^ m.x]) * a[i] * parity;
  }
  acc *= i_pow(std::popcount(m.x & m.z) + (p.negative() ? 2 : 0));
  if (std::abs(acc.imag()) > 1e-10) {
    throw std::logic_error("expectation: imaginary residual " + std::to_string(acc.imag()));
  }
  return acc.real();
}

double expectation_product(const ProductState& s, const PauliString& p) {
  if (p.num_qubits() != s.num_qubits()) throw DimensionError("expectation_product: Pauli and state sizes differ");
  double v = p.negative() ? -1.0 : 1.0;
  for (std::size_t j = 0; j < s.num_qubits() && v != 0.0; ++j) {
    switch (p.letter(j)) {
      case PauliLetter::I: break;
      case PauliLetter::X: v *= s.qubit(j).expect_x(); break;
      case PauliLetter::Y: v *= s.qubit(j).expect_y(); break;
      case PauliLetter::Z: v *= s.qubit(j).expect_z(); break;
    }
  }
  return v;
}

ByteMatrix sample_z(const DenseState& s, std::size_t count, Rng& rng) {
  if (count == 0) throw std::invalid_argument("sample_z: count must be >= 1");
  const auto& a = s.amplitudes();
  std::vector<double> cdf(a.size());
  double run = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    run += std::norm(a[i]);
    cdf[i] = run;
  }
  const std::size_t n = s.num_qubits();
  ByteMatrix out(count, n);
  for (std::size_t shot = 0; shot < count; ++shot) {
    const double u = uniform01(rng) * run;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
    if (idx >= a.size()) idx = a.size() - 1;
    // Zero-probability entries share a cdf value with their predecessor and
    // are never the upper bound, so idx always has positive weight.
    for (std::size_t j = 0; j < n; ++j) out(shot, j) = static_cast<std::uint8_t>((idx >> bit_of(n, j)) & 1);
  }
  return out;
}

}  // namespace stabscope
