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

#include <cstddef>
#include <vector>

#include "stabscope/byte_matrix.hpp"
#include "stabscope/linalg.hpp"
#include "stabscope/pauli.hpp"
#include "stabscope/rng.hpp"

namespace stabscope {

inline constexpr std::size_t kDefaultDenseCap = 16;

/// a|0> + b|1>.
struct SingleQubitState {
  cplx a{1.0, 0.0};
  cplx b{0.0, 0.0};

  bool is_normalized(double tol = 1e-12) const;
  double expect_x() const;
  double expect_y() const;
  double expect_z() const;
};

class ProductState {
 public:
  ProductState() = default;
  /// Throws std::invalid_argument if any factor is not normalized.
  explicit ProductState(std::vector<SingleQubitState> qubits);

  std::size_t num_qubits() const { return qubits_.size(); }
  const SingleQubitState& qubit(std::size_t j) const { return qubits_[j]; }
  const std::vector<SingleQubitState>& qubits() const { return qubits_; }

 private:
  std::vector<SingleQubitState> qubits_;
};

/// Full 2^n amplitude vector. Basis index s = sum_j s_j 2^(n-1-j): qubit 0 is
/// the most significant bit.
class DenseState {
 public:
  DenseState() = default;
  /// |0...0>.
  explicit DenseState(std::size_t n);
  DenseState(std::size_t n, std::vector<cplx> amplitudes);

  std::size_t num_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  std::vector<cplx>& amplitudes() { return amps_; }
  double norm_squared() const;

 private:
  std::size_t n_ = 0;
  std::vector<cplx> amps_;
};

/// A Clifford acting on a few qubits of a larger register.
struct CliffordBlock {
  std::vector<std::size_t> qubits;
  CliffordTableau local;
};

using CircuitLayer = std::vector<CliffordBlock>;

struct Circuit {
  std::size_t n = 0;
  std::vector<CircuitLayer> layers;

  std::size_t depth() const { return layers.size(); }
  /// Throws if two blocks of one layer share a qubit.
  void validate() const;
};

DenseState expand(const ProductState& p, std::size_t cap = kDefaultDenseCap);

DenseState apply_1q(DenseState s, std::size_t j, const CMatrix& u);
/// u acts on |q_j q_k> with q_j the more significant bit.
DenseState apply_2q(DenseState s, std::size_t j, std::size_t k, const CMatrix& u);
DenseState apply_cnot(DenseState s, std::size_t control, std::size_t target);
DenseState apply_circuit(DenseState s, const Circuit& c);

/// Dense matrix of a Pauli string, same basis convention as DenseState.
CMatrix pauli_matrix(const PauliString& p);

/// A unitary whose conjugation action is the tableau (global phase fixed by
/// making the first nonzero entry of column 0 real positive). Few qubits only.
CMatrix tableau_unitary(const CliffordTableau& t);

double expectation(const DenseState& s, const PauliString& p);
/// Factorized O(n) path for product states.
double expectation_product(const ProductState& s, const PauliString& p);

/// Born-rule samples in the computational basis: count x n bit matrix.
ByteMatrix sample_z(const DenseState& s, std::size_t count, Rng& rng);

}  // namespace stabscope
