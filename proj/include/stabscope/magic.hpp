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
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "stabscope/byte_matrix.hpp"
#include "stabscope/pauli.hpp"
#include "stabscope/rng.hpp"
#include "stabscope/statevector.hpp"

namespace stabscope {

/// Base of every logarithm in magic measures.
inline constexpr double kMagicLogBase = std::numbers::e;

inline double magic_log(double x) {
  if constexpr (kMagicLogBase == std::numbers::e) {
    return std::log(x);
  } else {
    return std::log(x) / std::log(kMagicLogBase);
  }
}

/// Largest n for which the 4^n Pauli distribution is enumerated.
inline constexpr std::size_t kDefaultEnumerationCap = 8;

/// Pauli distribution of one qubit, indexed by PauliLetter (I, X, Y, Z).
using PauliProbs1q = std::array<double, 4>;

PauliProbs1q pauli_probs_1q(const SingleQubitState& q);

/// All 4^n Pauli expectations <psi|sigma|psi> in lexicographic order
/// (I < X < Y < Z, site 0 most significant base-4 digit).
std::vector<double> pauli_expectations(const DenseState& s, std::size_t cap = kDefaultEnumerationCap);

/// Pi(sigma) = <sigma>^2 / 2^n in the same order.
std::vector<double> pauli_distribution(const DenseState& s, std::size_t cap = kDefaultEnumerationCap);

/// Lexicographic index of an unsigned Pauli string and its inverse.
std::size_t pauli_index(const PauliString& p);
PauliString pauli_from_index(std::size_t index, std::size_t n);

/// Stabilizer Renyi entropy M_alpha (alpha != 1).
double sre(const DenseState& s, double alpha, std::size_t cap = kDefaultEnumerationCap);

/// Stabilizer linear entropy 1 - d ||Pi||^2.
double m_lin(const DenseState& s, std::size_t cap = kDefaultEnumerationCap);

/// M_2 = -log(1 - M_lin).
double m2_from_mlin(double m);

/// Per-qubit additive M_2 of a product state.
double m2_product(const ProductState& p);
double m_lin_product(const ProductState& p);

/// Pauli snapshots of a product state: count x n letters, sites independent.
ByteMatrix sample_pauli_product(const ProductState& p, std::size_t count, Rng& rng);

/// Pauli snapshots from the exact enumerated distribution.
ByteMatrix sample_pauli_dense(const DenseState& s, std::size_t count, Rng& rng,
                              std::size_t cap = kDefaultEnumerationCap);

/// Replaces every row sigma by the letters of U sigma U^dagger.
ByteMatrix evolve_pauli_snapshots(const ByteMatrix& rows, const CliffordTableau& t);

}  // namespace stabscope
