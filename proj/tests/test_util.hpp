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

#include <cmath>
#include <map>
#include <vector>

#include "stabscope/linalg.hpp"
#include "stabscope/pauli.hpp"

namespace stabscope::testing {

/// Dense Pauli matrix from explicit 2x2 factors (independent of the
/// bit-mask formula used by the library).
inline CMatrix kron_pauli(const PauliString& p) {
  CMatrix m = CMatrix::identity(1);
  for (std::size_t j = 0; j < p.num_qubits(); ++j) {
    switch (p.letter(j)) {
      case PauliLetter::I: m = kron(m, gates::pauli_i()); break;
      case PauliLetter::X: m = kron(m, gates::pauli_x()); break;
      case PauliLetter::Y: m = kron(m, gates::pauli_y()); break;
      case PauliLetter::Z: m = kron(m, gates::pauli_z()); break;
    }
  }
  if (p.negative()) m *= -1.0;
  return m;
}

inline cplx i_power(int k) {
  const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((k % 4) + 4) % 4];
}

/// Pearson statistic against a uniform law over `categories` cells.
template <typename Key>
double chi_square_uniform(const std::map<Key, std::size_t>& counts, std::size_t categories, std::size_t total) {
  const double expected = static_cast<double>(total) / static_cast<double>(categories);
  double chi = 0.0;
  std::size_t seen = 0;
  for (const auto& [k, c] : counts) {
    const double d = static_cast<double>(c) - expected;
    chi += d * d / expected;
    ++seen;
  }
  chi += static_cast<double>(categories - seen) * expected;
  return chi;
}

/// Total-variation distance between two distributions on the same support.
inline double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

}  // namespace stabscope::testing
