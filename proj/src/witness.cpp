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

#include "stabscope/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "stabscope/errors.hpp"
#include "stabscope/linalg.hpp"
#include "stabscope/magic.hpp"
#include "stabscope/stategen.hpp"

namespace stabscope {

const char* verdict_name(Verdict v) { return v == Verdict::kStabilizer ? "stabilizer" : "magic"; }

WitnessReport naive_classify_z(const ByteMatrix& z, double k_sigma) {
  if (z.rows < kMinWitnessSamples) {
    throw std::invalid_argument("naive_classify_z: need at least " + std::to_string(kMinWitnessSamples) +
                                " snapshots, got " + std::to_string(z.rows));
  }
  WitnessReport rep;
  rep.k_sigma = k_sigma;
  const double count = static_cast<double>(z.rows);
  for (std::size_t j = 0; j < z.cols; ++j) {
    double sum = 0.0;
    for (std::size_t r = 0; r < z.rows; ++r) sum += 1.0 - 2.0 * z(r, j);
    const double mean = sum / count;
    double ss = 0.0;
    for (std::size_t r = 0; r < z.rows; ++r) {
      const double d = (1.0 - 2.0 * z(r, j)) - mean;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / (count - 1.0));
    const double se = std::max(sd / std::sqrt(count), 1.0 / count);
    rep.per_qubit_means.push_back(mean);
    rep.per_qubit_se.push_back(se);
    const double dist = std::min({std::abs(mean + 1.0), std::abs(mean), std::abs(mean - 1.0)});
    if (dist > k_sigma * se) rep.verdict = Verdict::kMagic;
  }
  return rep;
}

Verdict naive_classify_rounds(const ProductState& state, std::size_t rounds, std::size_t depth,
                              std::size_t n_snapshots, double k_sigma, Rng& rng, std::size_t dense_cap) {
  if (rounds == 0) throw std::invalid_argument("naive_classify_rounds: rounds must be >= 1");
  const DenseState base = expand(state, dense_cap);
  const std::size_t n = state.num_qubits();
  for (std::size_t round = 0; round < rounds; ++round) {
    DenseState s = base;
    if (round > 0 && depth > 0) {
      Circuit c;
      if (n >= 2) {
        c = random_brickwork_circuit(n, depth, rng);
      } else {
        c.n = 1;
        c.layers.push_back({{{0}, random_clifford(1, rng)}});
      }
      s = apply_circuit(std::move(s), c);
    }
    const ByteMatrix shots = sample_z(s, n_snapshots, rng);
    if (naive_classify_z(shots, k_sigma).verdict == Verdict::kMagic) return Verdict::kMagic;
  }
  return Verdict::kStabilizer;
}

double eq2_rhs(double m_lin, double d) { return 1.0 / (d + 1.0) - d / (d * d - 1.0) * m_lin; }

MomentEstimate clifford_fourth_moment_mc(const ProductState& state, const PauliString& sigma,
                                         std::size_t n_cliffords, Rng& rng) {
  const std::size_t n = state.num_qubits();
  if (sigma.num_qubits() != n) throw DimensionError("clifford_fourth_moment_mc: sigma and state sizes differ");
  if (sigma.is_identity()) throw std::invalid_argument("clifford_fourth_moment_mc: sigma must not be the identity");
  if (n_cliffords < 2) throw std::invalid_argument("clifford_fourth_moment_mc: need at least 2 draws");
  std::vector<double> values;
  values.reserve(n_cliffords);
  for (std::size_t k = 0; k < n_cliffords; ++k) {
    const CliffordTableau u = random_clifford(n, rng);
    const double e = expectation_product(state, u.conjugate(sigma));
    values.push_back(e * e * e * e);
  }
  MomentEstimate est;
  est.n_samples = n_cliffords;
  est.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n_cliffords);
  double ss = 0.0;
  for (double v : values) ss += (v - est.mean) * (v - est.mean);
  est.std_error = std::sqrt(ss / static_cast<double>(n_cliffords - 1) / static_cast<double>(n_cliffords));
  est.m_lin = m_lin_product(state);
  est.analytic_rhs = eq2_rhs(est.m_lin, std::ldexp(1.0, static_cast<int>(n)));
  return est;
}

double clifford_fourth_moment_exact_1q(const SingleQubitState& q, const PauliString& sigma) {
  if (sigma.num_qubits() != 1) throw DimensionError("clifford_fourth_moment_exact_1q: sigma must act on one qubit");
  if (sigma.is_identity()) throw std::invalid_argument("clifford_fourth_moment_exact_1q: sigma must not be the identity");
  const ProductState state({q});
  const auto group = enumerate_cliffords_1q();
  double sum = 0.0;
  for (const auto& u : group) {
    const double e = expectation_product(state, u.conjugate(sigma));
    sum += e * e * e * e;
  }
  return sum / static_cast<double>(group.size());
}

namespace {

// T_pi on four qubits: moves tensor factor k to position pi[k].
CMatrix permutation_operator(const std::array<int, 4>& pi) {
  CMatrix t(16, 16);
  for (std::size_t in = 0; in < 16; ++in) {
    std::size_t out = 0;
    for (int k = 0; k < 4; ++k) {
      const std::size_t bit = (in >> (3 - k)) & 1;
      out |= bit << (3 - pi[k]);
    }
    t(out, in) = 1.0;
  }
  return t;
}

CMatrix fourfold(const CMatrix& s) { return kron(kron(s, s), kron(s, s)); }

}  // namespace

ProjectorReport projector_checks_d2() {
  CMatrix p_symm(16, 16);
  std::array<int, 4> pi{0, 1, 2, 3};
  do {
    p_symm += permutation_operator(pi);
  } while (std::next_permutation(pi.begin(), pi.end()));
  p_symm *= 1.0 / 24.0;

  const CMatrix paulis[4] = {gates::pauli_i(), gates::pauli_x(), gates::pauli_y(), gates::pauli_z()};
  CMatrix q(16, 16);
  for (const auto& s : paulis) q += fourfold(s);
  q *= 1.0 / 4.0;

  ProjectorReport rep;
  auto take = [&rep](cplx v) {
    rep.max_imag = std::max(rep.max_imag, std::abs(v.imag()));
    return v.real();
  };
  rep.trace_symm = take(p_symm.trace());
  for (int k = 0; k < 3; ++k) {
    const CMatrix s4 = fourfold(paulis[k + 1]);
    rep.trace_sigma_symm[k] = take((s4 * p_symm).trace());
    rep.trace_sigma_q_symm[k] = take((s4 * q * p_symm).trace());
  }
  rep.projector_residual =
      std::max((p_symm * p_symm).max_abs_diff(p_symm), p_symm.adjoint().max_abs_diff(p_symm));
  return rep;
}

}  // namespace stabscope
