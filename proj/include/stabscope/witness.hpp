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
#include <vector>

#include "stabscope/byte_matrix.hpp"
#include "stabscope/pauli.hpp"
#include "stabscope/rng.hpp"
#include "stabscope/statevector.hpp"

namespace stabscope {

enum class Verdict { kStabilizer, kMagic };

const char* verdict_name(Verdict v);

inline constexpr double kDefaultKSigma = 3.0;
inline constexpr std::size_t kMinWitnessSamples = 30;
/// Brickwork depth used for the shallow re-measurement rounds.
inline constexpr std::size_t kShallowDepth = 2;

struct WitnessReport {
  std::vector<double> per_qubit_means;
  std::vector<double> per_qubit_se;
  Verdict verdict = Verdict::kStabilizer;
  double k_sigma = kDefaultKSigma;
};

struct MomentEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  double m_lin = 0.0;
  double analytic_rhs = 0.0;
};

/// Checks that every sampled <Z_j> is within k_sigma standard errors of one
/// of {-1, 0, +1}. Standard errors are floored at 1/N for constant columns.
WitnessReport naive_classify_z(const ByteMatrix& z_snapshots, double k_sigma = kDefaultKSigma);

/// Round 0 measures the state as given; every further round measures it
/// after a fresh depth-`depth` brickwork circuit. Stabilizer iff all rounds
/// pass.
Verdict naive_classify_rounds(const ProductState& state, std::size_t rounds, std::size_t depth,
                              std::size_t n_snapshots, double k_sigma, Rng& rng,
                              std::size_t dense_cap = kDefaultDenseCap);

/// 1/(d+1) - d/(d^2-1) * M_lin.
double eq2_rhs(double m_lin, double d);

/// Monte-Carlo mean of <psi|U^dag sigma U|psi>^4 over uniform Cliffords,
/// using tableau conjugation and the factorized product expectation.
MomentEstimate clifford_fourth_moment_mc(const ProductState& state, const PauliString& sigma,
                                         std::size_t n_cliffords, Rng& rng);

/// Exact average over the 24 single-qubit Cliffords.
double clifford_fourth_moment_exact_1q(const SingleQubitState& q, const PauliString& sigma);

struct ProjectorReport {
  /// tr(P_symm)
  double trace_symm = 0.0;
  /// tr(sigma^{x4} P_symm) for sigma = X, Y, Z
  std::array<double, 3> trace_sigma_symm{};
  /// tr(sigma^{x4} Q P_symm) for sigma = X, Y, Z
  std::array<double, 3> trace_sigma_q_symm{};
  /// Largest imaginary part seen in any trace.
  double max_imag = 0.0;
  /// Deviation of P_symm from a Hermitian idempotent.
  double projector_residual = 0.0;
};

/// Builds the 16x16 symmetric projector on four qubits and Q, and evaluates
/// the three trace identities at d = 2.
ProjectorReport projector_checks_d2();

}  // namespace stabscope
