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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "stabscope/errors.hpp"
#include "stabscope/stategen.hpp"
#include "test_util.hpp"

using namespace stabscope;
using stabscope::testing::kron_pauli;

namespace {

const double kR = 1.0 / std::numbers::sqrt2;

DenseState random_dense(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> a(std::size_t{1} << n);
  double nrm = 0.0;
  for (auto& v : a) {
    v = cplx(g(rng), g(rng));
    nrm += std::norm(v);
  }
  for (auto& v : a) v /= std::sqrt(nrm);
  return DenseState(n, std::move(a));
}

PauliString random_pauli(std::size_t n, Rng& rng) {
  PauliString p(n);
  for (std::size_t j = 0; j < n; ++j) p.set_letter(j, static_cast<PauliLetter>(uniform_below(rng, 4)));
  p.set_negative(coin(rng));
  return p;
}

// <psi| M |psi> with an explicit matrix.
cplx dense_expect(const DenseState& s, const CMatrix& m) {
  const auto& a = s.amplitudes();
  cplx acc = 0.0;
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a.size(); ++c) acc += std::conj(a[r]) * m(r, c) * a[c];
  return acc;
}

// |<a|b>|
double overlap(const DenseState& a, const DenseState& b) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
  return std::abs(acc);
}

}  // namespace

TEST(Expand, BigEndianIndexConvention) {
  const auto s = expand(ProductState({stabilizer_1q(0), stabilizer_1q(1)}));
  ASSERT_EQ(s.dim(), 4u);
  EXPECT_NEAR(std::abs(s.amplitudes()[1]), 1.0, 1e-15);

  const auto plus0 = expand(ProductState({stabilizer_1q(2), stabilizer_1q(0)}));
  const double want[] = {kR, 0.0, kR, 0.0};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(plus0.amplitudes()[i] - want[i]), 0.0, 1e-15);
}

TEST(Expand, PreservesNorm) {
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    auto p = random_product(1 + uniform_below(rng, 8), StateLabel::kMagic, rng).state;
    EXPECT_NEAR(expand(p).norm_squared(), 1.0, 1e-12);
  }
}

TEST(Expand, CapExceeded) {
  std::vector<SingleQubitState> qs(5, stabilizer_1q(0));
  EXPECT_THROW(expand(ProductState(qs), 4), CapacityError);
}

TEST(ProductState, RejectsUnnormalizedFactor) {
  EXPECT_THROW(ProductState({SingleQubitState{1.0, 1.0}}), std::invalid_argument);
}

TEST(ApplyGates, HadamardAndCnot) {
  auto s = apply_1q(DenseState(1), 0, gates::hadamard());
  EXPECT_NEAR(s.amplitudes()[0].real(), kR, 1e-15);
  EXPECT_NEAR(s.amplitudes()[1].real(), kR, 1e-15);

  const auto ten = expand(ProductState({stabilizer_1q(1), stabilizer_1q(0)}));
  const auto out = apply_cnot(ten, 0, 1);
  EXPECT_NEAR(std::abs(out.amplitudes()[3]), 1.0, 1e-15);
}

TEST(ApplyGates, Errors) {
  EXPECT_THROW(apply_1q(DenseState(2), 2, gates::hadamard()), std::out_of_range);
  EXPECT_THROW(apply_1q(DenseState(2), 0, CMatrix(2, 2, {1.0, 1.0, 0.0, 1.0})), std::invalid_argument);
  EXPECT_THROW(apply_cnot(DenseState(2), 0, 5), std::out_of_range);
  EXPECT_THROW(apply_cnot(DenseState(2), 1, 1), std::invalid_argument);
}

TEST(ApplyGates, CircuitPreservesNorm) {
  Rng rng(3);
  auto p = random_product(5, StateLabel::kMagic, rng).state;
  const auto c = random_brickwork_circuit(5, 3, rng);
  const auto s = apply_circuit(expand(p), c);
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-10);
}

TEST(TableauUnitary, MatchesConjugationAction) {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 1 + trial % 3;
    const auto t = random_clifford(k, rng);
    const CMatrix u = tableau_unitary(t);
    ASSERT_TRUE(u.is_unitary(1e-10));
    for (int q = 0; q < 10; ++q) {
      const auto p = random_pauli(k, rng);
      EXPECT_LT((u * kron_pauli(p) * u.adjoint()).max_abs_diff(kron_pauli(t.conjugate(p))), 1e-10);
    }
  }
}

TEST(TableauUnitary, GateBlocksReproduceExplicitGates) {
  Rng rng(8);
  const auto p = random_product(2, StateLabel::kMagic, rng).state;
  Circuit c{2, {{{{0}, gate_tableau(Gate::h(0), 1)}}, {{{0, 1}, gate_tableau(Gate::cnot(0, 1), 2)}}}};
  const auto via_blocks = apply_circuit(expand(p), c);
  const auto via_gates = apply_cnot(apply_1q(expand(p), 0, gates::hadamard()), 0, 1);
  EXPECT_NEAR(overlap(via_blocks, via_gates), 1.0, 1e-12);
}

TEST(Circuit, OverlappingBlocksRejected) {
  Circuit c{3, {{{{0, 1}, CliffordTableau::identity(2)}, {{1, 2}, CliffordTableau::identity(2)}}}};
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Expectation, Examples) {
  EXPECT_NEAR(expectation(DenseState(1), PauliString::parse("Z")), 1.0, 1e-15);
  const auto t = expand(ProductState({phase_state(std::numbers::pi / 4)}));
  EXPECT_NEAR(expectation(t, PauliString::parse("X")), kR, 1e-12);
  EXPECT_NEAR(expectation(t, PauliString::parse("Y")), kR, 1e-12);
  EXPECT_NEAR(expectation(t, PauliString::parse("-X")), -kR, 1e-12);
  EXPECT_THROW(expectation(t, PauliString::parse("XX")), DimensionError);
}

TEST(Expectation, AgreesWithExplicitMatrix) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto s = random_dense(n, rng);
    const auto p = random_pauli(n, rng);
    const cplx want = dense_expect(s, kron_pauli(p));
    EXPECT_NEAR(want.imag(), 0.0, 1e-12);
    EXPECT_NEAR(expectation(s, p), want.real(), 1e-12);
  }
}

TEST(Expectation, StabilizerProductsTakeValuesInZeroPlusMinusOne) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_product(3, StateLabel::kStabilizer, rng).state;
    const auto s = expand(p);
    for (std::size_t idx = 0; idx < 64; ++idx) {
      PauliString sigma(3);
      for (std::size_t j = 0; j < 3; ++j) sigma.set_letter(j, static_cast<PauliLetter>((idx >> (2 * j)) & 3));
      const double v = expectation(s, sigma);
      const double dist = std::min({std::abs(v), std::abs(v - 1.0), std::abs(v + 1.0)});
      EXPECT_LT(dist, 1e-10);
    }
  }
}

TEST(ExpectationProduct, MatchesDensePath) {
  Rng rng(6);
  EXPECT_NEAR(expectation_product(ProductState({stabilizer_1q(2)}), PauliString::parse("X")), 1.0, 1e-15);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const auto p = random_product(n, StateLabel::kMagic, rng).state;
    const auto sigma = random_pauli(n, rng);
    EXPECT_NEAR(expectation_product(p, sigma), expectation(expand(p), sigma), 1e-12);
  }
  const ProductState t0({phase_state(std::numbers::pi / 4), stabilizer_1q(0)});
  EXPECT_NEAR(expectation_product(t0, PauliString::parse("YZ")), kR, 1e-12);
  EXPECT_NEAR(expectation_product(t0, PauliString::parse("-YZ")), -kR, 1e-12);
  EXPECT_THROW(expectation_product(t0, PauliString::parse("Y")), DimensionError);
}

TEST(CliffordInvariance, EvolvedExpectationEqualsHeisenbergPicture) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const auto p = random_product(n, StateLabel::kMagic, rng).state;
    const auto c = random_brickwork_circuit(n, 3, rng);
    const auto evolved = apply_circuit(expand(p), c);
    const auto u_dag = inverse(circuit_tableau(c));
    for (int q = 0; q < 10; ++q) {
      const auto sigma = random_pauli(n, rng);
      EXPECT_NEAR(expectation(evolved, sigma), expectation_product(p, u_dag.conjugate(sigma)), 1e-10);
    }
  }
}

TEST(SampleZ, DeterministicStates) {
  Rng rng(8);
  const auto zeros = sample_z(DenseState(3), 100, rng);
  for (auto v : zeros.data) EXPECT_EQ(v, 0);

  auto ghz = apply_cnot(apply_1q(DenseState(2), 0, gates::hadamard()), 0, 1);
  const auto rows = sample_z(ghz, 2000, rng);
  std::size_t n11 = 0;
  for (std::size_t r = 0; r < rows.rows; ++r) {
    EXPECT_EQ(rows(r, 0), rows(r, 1));
    n11 += rows(r, 0);
  }
  EXPECT_GT(n11, 0u);
  EXPECT_LT(n11, 2000u);
  EXPECT_THROW(sample_z(ghz, 0, rng), std::invalid_argument);
}

TEST(SampleZ, PlusStateFrequency) {
  Rng rng(9);
  const std::size_t shots = 100000;
  const auto rows = sample_z(expand(ProductState({stabilizer_1q(2)})), shots, rng);
  double ones = 0;
  for (auto v : rows.data) ones += v;
  const double se = std::sqrt(0.25 / shots);
  EXPECT_NEAR(ones / shots, 0.5, 5 * se);
}

TEST(SampleZ, TotalVariationToBornRule) {
  Rng rng(10);
  const auto s = random_dense(3, rng);
  const std::size_t shots = 100000;
  const auto rows = sample_z(s, shots, rng);
  std::vector<double> emp(8, 0.0), exact(8);
  for (std::size_t r = 0; r < shots; ++r) emp[rows(r, 0) * 4 + rows(r, 1) * 2 + rows(r, 2)] += 1.0 / shots;
  for (std::size_t i = 0; i < 8; ++i) exact[i] = std::norm(s.amplitudes()[i]);
  EXPECT_LT(stabscope::testing::tv_distance(emp, exact), 0.02);
}
