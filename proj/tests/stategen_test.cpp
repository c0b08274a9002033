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

#include "stabscope/stategen.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "stabscope/magic.hpp"
#include "test_util.hpp"

using namespace stabscope;

namespace {

bool all_expectations_integral(const DenseState& s) {
  for (double v : pauli_expectations(s)) {
    if (std::min({std::abs(v), std::abs(v - 1.0), std::abs(v + 1.0)}) > 1e-10) return false;
  }
  return true;
}

}  // namespace

TEST(RandomHaar, MomentsOfZ) {
  Rng rng(100);
  const std::size_t draws = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t k = 0; k < draws; ++k) {
    const auto q = random_haar_1q(rng);
    ASSERT_TRUE(q.is_normalized());
    const double z = q.expect_z();
    sum += z;
    sum_sq += z * z;
  }
  // <Z> = cos(theta) is uniform on [-1, 1]: variance 1/3; <Z>^2 has mean 1/3
  // and variance 1/5 - 1/9.
  EXPECT_NEAR(sum / draws, 0.0, 5.0 * std::sqrt(1.0 / 3.0 / draws));
  EXPECT_NEAR(sum_sq / draws, 1.0 / 3.0, 5.0 * std::sqrt((1.0 / 5.0 - 1.0 / 9.0) / draws));
}

TEST(RandomStab, UniformOverSixStates) {
  Rng rng(101);
  const std::size_t draws = 100000;
  std::map<int, std::size_t> counts;
  for (std::size_t k = 0; k < draws; ++k) {
    const auto q = random_stab_1q(rng);
    int which = -1;
    for (int i = 0; i < 6; ++i) {
      const auto ref = stabilizer_1q(i);
      if (std::abs(q.a - ref.a) < 1e-12 && std::abs(q.b - ref.b) < 1e-12) which = i;
    }
    ASSERT_GE(which, 0);
    ++counts[which];
  }
  // chi-square, 5 degrees of freedom, 99% quantile
  EXPECT_LT(stabscope::testing::chi_square_uniform(counts, 6, draws), 15.086);
}

TEST(RandomStab, ZeroMagicAndIntegralExpectations) {
  for (int i = 0; i < 6; ++i) {
    const ProductState p({stabilizer_1q(i)});
    EXPECT_NEAR(m2_product(p), 0.0, 1e-12);
    EXPECT_TRUE(all_expectations_integral(expand(p)));
  }
}

TEST(RandomProduct, Labels) {
  Rng rng(102);
  for (int k = 0; k < 50; ++k) {
    const auto s = random_product(4, StateLabel::kStabilizer, rng);
    EXPECT_EQ(s.m2_density, 0.0);
    EXPECT_EQ(s.state.num_qubits(), 4u);
  }
  for (int k = 0; k < 1000; ++k) {
    const auto s = random_product(3, StateLabel::kMagic, rng);
    EXPECT_GT(s.m2_density, 1e-6);
  }
  EXPECT_THROW(random_product(0, StateLabel::kMagic, rng), std::invalid_argument);
}

TEST(RandomProduct, HaarMeanMagicDensityMatchesQuadrature) {
  // E[M_2] of a Haar qubit by 2-D quadrature over the Bloch sphere.
  const double haar_mean_m2 = 0.2289211428871058;
  const double haar_sd_m2 = 0.10674392782274998;
  Rng rng(103);
  const std::size_t draws = 20000;
  double sum = 0.0;
  for (std::size_t k = 0; k < draws; ++k) sum += random_product(1, StateLabel::kMagic, rng).m2_density;
  EXPECT_NEAR(sum / draws, haar_mean_m2, 5.0 * haar_sd_m2 / std::sqrt(draws));
}

TEST(Brickwork, Structure) {
  Rng rng(104);
  const auto empty = random_brickwork_circuit(4, 0, rng);
  EXPECT_EQ(empty.depth(), 0u);
  EXPECT_EQ(circuit_tableau(empty), CliffordTableau::identity(4));

  const auto c = random_brickwork_circuit(5, 4, rng);
  ASSERT_EQ(c.depth(), 4u);
  c.validate();
  for (std::size_t k = 0; k < c.depth(); ++k) {
    std::vector<int> seen(5, 0);
    for (const auto& block : c.layers[k]) {
      EXPECT_TRUE(block.local.is_symplectic());
      for (auto q : block.qubits) ++seen[q];
      if (block.qubits.size() == 2) {
        EXPECT_EQ(block.qubits[1], block.qubits[0] + 1);
        EXPECT_EQ(block.qubits[0] % 2, k % 2);
      }
    }
    for (int v : seen) EXPECT_EQ(v, 1);  // every qubit touched exactly once
  }
  EXPECT_THROW(random_brickwork_circuit(1, 1, rng), std::invalid_argument);
  EXPECT_NO_THROW(random_brickwork_circuit(1, 0, rng));
}

TEST(Brickwork, StabilizerStaysStabilizer) {
  Rng rng(105);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto p = random_product(n, StateLabel::kStabilizer, rng).state;
    const auto c = random_brickwork_circuit(n, 1 + trial % 4, rng);
    EXPECT_TRUE(all_expectations_integral(apply_circuit(expand(p), c)));
  }
  const auto c = random_brickwork_circuit(4, 2, rng);
  EXPECT_TRUE(all_expectations_integral(apply_circuit(DenseState(4), c)));
}

TEST(CircuitTableau, SingleCnotLayer) {
  Circuit c{3, {{{{1, 2}, gate_tableau(Gate::cnot(0, 1), 2)}}}};
  EXPECT_EQ(circuit_tableau(c), gate_tableau(Gate::cnot(1, 2), 3));
}

TEST(CircuitTableau, DenseAndTableauAgree) {
  Rng rng(106);
  const auto p = random_product(4, StateLabel::kMagic, rng).state;
  const auto c = random_brickwork_circuit(4, 3, rng);
  const auto evolved = apply_circuit(expand(p), c);
  const auto u_dag = inverse(circuit_tableau(c));
  for (std::size_t idx = 0; idx < 256; ++idx) {
    const auto sigma = pauli_from_index(idx, 4);
    EXPECT_NEAR(expectation(evolved, sigma), expectation_product(p, u_dag.conjugate(sigma)), 1e-10);
  }
}

TEST(CircuitTableau, MagicIsCliffordInvariant) {
  Rng rng(107);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const auto p = random_product(n, StateLabel::kMagic, rng).state;
    const auto c = random_brickwork_circuit(n, 3, rng);
    EXPECT_NEAR(sre(apply_circuit(expand(p), c), 2.0), m2_product(p), 1e-10);
  }
}
