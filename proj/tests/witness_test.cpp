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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "stabscope/errors.hpp"
#include "stabscope/magic.hpp"
#include "stabscope/stategen.hpp"

using namespace stabscope;

namespace {

ProductState repeated(const SingleQubitState& q, std::size_t n) { return ProductState(std::vector(n, q)); }

const SingleQubitState kT = phase_state(std::numbers::pi / 4);

}  // namespace

TEST(NaiveClassifyZ, StabilizerInputs) {
  Rng rng(300);
  const auto zeros = sample_z(DenseState(4), 500, rng);
  auto rep = naive_classify_z(zeros);
  EXPECT_EQ(rep.verdict, Verdict::kStabilizer);
  for (double se : rep.per_qubit_se) EXPECT_DOUBLE_EQ(se, 1.0 / 500);
  for (double m : rep.per_qubit_means) EXPECT_DOUBLE_EQ(m, 1.0);

  const auto plus = sample_z(expand(repeated(stabilizer_1q(2), 4)), 1000, rng);
  EXPECT_EQ(naive_classify_z(plus).verdict, Verdict::kStabilizer);
}

TEST(NaiveClassifyZ, PhaseStateIsAFalseNegative) {
  Rng rng(301);
  const auto shots = sample_z(expand(repeated(kT, 4)), 1000, rng);
  EXPECT_EQ(naive_classify_z(shots).verdict, Verdict::kStabilizer);
}

TEST(NaiveClassifyZ, DetectsGenericMagic) {
  const SingleQubitState tilted{std::cos(0.4), std::sin(0.4)};  // <Z> = cos(0.8)
  Rng rng(302);
  const auto shots = sample_z(expand(repeated(tilted, 3)), 1000, rng);
  EXPECT_EQ(naive_classify_z(shots).verdict, Verdict::kMagic);
}

TEST(NaiveClassifyZ, TooFewSamples) {
  EXPECT_THROW(naive_classify_z(ByteMatrix(29, 2)), std::invalid_argument);
}

TEST(NaiveClassifyZ, FalsePositiveRateIsControlled) {
  Rng rng(303);
  int flagged = 0;
  const int trials = 400;
  for (int t = 0; t < trials; ++t) {
    const auto p = random_product(4, StateLabel::kStabilizer, rng).state;
    if (naive_classify_z(sample_z(expand(p), 1000, rng), 3.0).verdict == Verdict::kMagic) ++flagged;
  }
  EXPECT_LE(flagged, trials / 20);
}

TEST(NaiveClassifyRounds, StabilizersSurvive) {
  Rng rng(304);
  // Each round is another chance for a 3-sigma excursion, so the five-round
  // false-positive rate is a few times the single-round one.
  int flagged = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    const auto p = random_product(4, StateLabel::kStabilizer, rng).state;
    if (naive_classify_rounds(p, 5, kShallowDepth, 1000, 3.0, rng) == Verdict::kMagic) ++flagged;
  }
  std::printf("five-round false positives: %d / %d\n", flagged, trials);
  EXPECT_LE(flagged, trials / 10);
  EXPECT_EQ(naive_classify_rounds(repeated(stabilizer_1q(0), 4), 5, kShallowDepth, 1000, 3.0, rng),
            Verdict::kStabilizer);
}

TEST(NaiveClassifyRounds, PhaseStateCaughtByShallowCircuits) {
  Rng rng(305);
  const auto p = repeated(kT, 4);
  int caught = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    if (naive_classify_rounds(p, 5, kShallowDepth, 1000, 3.0, rng) == Verdict::kMagic) ++caught;
  }
  EXPECT_GT(caught, 95);
  // With a single round nothing but the raw Z-basis data is inspected.
  EXPECT_EQ(naive_classify_rounds(p, 1, kShallowDepth, 1000, 3.0, rng), Verdict::kStabilizer);
}

TEST(NaiveClassifyRounds, HaarProductFlagged) {
  Rng rng(306);
  int caught = 0;
  for (int t = 0; t < 20; ++t) {
    const auto p = random_product(4, StateLabel::kMagic, rng).state;
    if (naive_classify_rounds(p, 5, kShallowDepth, 1000, 3.0, rng) == Verdict::kMagic) ++caught;
  }
  EXPECT_GE(caught, 19);
  EXPECT_THROW(naive_classify_rounds(repeated(kT, 2), 0, 2, 100, 3.0, rng), std::invalid_argument);
  EXPECT_THROW(naive_classify_rounds(repeated(kT, 5), 1, 2, 100, 3.0, rng, 4), CapacityError);
}

TEST(Eq2Rhs, Examples) {
  EXPECT_NEAR(eq2_rhs(0.0, 2.0), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(eq2_rhs(0.25, 2.0), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(eq2_rhs(0.0, 4.0), 0.2, 1e-15);
}

TEST(FourthMomentExact1q, Examples) {
  EXPECT_NEAR(clifford_fourth_moment_exact_1q(kT, PauliString::parse("X")), 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(clifford_fourth_moment_exact_1q(stabilizer_1q(0), PauliString::parse("Z")), 1.0 / 3.0, 1e-12);
  EXPECT_THROW(clifford_fourth_moment_exact_1q(kT, PauliString::parse("I")), std::invalid_argument);
  EXPECT_THROW(clifford_fourth_moment_exact_1q(kT, PauliString::parse("XX")), DimensionError);
}

TEST(FourthMomentExact1q, MatchesIdentityForRandomStates) {
  Rng rng(307);
  for (int t = 0; t < 50; ++t) {
    const auto q = random_haar_1q(rng);
    const double rhs = eq2_rhs(m_lin_product(ProductState({q})), 2.0);
    for (const char* s : {"X", "Y", "Z", "-Y"}) {
      EXPECT_NEAR(clifford_fourth_moment_exact_1q(q, PauliString::parse(s)), rhs, 1e-12);
    }
  }
}

TEST(FourthMomentMc, StabilizerTwoQubits) {
  Rng rng(308);
  const auto est = clifford_fourth_moment_mc(repeated(stabilizer_1q(0), 2), PauliString::parse("XZ"), 10000, rng);
  EXPECT_NEAR(est.analytic_rhs, 0.2, 1e-15);
  EXPECT_LE(std::abs(est.mean - 0.2), 5 * est.std_error);
  EXPECT_GT(est.std_error, 0.0);
  EXPECT_EQ(est.n_samples, 10000u);
}

TEST(FourthMomentMc, HaarProductThreeQubits) {
  Rng rng(309);
  const auto p = random_product(3, StateLabel::kMagic, rng).state;
  const auto est = clifford_fourth_moment_mc(p, PauliString::parse("Y_Z"), 5000, rng);
  EXPECT_NEAR(est.analytic_rhs, eq2_rhs(m_lin(expand(p)), 8.0), 1e-12);
  EXPECT_LE(std::abs(est.mean - est.analytic_rhs), 5 * est.std_error);
}

TEST(FourthMomentMc, IndependentOfSigma) {
  Rng rng(310);
  const auto p = random_product(2, StateLabel::kMagic, rng).state;
  const auto a = clifford_fourth_moment_mc(p, PauliString::parse("X_"), 5000, rng);
  const auto b = clifford_fourth_moment_mc(p, PauliString::parse("YZ"), 5000, rng);
  EXPECT_LE(std::abs(a.mean - b.mean), 5 * std::hypot(a.std_error, b.std_error));
}

TEST(FourthMomentMc, Errors) {
  Rng rng(311);
  EXPECT_THROW(clifford_fourth_moment_mc(repeated(kT, 2), PauliString::parse("__"), 10, rng), std::invalid_argument);
  EXPECT_THROW(clifford_fourth_moment_mc(repeated(kT, 2), PauliString::parse("X"), 10, rng), DimensionError);
}

TEST(ProjectorChecks, TraceIdentitiesAtD2) {
  const auto rep = projector_checks_d2();
  EXPECT_NEAR(rep.trace_symm, 5.0, 1e-10);  // binom(d+3, 4)
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(rep.trace_sigma_symm[k], 1.0, 1e-10);    // (d^2 + 2d) / 8
    EXPECT_NEAR(rep.trace_sigma_q_symm[k], 2.0, 1e-10);  // (1 + d)(2 + d) / 6
  }
  EXPECT_LT(rep.max_imag, 1e-12);
  EXPECT_LT(rep.projector_residual, 1e-12);
}
