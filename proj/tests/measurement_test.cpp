// Copyright 2026 The relaqm Authors
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


#include "relaqm/measurement.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "relaqm/errors.hpp"
#include "relaqm/random.hpp"

using namespace relaqm;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Vec vec(std::initializer_list<cplx> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (cplx x : xs) v[i++] = x;
  return v;
}

MeasurementSetup qubit_setup() { return MeasurementSetup::standard(CompleteFamily::computational(2), 2); }

// |i> (x) |O_j> for the standard qubit setup, by hand.
Vec product(int i, int j) { return Vec::Unit(4, 2 * i + j); }

}  // namespace

TEST(Setup, Validation) {
  EXPECT_THROW(MeasurementSetup::standard(CompleteFamily::computational(3), 2), Error);
  std::vector<Vec> bad_marks{vec({1.0, 0.0}), vec({1.0, 0.0})};
  EXPECT_THROW(MeasurementSetup(CompleteFamily::computational(2), vec({1.0, 0.0}), bad_marks), Error);
}

TEST(Collapse, ForcedOutcomeGivesEigenvector) {
  const StateVector psi(vec({0.6, 0.8}), "S");
  const auto r = collapse_to(qubit_setup(), psi, 1);
  EXPECT_EQ(r.outcome, 1);
  EXPECT_LT((r.post_state.amplitudes() - vec({1.0, 0.0})).norm(), 1e-15);
  EXPECT_EQ(r.post_state.relative_to(), "O");
  EXPECT_NEAR(r.probabilities[0], 0.36, 1e-15);
}

TEST(Collapse, EigenstateIsCertain) {
  const StateVector two = StateVector::basis(2, 1, "S");
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto r = collapse_description(qubit_setup(), two, seed);
    EXPECT_EQ(r.outcome, 2);
    EXPECT_LT((r.post_state.amplitudes() - two.amplitudes()).norm(), 1e-15);
  }
}

TEST(Collapse, FrequencyMatchesBornWeight) {
  const StateVector psi(vec({0.6, 0.8}), "S");
  int ones = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) ones += collapse_description(qubit_setup(), psi, seed).outcome == 1;
  EXPECT_GE(ones, 3100);
  EXPECT_LE(ones, 4100);
}

TEST(Entangling, MatchesHandExpansion) {
  const cplx a(0.6, 0.0), b(0.0, 0.8);
  const StateVector psi(vec({a, b}), "P");
  const auto joint = entangling_description(qubit_setup(), psi);
  EXPECT_EQ(joint.dims(), (DimFactors{2, 2}));
  EXPECT_EQ(joint.relative_to(), "P");
  EXPECT_LT((joint.amplitudes() - (a * product(0, 0) + b * product(1, 1))).norm(), 1e-15);

  const auto single = entangling_description(qubit_setup(), StateVector::basis(2, 0, "P"));
  EXPECT_LT((single.amplitudes() - product(0, 0)).norm(), 1e-15);
  const std::size_t sys[] = {0};
  EXPECT_TRUE(pure_factor(single, sys).has_value());
}

TEST(Entangling, EvenSuperpositionIsMaximallyEntangled) {
  const StateVector psi(vec({kInvSqrt2, kInvSqrt2}), "P");
  const auto joint = entangling_description(qubit_setup(), psi);
  const std::size_t sys[] = {0};
  const auto s = schmidt_coefficients(joint, sys);
  EXPECT_NEAR(s[0], kInvSqrt2, 1e-12);
  EXPECT_NEAR(s[1], kInvSqrt2, 1e-12);
}

TEST(Premeasurement, QubitsGiveCnot) {
  const Operator u = premeasurement_unitary(qubit_setup());
  Mat cnot = Mat::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(3, 2) = cnot(2, 3) = 1.0;
  EXPECT_LT((u.matrix() - cnot).norm(), 1e-12);
  EXPECT_LT((u.matrix().adjoint() * u.matrix() - Mat::Identity(4, 4)).norm(), 1e-9);
}

TEST(Premeasurement, IsometryOnPhysicalSubspace) {
  Rng rng(4);
  for (std::size_t ds = 2; ds <= 3; ++ds) {
    for (std::size_t dp = ds; dp <= 4; ++dp) {
      const CompleteFamily f(haar_unitary(ds, rng), "random");
      const MeasurementSetup setup = MeasurementSetup::standard(f, dp);
      const Mat u = premeasurement_unitary(setup).matrix();
      EXPECT_LT((u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).norm(), 1e-9);
      for (std::size_t i = 0; i < ds; ++i) {
        // |f_i> (x) |ready> must land on |f_i> (x) |mark_i>.
        const auto in = oracle::kron(oracle::from_eigen(f.vector(i)), oracle::from_eigen(setup.pointer_ready()));
        const auto want = oracle::kron(oracle::from_eigen(f.vector(i)), oracle::from_eigen(setup.pointer_marks()[i]));
        const auto got = oracle::matvec(oracle::from_eigen(u), in);
        EXPECT_LT(oracle::max_abs_diff(got, want), 1e-9);
      }
    }
  }
}

TEST(Premeasurement, ReproducesEntanglingDescription) {
  Rng rng(200);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t ds = 2 + static_cast<std::size_t>(trial % 3);
    const std::size_t dp = ds + static_cast<std::size_t>(trial % 2);
    const CompleteFamily f(haar_unitary(ds, rng), "random");
    const auto setup = MeasurementSetup::standard(f, dp, "O");
    const StateVector psi(random_state_vector(ds, rng), "P");
    const auto joint = tensor(psi, StateVector(setup.pointer_ready(), "P"));
    const Ket via_u = apply(premeasurement_unitary(setup), joint);
    const auto direct = entangling_description(setup, psi);
    ASSERT_LT((via_u.amplitudes() - direct.amplitudes()).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Correlation, DefiningRelations) {
  const auto setup = qubit_setup();
  const Mat m = correlation_operator(setup).matrix();
  EXPECT_LT((m * product(0, 0) - product(0, 0)).norm(), 1e-15);
  EXPECT_LT((m * product(1, 1) - product(1, 1)).norm(), 1e-15);
  EXPECT_LT((m * product(0, 1)).norm(), 1e-15);
  EXPECT_LT((m * product(1, 0)).norm(), 1e-15);
  EXPECT_LT((m * m - m).norm(), 1e-9);
  EXPECT_LT((m.adjoint() - m).norm(), 1e-9);
  // Oracle: sum_i |i><i| (x) |Oi><Oi|.
  const auto ref = oracle::add(oracle::outer(oracle::from_eigen(Vec(product(0, 0)))),
                               oracle::outer(oracle::from_eigen(Vec(product(1, 1)))));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) EXPECT_NEAR(std::abs(m(r, c) - ref[r][c]), 0.0, 1e-15);
}

TEST(Completion, Values) {
  const auto setup = qubit_setup();
  const StateVector even(vec({kInvSqrt2, kInvSqrt2}), "P");
  EXPECT_NEAR(completion_probability(entangling_description(setup, even), setup), 1.0, 1e-12);
  EXPECT_NEAR(completion_probability(StateVector(product(0, 1), {2, 2}, "P"), setup), 0.0, 1e-15);
  const double th = std::numbers::pi / 4;
  const StateVector half(std::cos(th) * product(0, 0) + std::sin(th) * product(0, 1), {2, 2}, "P");
  EXPECT_NEAR(completion_probability(half, setup), 0.5, 1e-12);
  EXPECT_THROW(completion_probability(StateVector::basis(2, 0, "P"), setup), Error);
}

TEST(Completion, InUnitIntervalAndOneIffFixed) {
  Rng rng(31);
  const auto setup = MeasurementSetup::standard(CompleteFamily::computational(2), 3);
  const Mat m = correlation_operator(setup).matrix();
  for (int trial = 0; trial < 200; ++trial) {
    const StateVector s(random_state_vector(6, rng), {2, 3}, "P");
    const double c = completion_probability(s, setup);
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0 + 1e-12);
    EXPECT_LT(c, 1.0 - 1e-9);
    EXPECT_GT((m * s.amplitudes() - s.amplitudes()).norm(), 1e-9);
  }
  for (int trial = 0; trial < 50; ++trial) {
    const StateVector psi(random_state_vector(2, rng), "P");
    const auto joint = entangling_description(setup, psi);
    EXPECT_NEAR(completion_probability(joint, setup), 1.0, 1e-9);
    EXPECT_LT((m * joint.amplitudes() - joint.amplitudes()).norm(), 1e-9);
  }
}

TEST(Consistency, CorrelatedStatesAlwaysAgree) {
  const auto setup = qubit_setup();
  const auto joint = entangling_description(setup, StateVector(vec({kInvSqrt2, kInvSqrt2}), "P"));
  for (std::uint64_t seed = 0; seed < 1000; ++seed) ASSERT_TRUE(consistency_check(joint, setup, seed).agree);

  const auto r = consistency_check(StateVector(product(0, 0), {2, 2}, "P"), setup, 3);
  EXPECT_TRUE(r.agree);
  EXPECT_EQ(r.q_outcome, 1);
  EXPECT_EQ(r.pointer_outcome, 1);
}

TEST(Consistency, AntiCorrelatedAlwaysDisagrees) {
  const auto setup = qubit_setup();
  const StateVector anti(kInvSqrt2 * (product(0, 1) + product(1, 0)), {2, 2}, "P");
  for (std::uint64_t seed = 0; seed < 200; ++seed) ASSERT_FALSE(consistency_check(anti, setup, seed).agree);
}

TEST(Consistency, RandomCorrelatedSweep) {
  Rng rng(77);
  const auto setup = MeasurementSetup::standard(CompleteFamily::fourier(3), 3);
  const auto joint = entangling_description(setup, StateVector(random_state_vector(3, rng), "P"));
  for (std::uint64_t seed = 0; seed < 1000; ++seed) ASSERT_TRUE(consistency_check(joint, setup, seed).agree);
}

TEST(Marginal, CollapseAndEntangledAccountsAgree) {
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t ds = 2 + static_cast<std::size_t>(trial % 4);
    const CompleteFamily f(haar_unitary(ds, rng), "random");
    const auto setup = MeasurementSetup::standard(f, ds);
    const StateVector psi(random_state_vector(ds, rng), "P");
    const auto collapse = collapse_description(setup, psi, static_cast<std::uint64_t>(trial));
    const auto marginal = q_marginal(entangling_description(setup, psi), setup);
    for (std::size_t i = 0; i < ds; ++i) ASSERT_NEAR(collapse.probabilities[i], marginal[i], 1e-12);
  }
}
