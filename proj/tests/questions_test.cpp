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


#include "relaqm/questions.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "relaqm/errors.hpp"
#include "relaqm/lattice_sweep.hpp"
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

Question coord(std::size_t dim, std::initializer_list<std::size_t> axes) {
  Mat cols = Mat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(axes.size()));
  Eigen::Index c = 0;
  for (std::size_t a : axes) cols(static_cast<Eigen::Index>(a), c++) = 1.0;
  return Question::span(cols);
}

// Random nested pair: q1 a random subspace, q2 = q1 plus random extra vectors.
std::pair<Question, Question> nested_pair(std::size_t dim, Rng& rng) {
  const std::size_t r1 = 1 + rng.next() % (dim - 1);
  const std::size_t r2 = r1 + 1 + rng.next() % (dim - r1);
  const Mat u = haar_unitary(dim, rng);
  return {Question(Projector(u.leftCols(static_cast<Eigen::Index>(r1)))),
          Question(Projector(u.leftCols(static_cast<Eigen::Index>(r2))))};
}

}  // namespace

TEST(Implies, Examples) {
  EXPECT_TRUE(implies(Question::never(3), coord(3, {1})));
  EXPECT_TRUE(implies(coord(2, {0}), coord(2, {0, 1})));
  EXPECT_FALSE(implies(Question::ray(vec({kInvSqrt2, kInvSqrt2})), coord(2, {0})));
  EXPECT_THROW(implies(coord(2, {0}), coord(3, {0})), Error);
}

TEST(Lattice, JoinMeetNegateOrthogonal) {
  const auto j = join(coord(2, {0}), Question::ray(vec({kInvSqrt2, kInvSqrt2})));
  EXPECT_EQ(j.rank(), 2U);
  EXPECT_TRUE(orthogonal(coord(2, {0}), coord(2, {1})));
  EXPECT_FALSE(orthogonal(coord(2, {0}), Question::ray(vec({kInvSqrt2, kInvSqrt2}))));
  const auto m = meet(coord(3, {0, 1}), coord(3, {1, 2}));
  EXPECT_EQ(m.rank(), 1U);
  EXPECT_TRUE(equivalent(m, coord(3, {1})));
}

TEST(Lattice, ComplementLaws) {
  Rng rng(100);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 2 + static_cast<std::size_t>(trial % 5);
    const Question q(random_subspace(dim, rng.next() % (dim + 1), rng));
    EXPECT_TRUE(join(q, negate(q)).is_always());
    EXPECT_TRUE(meet(q, negate(q)).is_never());
    EXPECT_TRUE(equivalent(negate(negate(q)), q));
  }
}

TEST(Orthomodular, CoordinateAndRandom) {
  EXPECT_TRUE(orthomodular_check(coord(4, {0}), coord(4, {0, 1, 3})));
  Rng rng(500);
  for (int trial = 0; trial < 500; ++trial) {
    const auto [q1, q2] = nested_pair(2 + static_cast<std::size_t>(trial % 5), rng);
    ASSERT_TRUE(orthomodular_check(q1, q2));
  }
}

TEST(Orthomodular, RankArithmetic) {
  Rng rng(3);
  const Mat u = haar_unitary(4, rng);
  // Rank-1 inside rank-3, ambient 4.
  const Question q1(Projector(u.leftCols(1)));
  const Question q2(Projector(u.leftCols(3)));
  EXPECT_TRUE(orthomodular_check(q1, q2));
  EXPECT_EQ(meet(q2, negate(q1)).rank(), 2U);
}

TEST(Orthomodular, RequiresImplication) {
  try {
    orthomodular_check(coord(2, {0}), coord(2, {1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PreconditionViolated);
  }
}

TEST(Capacity, CeilLog2) {
  EXPECT_EQ(info_capacity(2), 1);
  EXPECT_EQ(info_capacity(3), 2);
  EXPECT_EQ(info_capacity(4), 2);
  EXPECT_EQ(info_capacity(5), 3);
  EXPECT_EQ(info_capacity(1024), 10);
  for (long bad : {1L, 0L, -3L}) {
    try {
      info_capacity(bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::InvalidDimension);
    }
  }
}

TEST(Family, CompleteQuestions) {
  const auto atoms = complete_questions(CompleteFamily::computational(2));
  ASSERT_EQ(atoms.size(), 2U);
  EXPECT_TRUE(equivalent(atoms[0], coord(2, {0})));
  EXPECT_TRUE(equivalent(atoms[1], coord(2, {1})));

  const auto had = complete_questions(CompleteFamily::fourier(2));
  EXPECT_TRUE(equivalent(had[0], Question::ray(vec({kInvSqrt2, kInvSqrt2}))));
  EXPECT_TRUE(equivalent(had[1], Question::ray(vec({kInvSqrt2, -kInvSqrt2}))));

  Rng rng(1);
  const auto atoms5 = complete_questions(CompleteFamily(haar_unitary(5, rng), "r"));
  Question all = Question::never(5);
  for (std::size_t a = 0; a < atoms5.size(); ++a) {
    for (std::size_t b = a + 1; b < atoms5.size(); ++b) EXPECT_TRUE(orthogonal(atoms5[a], atoms5[b]));
    all = join(all, atoms5[a]);
  }
  EXPECT_TRUE(all.is_always());
}

TEST(Family, RejectsNonUnitaryBasis) {
  Mat m(2, 2);
  m << 1, 1, 0, 1;
  try {
    CompleteFamily f(m, "bad");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotUnitary);
  }
}

TEST(BooleanAlgebra, SizesAndDistributivity) {
  const auto two = boolean_algebra(CompleteFamily::computational(2));
  ASSERT_EQ(two.size(), 4U);
  EXPECT_TRUE(two[0].is_never());
  EXPECT_TRUE(equivalent(two[1], coord(2, {0})));
  EXPECT_TRUE(equivalent(two[2], coord(2, {1})));
  EXPECT_TRUE(two[3].is_always());

  Rng rng(6);
  const auto alg = boolean_algebra(CompleteFamily(haar_unitary(3, rng), "r"));
  ASSERT_EQ(alg.size(), 8U);
  for (const auto& q : alg)
    for (const auto& r : alg)
      for (const auto& s : alg) ASSERT_TRUE(equivalent(meet(q, join(r, s)), join(meet(q, r), meet(q, s))));
  // Closure: every combination lands back in the set (by mask arithmetic).
  for (std::size_t a = 0; a < 8; ++a) {
    for (std::size_t b = 0; b < 8; ++b) {
      EXPECT_TRUE(equivalent(join(alg[a], alg[b]), alg[a | b]));
      EXPECT_TRUE(equivalent(meet(alg[a], alg[b]), alg[a & b]));
    }
    EXPECT_TRUE(equivalent(negate(alg[a]), alg[7 & ~a]));
  }
}

TEST(BooleanAlgebra, GuardsSize) {
  try {
    boolean_algebra(CompleteFamily::computational(11));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooLarge);
  }
}

TEST(Lattice, DistributivityFailsInDimTwo) {
  const auto a = coord(2, {0});
  const auto b = Question::ray(vec({kInvSqrt2, kInvSqrt2}));
  const auto c = negate(b);
  // a and (b or c) = a, but (a and b) or (a and c) = never.
  EXPECT_FALSE(equivalent(meet(a, join(b, c)), join(meet(a, b), meet(a, c))));
}

TEST(Codes, AtomsAndUnreachable) {
  EXPECT_EQ(atom_code(2, 3), (std::vector<std::uint8_t>{1, 0}));
  EXPECT_EQ(unreachable_codes(3), (std::vector<std::vector<std::uint8_t>>{{1, 1}}));
  EXPECT_TRUE(unreachable_codes(4).empty());
  EXPECT_EQ(unreachable_codes(5).size(), 3U);
}

TEST(Ask, EigenstateAtomIsCertain) {
  const auto atoms = complete_questions(CompleteFamily::computational(2));
  const StateVector one = StateVector::basis(2, 0, "O");
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::vector<Question> qs{atoms[0]};
    const auto r = ask_sequence(one, qs, seed);
    EXPECT_EQ(r.answers.bits, (std::vector<std::uint8_t>{1}));
    EXPECT_LT((r.final_state.amplitudes() - one.amplitudes()).norm(), 1e-15);
  }
}

TEST(Ask, Repeatability) {
  Rng rng(13);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const std::size_t dim = 2 + seed % 4;
    const StateVector s(random_state_vector(dim, rng), "O");
    const Question q(random_subspace(dim, 1 + rng.next() % (dim - 1), rng));
    const std::vector<Question> twice{q, q};
    const auto r = ask_sequence(s, twice, seed);
    ASSERT_EQ(r.answers.bits[0], r.answers.bits[1]);
  }
}

TEST(Ask, FamilyHasExactlyOneYes) {
  Rng rng(14);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const std::size_t dim = 2 + seed % 5;
    const CompleteFamily f(haar_unitary(dim, rng), "r");
    const StateVector s(random_state_vector(dim, rng), "O");
    const auto r = ask_family(s, f, seed);
    int yes = 0;
    for (auto b : r.answers.bits) yes += b;
    ASSERT_EQ(yes, 1);
    EXPECT_EQ(r.answers.family, "r");
  }
}

TEST(Ask, UnbiasedQuestionYesRate) {
  const auto plus = Question::ray(vec({kInvSqrt2, kInvSqrt2}));
  const std::vector<Question> qs{plus};
  const StateVector one = StateVector::basis(2, 0, "O");
  int yes = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) yes += ask_sequence(one, qs, seed).answers.bits[0];
  EXPECT_GE(yes, 4500);
  EXPECT_LE(yes, 5500);
}

TEST(Ask, AlgebraDeterminedAfterAllAtoms) {
  Rng rng(15);
  const CompleteFamily f(haar_unitary(3, rng), "r");
  const auto atoms = complete_questions(f);
  const auto algebra = boolean_algebra(f);
  const StateVector s(random_state_vector(3, rng), "O");
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto asked = ask_sequence(s, atoms, seed);
    for (const auto& q : algebra) {
      const double y = yes_probability(asked.final_state, q);
      ASSERT_TRUE(y < 1e-12 || y > 1.0 - 1e-12);
    }
  }
}

TEST(RelevantBits, DeterminedAnswersAreRedundant) {
  const auto atoms = complete_questions(CompleteFamily::computational(2));
  const StateVector even(vec({kInvSqrt2, kInvSqrt2}), "O");
  const std::vector<Question> qs{atoms[0], atoms[1], atoms[0]};
  const std::vector<std::uint8_t> answers{1, 0, 1};
  EXPECT_EQ(relevant_bits(even, qs, answers), (std::vector<bool>{true, false, false}));
  const std::vector<std::uint8_t> impossible{1, 1, 1};
  EXPECT_THROW(relevant_bits(even, qs, impossible), Error);
}

TEST(LatticeSweep, AllLawsHold) {
  for (std::size_t dim = 2; dim <= 6; ++dim) {
    for (const auto& tally : lattice_sweep(dim, 100, dim)) {
      EXPECT_GT(tally.checked, 0U) << tally.law;
      EXPECT_EQ(tally.failed, 0U) << tally.law << " dim " << dim;
    }
  }
}
