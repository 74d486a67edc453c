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

#include "relaqm/lattice_sweep.hpp"

#include <cmath>

#include "relaqm/errors.hpp"
#include "relaqm/questions.hpp"
#include "relaqm/random.hpp"

namespace relaqm {
namespace {

Question random_question(std::size_t dim, Rng& rng) {
  const std::size_t rank = static_cast<std::size_t>(rng.next() % (dim + 1));
  return Question(random_subspace(dim, rank, rng));
}

}  // namespace

std::vector<LawTally> lattice_sweep(std::size_t dim, std::size_t trials, std::uint64_t seed, double tol) {
  if (dim < 2) fail(Errc::InvalidDimension, "lattice sweep needs dim >= 2");
  Rng rng(seed);
  std::vector<LawTally> tallies;
  auto check = [&](const std::string& law, bool ok) {
    for (auto& t : tallies) {
      if (t.law == law) {
        ++t.checked;
        t.failed += ok ? 0 : 1;
        return;
      }
    }
    tallies.push_back({law, 1, ok ? 0u : 1u});
  };
  auto same = [tol](const Question& a, const Question& b) { return equivalent(a, b, tol); };

  for (std::size_t trial = 0; trial < trials; ++trial) {
    const Question a = random_question(dim, rng);
    const Question b = random_question(dim, rng);
    const Question c = random_question(dim, rng);
    const Question never = Question::never(dim);
    const Question always = Question::always(dim);
    check("join commutative", same(join(a, b), join(b, a)));
    check("meet commutative", same(meet(a, b), meet(b, a)));
    check("join associative", same(join(join(a, b), c), join(a, join(b, c))));
    check("meet associative", same(meet(meet(a, b), c), meet(a, meet(b, c))));
    check("de morgan", same(negate(join(a, b)), meet(negate(a), negate(b))));
    check("double negation", same(negate(negate(a)), a));
    check("excluded middle", same(join(a, negate(a)), always));
    check("non-contradiction", same(meet(a, negate(a)), never));
    check("absorption", same(join(a, meet(a, b)), a));

    const std::size_t r1 = static_cast<std::size_t>(rng.next() % (dim + 1));
    const Question inner(random_subspace(dim, r1, rng));
    const Question outer = join(inner, random_question(dim, rng));
    check("orthomodular (nested pairs)", implies(inner, outer, tol) && orthomodular_check(inner, outer));
  }

  // q and (r or s) differs from (q and r) or (q and s) for the rays below.
  {
    Vec e0 = Vec::Unit(static_cast<Eigen::Index>(dim), 0);
    Vec e1 = Vec::Unit(static_cast<Eigen::Index>(dim), 1);
    const Question q = Question::ray(e0);
    const Question r = Question::ray((e0 + e1) / std::sqrt(2.0));
    const Question s = Question::ray((e0 - e1) / std::sqrt(2.0));
    const bool distributes = same(meet(q, join(r, s)), join(meet(q, r), meet(q, s)));
    check("distributivity witness fails", !distributes);
  }

  if (dim <= 4) {
    const CompleteFamily family(haar_unitary(dim, rng), "random");
    const std::vector<Question> algebra = boolean_algebra(family);
    for (const Question& q : algebra) {
      for (const Question& r : algebra) {
        for (const Question& s : algebra) {
          check("boolean algebra distributive", same(meet(q, join(r, s)), join(meet(q, r), meet(q, s))));
        }
      }
    }
  }
  return tallies;
}

}  // namespace relaqm
