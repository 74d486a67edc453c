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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "relaqm/hilbert.hpp"

namespace relaqm {

struct LawTally {
  std::string law;
  std::size_t checked = 0;
  std::size_t failed = 0;
};

// Randomized lattice-law sweep on subspaces of C^dim: commutativity and
// associativity of join/meet, De Morgan, double negation, complement laws and
// the orthomodular law on nested pairs. Adds the non-distributivity witness
// (expected to fail distributivity; a "failure" here means distributivity
// held) and, for dim <= 4, exhaustive distributivity inside the Boolean
// algebra of a random complete family.
std::vector<LawTally> lattice_sweep(std::size_t dim, std::size_t trials, std::uint64_t seed, double tol = kTol);

}  // namespace relaqm
