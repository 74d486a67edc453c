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

// Random test and sweep inputs: Haar unitaries, states, Hermitian matrices,
// subspaces. All draws go through a caller-owned Rng.

#include <cstddef>

#include "relaqm/hilbert.hpp"

namespace relaqm {

// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of
// R's diagonal folded into Q.
Mat haar_unitary(std::size_t dim, Rng& rng);

Vec random_state_vector(std::size_t dim, Rng& rng);

// GUE-like Hermitian matrix (A + A^dagger) / 2 with Gaussian entries.
Mat random_hermitian(std::size_t dim, Rng& rng);

// Uniformly oriented subspace of the given rank.
Projector random_subspace(std::size_t dim, std::size_t rank, Rng& rng);

}  // namespace relaqm
