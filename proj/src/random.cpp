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

#include "relaqm/random.hpp"

#include <cmath>

namespace relaqm {

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

namespace {

Mat ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  Mat g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index c = 0; c < g.cols(); ++c) {
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(r, c) = cplx(re, im) / std::sqrt(2.0);
    }
  }
  return g;
}

}  // namespace

Mat haar_unitary(std::size_t dim, Rng& rng) {
  const Mat g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    const double m = std::abs(r(i, i));
    if (m > 0.0) q.col(i) *= r(i, i) / m;
  }
  return q;
}

Vec random_state_vector(std::size_t dim, Rng& rng) {
  Vec v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

Mat random_hermitian(std::size_t dim, Rng& rng) {
  const Mat a = ginibre(dim, dim, rng);
  return (a + a.adjoint()) / 2.0;
}

Projector random_subspace(std::size_t dim, std::size_t rank, Rng& rng) {
  return Projector(haar_unitary(dim, rng).leftCols(static_cast<Eigen::Index>(rank)));
}

}  // namespace relaqm
