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

#include "relaqm/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unsupported/Eigen/KroneckerProduct>

#include "relaqm/errors.hpp"
#include "relaqm/simd/kernels.hpp"

namespace relaqm {
namespace {

std::span<const cplx> view(const Vec& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

std::span<const cplx> column(const Mat& m, Eigen::Index c) {
  return {m.data() + c * m.rows(), static_cast<std::size_t>(m.rows())};
}

Vec matvec(const Mat& m, const Vec& v) {
  Vec out(m.rows());
  simd::gemv({m.data(), static_cast<std::size_t>(m.size())}, static_cast<std::size_t>(m.rows()),
             static_cast<std::size_t>(m.cols()), view(v), {out.data(), static_cast<std::size_t>(out.size())});
  return out;
}

void check_dims(const DimFactors& dims, std::size_t n) {
  if (dims.empty() || total_dim(dims) != n) {
    fail(Errc::DimensionMismatch, "dimension factors do not multiply to " + std::to_string(n));
  }
}

DimFactors concat(const DimFactors& a, const DimFactors& b) {
  DimFactors out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

std::size_t total_dim(const DimFactors& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

StateVector::StateVector(Vec amplitudes, DimFactors dims, std::string relative_to)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)), relative_to_(std::move(relative_to)) {
  check_dims(dims_, dim());
  if (relative_to_.empty()) fail(Errc::PreconditionViolated, "state has no observer tag");
  const double n2 = simd::norm2(view(amplitudes_));
  if (std::abs(std::sqrt(n2) - 1.0) > kTol) {
    fail(Errc::NotNormalized, "state norm " + std::to_string(std::sqrt(n2)) + " differs from 1");
  }
}

StateVector::StateVector(Vec amplitudes, std::string relative_to)
    : StateVector(amplitudes, DimFactors{static_cast<std::size_t>(amplitudes.size())}, std::move(relative_to)) {}

StateVector StateVector::basis(std::size_t dim, std::size_t index, std::string relative_to) {
  if (index >= dim) fail(Errc::IndexOutOfRange, "basis index out of range");
  Vec v = Vec::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(std::move(v), std::move(relative_to));
}

StateVector StateVector::normalized(Vec amplitudes, DimFactors dims, std::string relative_to) {
  const double n = std::sqrt(simd::norm2(view(amplitudes)));
  if (n <= kBranchTol) fail(Errc::ZeroBranch, "cannot normalize a zero vector");
  return StateVector(amplitudes / n, std::move(dims), std::move(relative_to));
}

StateVector StateVector::retagged(std::string observer) const {
  return StateVector(amplitudes_, dims_, std::move(observer));
}

double Ket::norm2() const { return simd::norm2(view(amplitudes_)); }

Operator::Operator(Mat matrix) : Operator(matrix, DimFactors{static_cast<std::size_t>(matrix.rows())}) {}

Operator::Operator(Mat matrix, DimFactors dims) : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  if (matrix_.rows() != matrix_.cols()) fail(Errc::DimensionMismatch, "operator matrix is not square");
  check_dims(dims_, dim());
  const auto n = matrix_.rows();
  hermitian_ = (matrix_ - matrix_.adjoint()).norm() < kTol;
  unitary_ = (matrix_.adjoint() * matrix_ - Mat::Identity(n, n)).norm() < kTol;
  projector_ = hermitian_ && (matrix_ * matrix_ - matrix_).norm() < kTol;
}

Operator Operator::identity(DimFactors dims) {
  const auto n = static_cast<Eigen::Index>(total_dim(dims));
  return Operator(Mat::Identity(n, n), std::move(dims));
}

Projector::Projector(Mat basis) : basis_(std::move(basis)) {
  const auto r = basis_.cols();
  if ((basis_.adjoint() * basis_ - Mat::Identity(r, r)).norm() > kTol) {
    fail(Errc::PreconditionViolated, "projector basis columns are not orthonormal");
  }
}

Projector Projector::zero(std::size_t dim) { return Projector(Mat(static_cast<Eigen::Index>(dim), 0)); }

Projector Projector::full(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return Projector(Mat::Identity(n, n));
}

Projector Projector::ray(const Vec& v) {
  const double n = v.norm();
  if (n <= kBranchTol) fail(Errc::ZeroBranch, "ray of a zero vector");
  return Projector(Mat(v / n));
}

Projector Projector::span(const Mat& vectors) {
  if (vectors.cols() == 0) return zero(static_cast<std::size_t>(vectors.rows()));
  Eigen::JacobiSVD<Mat> svd(vectors, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv[rank] > kRankTol) ++rank;
  return Projector(svd.matrixU().leftCols(rank));
}

Projector Projector::complement() const {
  const auto n = basis_.rows();
  const auto keep = n - basis_.cols();
  if (keep == 0) return zero(static_cast<std::size_t>(n));
  if (basis_.cols() == 0) return full(static_cast<std::size_t>(n));
  // I - P has eigenvalues 0 (rank times) and 1; ascending order puts the
  // complement's eigenvectors last.
  Eigen::SelfAdjointEigenSolver<Mat> eig(Mat::Identity(n, n) - matrix());
  return Projector(eig.eigenvectors().rightCols(keep));
}

double Projector::weight(const Vec& v) const {
  if (static_cast<std::size_t>(v.size()) != ambient_dim()) {
    fail(Errc::DimensionMismatch, "projector and vector dimensions differ");
  }
  double w = 0.0;
  for (Eigen::Index c = 0; c < basis_.cols(); ++c) w += std::norm(simd::cdot(column(basis_, c), view(v)));
  return w;
}

Vec Projector::apply(const Vec& v) const {
  if (static_cast<std::size_t>(v.size()) != ambient_dim()) {
    fail(Errc::DimensionMismatch, "projector and vector dimensions differ");
  }
  Vec coeffs(basis_.cols());
  for (Eigen::Index c = 0; c < basis_.cols(); ++c) coeffs[c] = simd::cdot(column(basis_, c), view(v));
  if (basis_.cols() == 0) return Vec::Zero(v.size());
  return matvec(basis_, coeffs);
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  if (a.relative_to() != b.relative_to()) {
    fail(Errc::PreconditionViolated,
         "tensor of descriptions relative to different observers (" + a.relative_to() + ", " + b.relative_to() + ")");
  }
  return StateVector(Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes()).eval(), concat(a.dims(), b.dims()),
                     a.relative_to());
}

Operator tensor(const Operator& a, const Operator& b) {
  return Operator(Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval(), concat(a.dims(), b.dims()));
}

Projector tensor(const Projector& a, const Projector& b) {
  return Projector(Eigen::kroneckerProduct(a.basis(), b.basis()).eval());
}

Projector embed(const Projector& local, const DimFactors& dims, std::size_t factor) {
  if (factor >= dims.size()) fail(Errc::IndexOutOfRange, "factor index out of range");
  if (local.ambient_dim() != dims[factor]) fail(Errc::DimensionMismatch, "local projector does not fit factor");
  std::size_t before = 1;
  std::size_t after = 1;
  for (std::size_t f = 0; f < factor; ++f) before *= dims[f];
  for (std::size_t f = factor + 1; f < dims.size(); ++f) after *= dims[f];
  return tensor(tensor(Projector::full(before), local), Projector::full(after));
}

Ket apply(const Operator& op, const StateVector& s) {
  if (op.dim() != s.dim()) fail(Errc::DimensionMismatch, "operator and state dimensions differ");
  Vec out = matvec(op.matrix(), s.amplitudes());
  if (op.is_unitary()) {
    const double n = std::sqrt(simd::norm2(view(out)));
    if (std::abs(n - 1.0) > kTol) fail(Errc::NotUnitary, "unitary changed the norm by more than tolerance");
    out /= n;
  }
  return Ket(std::move(out), s.dims(), s.relative_to());
}

std::vector<double> born_probabilities(const StateVector& s, std::span<const Projector> partition) {
  const auto n = static_cast<Eigen::Index>(s.dim());
  Mat sum = Mat::Zero(n, n);
  std::size_t rank = 0;
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (partition[i].ambient_dim() != s.dim()) fail(Errc::DimensionMismatch, "projector does not fit state");
    for (std::size_t j = i + 1; j < partition.size(); ++j) {
      if ((partition[i].basis().adjoint() * partition[j].basis()).norm() > kTol) {
        fail(Errc::NotAPartition, "projectors " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
      }
    }
    sum += partition[i].matrix();
    rank += partition[i].rank();
  }
  if (rank != s.dim() || (sum - Mat::Identity(n, n)).norm() > kTol) {
    fail(Errc::NotAPartition, "projectors do not sum to the identity");
  }
  std::vector<double> probs;
  probs.reserve(partition.size());
  for (const auto& p : partition) probs.push_back(p.weight(s.amplitudes()));
  return probs;
}

Sample sample_outcome(std::span<const double> probs, Rng& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t last_live = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last_live = i;
    cumulative += probs[i];
    if (u < cumulative) return {i, probs[i]};
  }
  // Rounding left u above the final cumulative sum.
  return {last_live, probs.empty() ? 0.0 : probs[last_live]};
}

Sample sample_outcome(std::span<const double> probs, std::uint64_t seed) {
  Rng rng(seed);
  return sample_outcome(probs, rng);
}

StateVector conditional_state(const StateVector& s, const Projector& p) {
  const Vec branch = p.apply(s.amplitudes());
  if (branch.norm() <= kBranchTol) fail(Errc::ZeroBranch, "conditioning on a branch of zero weight");
  return StateVector::normalized(branch, s.dims(), s.relative_to());
}

FactorSplit split_factors(const DimFactors& dims, std::span<const std::size_t> factors) {
  FactorSplit split;
  split.factors.assign(factors.begin(), factors.end());
  std::vector<bool> used(dims.size(), false);
  for (std::size_t f : factors) {
    if (f >= dims.size()) fail(Errc::IndexOutOfRange, "factor index out of range");
    if (used[f]) fail(Errc::PreconditionViolated, "factor listed twice");
    used[f] = true;
  }
  for (std::size_t f = 0; f < dims.size(); ++f) {
    if (!used[f]) split.rest.push_back(f);
  }
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t f = dims.size(); f-- > 1;) stride[f - 1] = stride[f] * dims[f];

  auto offsets = [&](const std::vector<std::size_t>& group) {
    std::vector<std::size_t> out{0};
    // Enumerate in row-major order over the group, first listed slowest.
    for (std::size_t f : group) {
      std::vector<std::size_t> next;
      next.reserve(out.size() * dims[f]);
      for (std::size_t base : out) {
        for (std::size_t d = 0; d < dims[f]; ++d) next.push_back(base + d * stride[f]);
      }
      out = std::move(next);
    }
    return out;
  };
  split.sub_offsets = offsets(split.factors);
  split.rest_offsets = offsets(split.rest);
  return split;
}

namespace {

Mat as_matrix(const StateVector& s, const FactorSplit& split) {
  Mat psi(split.sub_offsets.size(), split.rest_offsets.size());
  for (std::size_t r = 0; r < split.rest_offsets.size(); ++r) {
    for (std::size_t a = 0; a < split.sub_offsets.size(); ++a) {
      psi(a, r) = s[split.sub_offsets[a] + split.rest_offsets[r]];
    }
  }
  return psi;
}

Vec from_matrix(const Mat& psi, const FactorSplit& split, std::size_t n) {
  Vec out(static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < split.rest_offsets.size(); ++r) {
    for (std::size_t a = 0; a < split.sub_offsets.size(); ++a) {
      out[split.sub_offsets[a] + split.rest_offsets[r]] = psi(a, r);
    }
  }
  return out;
}

}  // namespace

StateVector apply_on_factors(const Operator& u, const StateVector& s, std::span<const std::size_t> factors) {
  if (!u.is_unitary()) fail(Errc::NotUnitary, "local evolution must be unitary");
  const FactorSplit split = split_factors(s.dims(), factors);
  if (u.dim() != split.sub_offsets.size()) fail(Errc::DimensionMismatch, "operator does not fit the factors");
  const Mat out = u.matrix() * as_matrix(s, split);
  return StateVector::normalized(from_matrix(out, split, s.dim()), s.dims(), s.relative_to());
}

double expectation_on_factors(const Operator& a, const StateVector& s, std::span<const std::size_t> factors) {
  const FactorSplit split = split_factors(s.dims(), factors);
  if (a.dim() != split.sub_offsets.size()) fail(Errc::DimensionMismatch, "operator does not fit the factors");
  const Mat psi = as_matrix(s, split);
  return (psi.adjoint() * a.matrix() * psi).trace().real();
}

std::vector<double> schmidt_coefficients(const StateVector& s, std::span<const std::size_t> factors) {
  const FactorSplit split = split_factors(s.dims(), factors);
  Eigen::JacobiSVD<Mat> svd(as_matrix(s, split));
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

std::optional<StateVector> pure_factor(const StateVector& s, std::span<const std::size_t> factors) {
  const FactorSplit split = split_factors(s.dims(), factors);
  DimFactors sub_dims;
  for (std::size_t f : split.factors) sub_dims.push_back(s.dims()[f]);
  const Mat psi = as_matrix(s, split);
  if (split.rest.empty()) return StateVector(canonical_phase(psi.col(0)), sub_dims, s.relative_to());
  Eigen::JacobiSVD<Mat> svd(psi, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() > 1 && sv[1] > kTol) return std::nullopt;
  return StateVector::normalized(canonical_phase(svd.matrixU().col(0)), sub_dims, s.relative_to());
}

Vec canonical_phase(const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v[i]);
    if (m > kBranchTol) return v * (std::conj(v[i]) / m);
  }
  return v;
}

}  // namespace relaqm
