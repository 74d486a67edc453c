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

// Finite-dimensional Hilbert-space numerics. Composite spaces use the
// row-major tensor convention: the first factor is the slowest index.

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relaqm/rng.hpp"

namespace relaqm {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using DimFactors = std::vector<std::size_t>;

// Structural checks (norms, unitarity, projector laws).
inline constexpr double kTol = 1e-9;
// Acceptance threshold for optimizer outputs.
inline constexpr double kOptTol = 1e-6;
// Singular values at or below this are treated as zero when taking spans.
inline constexpr double kRankTol = 1e-7;
// Branches with norm at or below this have no conditional state.
inline constexpr double kBranchTol = 1e-12;

std::size_t total_dim(const DimFactors& dims);

// Normalized amplitude vector, always tagged with the observer relative to
// whom it is a description.
class StateVector {
 public:
  StateVector(Vec amplitudes, DimFactors dims, std::string relative_to);
  StateVector(Vec amplitudes, std::string relative_to);

  static StateVector basis(std::size_t dim, std::size_t index, std::string relative_to);
  // Rescales to unit norm; ZeroBranch for a (numerically) zero vector.
  static StateVector normalized(Vec amplitudes, DimFactors dims, std::string relative_to);

  const Vec& amplitudes() const { return amplitudes_; }
  const DimFactors& dims() const { return dims_; }
  const std::string& relative_to() const { return relative_to_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  cplx operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

  StateVector retagged(std::string observer) const;

 private:
  Vec amplitudes_;
  DimFactors dims_;
  std::string relative_to_;
};

// Unnormalized tagged vector, the result of applying a non-unitary operator.
class Ket {
 public:
  Ket(Vec amplitudes, DimFactors dims, std::string relative_to)
      : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)), relative_to_(std::move(relative_to)) {}

  const Vec& amplitudes() const { return amplitudes_; }
  const DimFactors& dims() const { return dims_; }
  const std::string& relative_to() const { return relative_to_; }
  double norm2() const;
  StateVector normalized() const { return StateVector::normalized(amplitudes_, dims_, relative_to_); }

 private:
  Vec amplitudes_;
  DimFactors dims_;
  std::string relative_to_;
};

// Square matrix with verified (never trusted) structural flags.
class Operator {
 public:
  explicit Operator(Mat matrix);
  Operator(Mat matrix, DimFactors dims);

  static Operator identity(DimFactors dims);

  const Mat& matrix() const { return matrix_; }
  const DimFactors& dims() const { return dims_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  bool is_hermitian() const { return hermitian_; }
  bool is_unitary() const { return unitary_; }
  bool is_projector() const { return projector_; }

 private:
  Mat matrix_;
  DimFactors dims_;
  bool hermitian_ = false;
  bool unitary_ = false;
  bool projector_ = false;
};

// Orthogonal projector stored as a set of orthonormal basis columns; the
// matrix form B * B^dagger is derived on demand.
class Projector {
 public:
  // `basis` must have orthonormal columns (possibly zero of them).
  explicit Projector(Mat basis);

  static Projector zero(std::size_t dim);
  static Projector full(std::size_t dim);
  static Projector ray(const Vec& v);
  // Orthonormalized span of the columns, rank by singular-value threshold.
  static Projector span(const Mat& vectors);

  const Mat& basis() const { return basis_; }
  std::size_t rank() const { return static_cast<std::size_t>(basis_.cols()); }
  std::size_t ambient_dim() const { return static_cast<std::size_t>(basis_.rows()); }

  Mat matrix() const { return basis_ * basis_.adjoint(); }
  Operator as_operator() const { return Operator(matrix()); }
  Operator as_operator(DimFactors dims) const { return Operator(matrix(), std::move(dims)); }
  Projector complement() const;

  // ||P v||^2, computed as ||B^dagger v||^2.
  double weight(const Vec& v) const;
  Vec apply(const Vec& v) const;

 private:
  Mat basis_;
};

StateVector tensor(const StateVector& a, const StateVector& b);
Operator tensor(const Operator& a, const Operator& b);
Projector tensor(const Projector& a, const Projector& b);

// `local` acting on factor `factor` of `dims`, identity elsewhere.
Projector embed(const Projector& local, const DimFactors& dims, std::size_t factor);

// Matrix-vector product. Unitary-flagged operators return a renormalized
// vector (after asserting the norm moved by less than kTol); anything else
// returns the raw product.
Ket apply(const Operator& op, const StateVector& s);

// p_i = ||P_i s||^2 over a partition of unity into orthogonal projectors.
std::vector<double> born_probabilities(const StateVector& s, std::span<const Projector> partition);

struct Sample {
  std::size_t index;
  double probability;
};

Sample sample_outcome(std::span<const double> probs, Rng& rng);
Sample sample_outcome(std::span<const double> probs, std::uint64_t seed);

// P s / ||P s||, keeping the observer tag.
StateVector conditional_state(const StateVector& s, const Projector& p);

// Index bookkeeping for operating on a subset of tensor factors. Global index
// of (sub a, rest r) is sub_offsets[a] + rest_offsets[r].
struct FactorSplit {
  std::vector<std::size_t> factors;
  std::vector<std::size_t> rest;
  std::vector<std::size_t> sub_offsets;
  std::vector<std::size_t> rest_offsets;
};

FactorSplit split_factors(const DimFactors& dims, std::span<const std::size_t> factors);

// Applies a unitary on the listed factors (in the listed order).
StateVector apply_on_factors(const Operator& u, const StateVector& s, std::span<const std::size_t> factors);

// <s| A_factors (x) I |s>, real part.
double expectation_on_factors(const Operator& a, const StateVector& s, std::span<const std::size_t> factors);

// Schmidt coefficients across the cut (factors | rest), descending.
std::vector<double> schmidt_coefficients(const StateVector& s, std::span<const std::size_t> factors);

// The pure state of the listed factors when the description factorizes across
// the cut (second Schmidt coefficient below kTol); nullopt otherwise.
std::optional<StateVector> pure_factor(const StateVector& s, std::span<const std::size_t> factors);

// Removes the global phase: first component with modulus above kBranchTol
// becomes real positive.
Vec canonical_phase(const Vec& v);

}  // namespace relaqm
