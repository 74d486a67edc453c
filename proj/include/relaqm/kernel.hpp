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

// Transition probabilities between complete question families, composite
// questions and their interference, composition of kernels, and the numerical
// search for a unitary realizing a given doubly stochastic matrix.

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relaqm/hilbert.hpp"
#include "relaqm/questions.hpp"

namespace relaqm {

using RealMat = Eigen::MatrixXd;

// p(i, j) = probability of a yes to atom j of `to` given a yes to atom i of
// `from`; when present, U(i, j) = <from_i|to_j> with p = |U|^2.
class TransitionKernel {
 public:
  TransitionKernel(RealMat p, std::optional<Mat> unitary, std::string from, std::string to);

  const RealMat& p() const { return p_; }
  bool has_unitary() const { return unitary_.has_value(); }
  // MissingUnitary for probability-only kernels.
  const Mat& unitary() const;
  const std::string& from() const { return from_; }
  const std::string& to() const { return to_; }
  std::size_t dim() const { return static_cast<std::size_t>(p_.rows()); }

 private:
  RealMat p_;
  std::optional<Mat> unitary_;
  std::string from_;
  std::string to_;
};

// U = B^dagger C, p = |U|^2.
TransitionKernel kernel_from_families(const CompleteFamily& from, const CompleteFamily& to);

struct StochasticReport {
  double range_violation = 0.0;       // max distance of an entry outside [0, 1]
  double column_sum_violation = 0.0;  // max_j |sum_i p(i, j) - 1|
  double row_sum_violation = 0.0;     // max_i |sum_j p(i, j) - 1|
  double max_violation() const;
  bool ok(double tol = kTol) const { return max_violation() <= tol; }
};

StochasticReport verify_double_stochastic(const RealMat& p);

// Probability that a yes to from_i, then a yes to (to_j or to_k), is followed
// by a yes to from_i again: |U(i,j) V(j,i) + U(i,k) V(k,i)|^2 where V = U^-1
// carries the reverse transitions (indices 0-based).
double composite_probability(const Mat& u, std::size_t i, std::size_t j, std::size_t k);

// The incoherent value p(i,j)^2 + p(i,k)^2.
double classical_composite_probability(const RealMat& p, std::size_t i, std::size_t j, std::size_t k);

struct Interference {
  double composite;
  double classical;
  double gap() const { return composite - classical; }
};

Interference interference(const TransitionKernel& k, std::size_t i, std::size_t j, std::size_t l);

// first: to <- middle, second: middle <- from, in the sense that
// compose(kernel(c, b), kernel(b, d)) == kernel(c, d).
TransitionKernel compose(const TransitionKernel& first, const TransitionKernel& second);

struct UnistochasticOptions {
  std::size_t starts = 64;
  std::size_t max_iters = 500;
  std::uint64_t seed = 0;
  double accept_tol = kOptTol;  // residual below this: unistochastic
  double stall_tol = 1e-2;      // all starts above this: not unistochastic
};

struct UnistochasticResult {
  Mat unitary;        // best start, phase-fixed
  double residual;    // || |U|^2 - p ||_F of the best start
  std::size_t best_start;
  std::vector<double> start_residuals;
  bool unistochastic;  // residual < accept_tol
  bool all_stalled;    // every start ended above stall_tol
};

// Alternating projections between the unitary group (polar factor) and the
// set of matrices with moduli sqrt(p), multi-started from seeded random
// phases. Ties go to the lowest start index.
UnistochasticResult unistochastic_search(const RealMat& p, const UnistochasticOptions& options = {});

// Necessary and sufficient test for 3x3 doubly stochastic matrices: for each
// pair of rows (and of columns) the products sqrt(p_aj p_bj) must close a
// triangle.
bool unistochastic_triangle_criterion(const RealMat& p, double tol = kTol);

// Rephases rows and columns so the first row and first column are real and
// non-negative where nonzero; |U|^2 is unchanged.
Mat phase_fix(const Mat& u);

}  // namespace relaqm
