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

#include <cmath>
#include <sstream>
#include <unsupported/Eigen/KroneckerProduct>

#include "relaqm/errors.hpp"

namespace relaqm {
namespace {

// Completes an orthonormal list to a basis of C^n by Gram-Schmidt over the
// standard basis vectors, taken in order.
std::vector<Vec> extend_to_basis(std::vector<Vec> vectors, std::size_t n) {
  for (std::size_t e = 0; e < n && vectors.size() < n; ++e) {
    Vec candidate = Vec::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(e));
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vec& v : vectors) candidate -= v * v.dot(candidate);
    }
    const double norm = candidate.norm();
    if (norm > kRankTol) vectors.push_back(candidate / norm);
  }
  return vectors;
}

Vec joint_vector(const MeasurementSetup& setup, std::size_t i, const Vec& pointer) {
  return Eigen::kroneckerProduct(setup.system_basis().vector(i), pointer).eval();
}

std::vector<Projector> q_partition(const MeasurementSetup& setup) {
  std::vector<Projector> out;
  for (std::size_t i = 0; i < setup.system_dim(); ++i) {
    out.push_back(tensor(Projector(Mat(setup.system_basis().vector(i))), Projector::full(setup.pointer_dim())));
  }
  return out;
}

// Pointer marks, plus the "no mark" remainder when the pointer is larger than
// the system.
std::vector<Projector> pointer_partition(const MeasurementSetup& setup) {
  const std::size_t kp = setup.pointer_dim();
  std::vector<Projector> out;
  Mat marks(static_cast<Eigen::Index>(kp), static_cast<Eigen::Index>(setup.pointer_marks().size()));
  for (std::size_t j = 0; j < setup.pointer_marks().size(); ++j) {
    marks.col(static_cast<Eigen::Index>(j)) = setup.pointer_marks()[j];
    out.push_back(tensor(Projector::full(setup.system_dim()), Projector(Mat(setup.pointer_marks()[j]))));
  }
  const Projector rest = Projector(marks).complement();
  if (rest.rank() > 0) out.push_back(tensor(Projector::full(setup.system_dim()), rest));
  return out;
}

void require_joint(const StateVector& s, const MeasurementSetup& setup) {
  if (s.dim() != setup.system_dim() * setup.pointer_dim()) {
    fail(Errc::DimensionMismatch, "state does not live on H_S (x) H_O");
  }
}

void require_system(const StateVector& psi, const MeasurementSetup& setup) {
  if (psi.dim() != setup.system_dim()) fail(Errc::DimensionMismatch, "state does not live on H_S");
}

}  // namespace

MeasurementSetup::MeasurementSetup(CompleteFamily system_basis, Vec pointer_ready, std::vector<Vec> pointer_marks,
                                   std::string observer)
    : system_basis_(std::move(system_basis)),
      pointer_ready_(std::move(pointer_ready)),
      pointer_marks_(std::move(pointer_marks)),
      observer_(std::move(observer)) {
  if (pointer_marks_.size() != system_basis_.dim()) {
    fail(Errc::DimensionMismatch, "need exactly one pointer mark per system basis vector");
  }
  if (pointer_dim() < system_dim()) fail(Errc::DimensionMismatch, "pointer space smaller than system space");
  if (std::abs(pointer_ready_.norm() - 1.0) > kTol) fail(Errc::NotNormalized, "pointer ready state not normalized");
  for (std::size_t i = 0; i < pointer_marks_.size(); ++i) {
    if (static_cast<std::size_t>(pointer_marks_[i].size()) != pointer_dim()) {
      fail(Errc::DimensionMismatch, "pointer mark does not fit the pointer space");
    }
    for (std::size_t j = 0; j <= i; ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(pointer_marks_[i].dot(pointer_marks_[j]) - expected) > kTol) {
        fail(Errc::PreconditionViolated, "pointer marks are not orthonormal");
      }
    }
  }
}

MeasurementSetup MeasurementSetup::standard(CompleteFamily system_basis, std::size_t pointer_dim,
                                            std::string observer) {
  const auto n = static_cast<Eigen::Index>(pointer_dim);
  std::vector<Vec> marks;
  for (std::size_t i = 0; i < system_basis.dim(); ++i) {
    if (i >= pointer_dim) fail(Errc::DimensionMismatch, "pointer space smaller than system space");
    marks.push_back(Vec::Unit(n, static_cast<Eigen::Index>(i)));
  }
  return MeasurementSetup(std::move(system_basis), Vec::Unit(n, 0), std::move(marks), std::move(observer));
}

CollapseResult collapse_description(const MeasurementSetup& setup, const StateVector& psi, std::uint64_t seed) {
  require_system(psi, setup);
  std::vector<double> probs = born_probabilities(psi, partition(setup.system_basis()));
  const Sample s = sample_outcome(probs, seed);
  return CollapseResult{static_cast<int>(s.index) + 1, std::move(probs),
                        StateVector(setup.system_basis().vector(s.index), psi.dims(), setup.observer())};
}

CollapseResult collapse_to(const MeasurementSetup& setup, const StateVector& psi, int outcome) {
  require_system(psi, setup);
  if (outcome < 1 || static_cast<std::size_t>(outcome) > setup.system_dim()) {
    fail(Errc::IndexOutOfRange, "outcome " + std::to_string(outcome) + " out of range");
  }
  std::vector<double> probs = born_probabilities(psi, partition(setup.system_basis()));
  const auto i = static_cast<std::size_t>(outcome - 1);
  if (std::sqrt(probs[i]) <= kBranchTol) fail(Errc::ZeroBranch, "forced outcome has zero weight");
  return CollapseResult{outcome, std::move(probs),
                        StateVector(setup.system_basis().vector(i), psi.dims(), setup.observer())};
}

StateVector entangling_description(const MeasurementSetup& setup, const StateVector& psi) {
  require_system(psi, setup);
  Vec out = Vec::Zero(static_cast<Eigen::Index>(setup.system_dim() * setup.pointer_dim()));
  for (std::size_t i = 0; i < setup.system_dim(); ++i) {
    const cplx amplitude = setup.system_basis().vector(i).dot(psi.amplitudes());
    out += amplitude * joint_vector(setup, i, setup.pointer_marks()[i]);
  }
  return StateVector(std::move(out), setup.joint_dims(), psi.relative_to());
}

Operator premeasurement_unitary(const MeasurementSetup& setup) {
  const std::size_t n = setup.system_dim() * setup.pointer_dim();
  std::vector<Vec> domain;
  std::vector<Vec> image;
  for (std::size_t i = 0; i < setup.system_dim(); ++i) {
    domain.push_back(joint_vector(setup, i, setup.pointer_ready()));
    image.push_back(joint_vector(setup, i, setup.pointer_marks()[i]));
  }
  domain = extend_to_basis(std::move(domain), n);
  image = extend_to_basis(std::move(image), n);
  Mat u = Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t m = 0; m < n; ++m) u += image[m] * domain[m].adjoint();
  Operator op(std::move(u), setup.joint_dims());
  if (!op.is_unitary()) fail(Errc::NotUnitary, "premeasurement completion is not unitary");
  return op;
}

Projector correlation_projector(const MeasurementSetup& setup) {
  Mat cols(static_cast<Eigen::Index>(setup.system_dim() * setup.pointer_dim()),
           static_cast<Eigen::Index>(setup.system_dim()));
  for (std::size_t i = 0; i < setup.system_dim(); ++i) {
    cols.col(static_cast<Eigen::Index>(i)) = joint_vector(setup, i, setup.pointer_marks()[i]);
  }
  return Projector(std::move(cols));
}

Operator correlation_operator(const MeasurementSetup& setup) {
  return correlation_projector(setup).as_operator(setup.joint_dims());
}

double completion_probability(const StateVector& state, const MeasurementSetup& setup) {
  require_joint(state, setup);
  return correlation_projector(setup).weight(state.amplitudes());
}

std::vector<double> q_marginal(const StateVector& joint, const MeasurementSetup& setup) {
  require_joint(joint, setup);
  return born_probabilities(joint, q_partition(setup));
}

ConsistencyResult consistency_check(const StateVector& state, const MeasurementSetup& setup, std::uint64_t seed) {
  require_joint(state, setup);
  Rng rng(seed);
  const std::vector<Projector> q_parts = q_partition(setup);
  const std::vector<double> q_probs = born_probabilities(state, q_parts);
  const Sample q = sample_outcome(q_probs, rng);
  const StateVector collapsed = conditional_state(state, q_parts[q.index]);

  const std::vector<Projector> p_parts = pointer_partition(setup);
  const std::vector<double> p_probs = born_probabilities(collapsed, p_parts);
  const Sample pointer = sample_outcome(p_probs, rng);
  const int pointer_outcome = pointer.index < setup.pointer_marks().size() ? static_cast<int>(pointer.index) + 1 : 0;

  ConsistencyResult result{pointer_outcome == static_cast<int>(q.index) + 1, static_cast<int>(q.index) + 1,
                           pointer_outcome, {}};
  std::ostringstream log;
  log << state.relative_to() << " measures q: " << result.q_outcome << " (p=" << q.probability << "); "
      << state.relative_to() << " measures pointer: ";
  if (pointer_outcome == 0) {
    log << "none";
  } else {
    log << pointer_outcome;
  }
  log << " (p=" << pointer.probability << "); " << (result.agree ? "agree" : "disagree");
  result.transcript = log.str();
  return result;
}

}  // namespace relaqm
