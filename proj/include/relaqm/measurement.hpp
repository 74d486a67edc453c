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

// The measurement chain: system S with observable q (nondegenerate eigenbasis),
// observer O with a pointer. O's account of the interaction is a collapse onto
// an eigenvector of q; an external observer P who has not interacted with S-O
// accounts for the same events as a unitary premeasurement that correlates q
// with the pointer.

#include <cstdint>
#include <string>
#include <vector>

#include "relaqm/hilbert.hpp"
#include "relaqm/questions.hpp"

namespace relaqm {

class MeasurementSetup {
 public:
  // pointer_marks must be orthonormal, one per system basis vector, and fit
  // in the pointer space.
  MeasurementSetup(CompleteFamily system_basis, Vec pointer_ready, std::vector<Vec> pointer_marks,
                   std::string observer = "O");

  // Ready state |0>, marks |0>, |1>, ... of the pointer's computational basis.
  static MeasurementSetup standard(CompleteFamily system_basis, std::size_t pointer_dim, std::string observer = "O");

  const CompleteFamily& system_basis() const { return system_basis_; }
  const Vec& pointer_ready() const { return pointer_ready_; }
  const std::vector<Vec>& pointer_marks() const { return pointer_marks_; }
  const std::string& observer() const { return observer_; }
  std::size_t system_dim() const { return system_basis_.dim(); }
  std::size_t pointer_dim() const { return static_cast<std::size_t>(pointer_ready_.size()); }
  DimFactors joint_dims() const { return {system_dim(), pointer_dim()}; }

 private:
  CompleteFamily system_basis_;
  Vec pointer_ready_;
  std::vector<Vec> pointer_marks_;
  std::string observer_;
};

struct CollapseResult {
  int outcome;  // 1-based basis index
  std::vector<double> probabilities;
  StateVector post_state;  // relative to the measuring observer
};

// Account relative to the measuring observer: Born-sample the outcome and
// jump to the matching eigenvector.
CollapseResult collapse_description(const MeasurementSetup& setup, const StateVector& psi, std::uint64_t seed);
// Same, with the outcome given instead of sampled. ZeroBranch if it has no weight.
CollapseResult collapse_to(const MeasurementSetup& setup, const StateVector& psi, int outcome);

// Account relative to an external observer: sum_i a_i |i> (x) |O_i>, keeping
// psi's tag.
StateVector entangling_description(const MeasurementSetup& setup, const StateVector& psi);

// Unitary on H_S (x) H_O with |i>|ready> -> |i>|O_i>, completed on the
// complement by Gram-Schmidt extension of both bases paired in order.
Operator premeasurement_unitary(const MeasurementSetup& setup);

// M = sum_i |i><i| (x) |O_i><O_i|: "is the pointer correctly correlated to q?"
Operator correlation_operator(const MeasurementSetup& setup);
Projector correlation_projector(const MeasurementSetup& setup);

// <state|M|state>.
double completion_probability(const StateVector& state, const MeasurementSetup& setup);

struct ConsistencyResult {
  bool agree;
  int q_outcome;        // 1-based
  int pointer_outcome;  // 1-based; 0 when the pointer sits on no mark
  std::string transcript;
};

// The external observer measures q, then the pointer on the collapsed state,
// and compares.
ConsistencyResult consistency_check(const StateVector& state, const MeasurementSetup& setup, std::uint64_t seed);

// q-marginal of a joint S-O state in the setup's system basis.
std::vector<double> q_marginal(const StateVector& joint, const MeasurementSetup& setup);

}  // namespace relaqm
