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

#include "relaqm/dynamics.hpp"

#include "relaqm/errors.hpp"

namespace relaqm {

Propagator propagator(const Operator& hamiltonian, double t) {
  if (!hamiltonian.is_hermitian()) fail(Errc::NotHermitian, "Hamiltonian is not Hermitian");
  const Mat& h = hamiltonian.matrix();
  Eigen::SelfAdjointEigenSolver<Mat> eig((h + h.adjoint()) / 2.0);
  const Eigen::VectorXd& energies = eig.eigenvalues();
  Vec phases(energies.size());
  for (Eigen::Index i = 0; i < energies.size(); ++i) phases[i] = std::polar(1.0, -t * energies[i]);
  const Mat& v = eig.eigenvectors();
  Operator u(v * phases.asDiagonal() * v.adjoint(), hamiltonian.dims());
  if (!u.is_unitary()) fail(Errc::NotUnitary, "propagator lost unitarity");
  return Propagator(hamiltonian, t, std::move(u));
}

Question heisenberg_evolve(const Question& q, const Propagator& prop) {
  if (q.ambient_dim() != prop.unitary().dim()) fail(Errc::DimensionMismatch, "question does not fit propagator");
  return Question(Projector(prop.unitary().matrix() * q.basis()));
}

StateVector schrodinger_evolve(const StateVector& s, const Propagator& prop) {
  if (s.dim() != prop.unitary().dim()) fail(Errc::DimensionMismatch, "state does not fit propagator");
  return apply(prop.unitary(), s).normalized();
}

Operator conjugate(const Operator& a, const Propagator& prop) {
  if (a.dim() != prop.unitary().dim()) fail(Errc::DimensionMismatch, "operator does not fit propagator");
  const Mat& u = prop.unitary().matrix();
  return Operator(u * a.matrix() * u.adjoint(), a.dims());
}

}  // namespace relaqm
