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

// Time evolution U(t) = exp(-i t H) for a time-independent Hamiltonian
// (hbar = 1). Questions evolve by conjugation, states by U.

#include "relaqm/hilbert.hpp"
#include "relaqm/questions.hpp"

namespace relaqm {

class Propagator {
 public:
  const Operator& hamiltonian() const { return hamiltonian_; }
  double duration() const { return duration_; }
  const Operator& unitary() const { return unitary_; }

 private:
  friend Propagator propagator(const Operator& hamiltonian, double t);
  Propagator(Operator h, double t, Operator u) : hamiltonian_(std::move(h)), duration_(t), unitary_(std::move(u)) {}

  Operator hamiltonian_;
  double duration_;
  Operator unitary_;
};

// Via the Hermitian eigendecomposition H = V diag(E) V^dagger. NotHermitian
// if H is not.
Propagator propagator(const Operator& hamiltonian, double t);

// Heisenberg picture: Q -> U Q U^-1, i.e. basis B -> U B.
Question heisenberg_evolve(const Question& q, const Propagator& prop);

// Schrodinger picture: s -> U s.
StateVector schrodinger_evolve(const StateVector& s, const Propagator& prop);

// U A U^dagger.
Operator conjugate(const Operator& a, const Propagator& prop);

}  // namespace relaqm
