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

// Yes/no questions as closed subspaces, their orthomodular lattice, complete
// question families and the Boolean algebras they generate.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "relaqm/hilbert.hpp"

namespace relaqm {

class Question {
 public:
  explicit Question(Projector subspace) : subspace_(std::move(subspace)) {}

  static Question never(std::size_t dim) { return Question(Projector::zero(dim)); }   // Q0
  static Question always(std::size_t dim) { return Question(Projector::full(dim)); }  // Q_inf
  static Question ray(const Vec& v) { return Question(Projector::ray(v)); }
  static Question span(const Mat& vectors) { return Question(Projector::span(vectors)); }

  const Projector& subspace() const { return subspace_; }
  const Mat& basis() const { return subspace_.basis(); }
  std::size_t rank() const { return subspace_.rank(); }
  std::size_t ambient_dim() const { return subspace_.ambient_dim(); }
  bool is_never() const { return rank() == 0; }
  bool is_always() const { return rank() == ambient_dim(); }

 private:
  Projector subspace_;
};

bool implies(const Question& a, const Question& b, double tol = kTol);
// Subspace equality (mutual implication), never basis equality.
bool equivalent(const Question& a, const Question& b, double tol = kTol);
Question join(const Question& a, const Question& b);
// Computed as not(not a or not b).
Question meet(const Question& a, const Question& b);
Question negate(const Question& q);
bool orthogonal(const Question& a, const Question& b);

// q2 == q1 or (q2 and not q1), given q1 implies q2. PreconditionViolated
// otherwise.
bool orthomodular_check(const Question& q1, const Question& q2);

// Smallest N with 2^N >= dim.
int info_capacity(long dim);

class CompleteFamily {
 public:
  // Columns of `basis` are the family's vectors; must form a unitary matrix.
  CompleteFamily(Mat basis, std::string label);

  static CompleteFamily computational(std::size_t dim, std::string label = "computational");
  // Discrete Fourier basis; the Hadamard basis for dim 2.
  static CompleteFamily fourier(std::size_t dim, std::string label = "fourier");

  const Mat& basis() const { return basis_; }
  const std::string& label() const { return label_; }
  std::size_t dim() const { return static_cast<std::size_t>(basis_.cols()); }
  Vec vector(std::size_t i) const { return basis_.col(static_cast<Eigen::Index>(i)); }

 private:
  Mat basis_;
  std::string label_;
};

// The rank-1 atoms, one per basis vector.
std::vector<Question> complete_questions(const CompleteFamily& f);
std::vector<Projector> partition(const CompleteFamily& f);

inline constexpr std::size_t kMaxAlgebraDim = 10;

// All joins of atom subsets; element m contains atom i iff bit i of m is set.
std::vector<Question> boolean_algebra(const CompleteFamily& f);

// N-bit encoding of atom `index` (most significant bit first). For dim not a
// power of two the patterns at or above dim are unreachable.
std::vector<std::uint8_t> atom_code(std::size_t index, std::size_t dim);
std::vector<std::vector<std::uint8_t>> unreachable_codes(std::size_t dim);

struct AnswerString {
  std::vector<std::uint8_t> bits;
  std::string family;  // empty for ad-hoc question lists
};

struct AskResult {
  AnswerString answers;
  StateVector final_state;
};

// Asks each question in turn: Born-samples yes (P) or no (I - P) and
// conditions on the answer.
AskResult ask_sequence(const StateVector& state, std::span<const Question> questions, Rng& rng);
AskResult ask_sequence(const StateVector& state, std::span<const Question> questions, std::uint64_t seed);
AskResult ask_family(const StateVector& state, const CompleteFamily& f, std::uint64_t seed);

// Probability of "yes" for `q` on `state`.
double yes_probability(const StateVector& state, const Question& q);

// A bit is relevant iff its question was not already determined (probability
// strictly between 0 and 1, exact Born computation) given the preceding
// answers. `answers` must be realizable.
std::vector<bool> relevant_bits(const StateVector& state, std::span<const Question> questions,
                                std::span<const std::uint8_t> answers);

}  // namespace relaqm
