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

#include "relaqm/questions.hpp"

#include <cmath>
#include <numbers>
#include <bit>

#include "relaqm/errors.hpp"

namespace relaqm {
namespace {

void same_ambient(const Question& a, const Question& b) {
  if (a.ambient_dim() != b.ambient_dim()) fail(Errc::DimensionMismatch, "questions live in different spaces");
}

// Probabilities this close to 0 or 1 are treated as certain, so that
// conditioning never lands on a branch of round-off weight.
constexpr double kCertain = 1e-12;

double snap(double p) {
  if (p < kCertain) return 0.0;
  if (p > 1.0 - kCertain) return 1.0;
  return p;
}

}  // namespace

bool implies(const Question& a, const Question& b, double tol) {
  same_ambient(a, b);
  if (a.is_never()) return true;
  if (b.is_never()) return false;
  const Mat residual = a.basis() - b.basis() * (b.basis().adjoint() * a.basis());
  return residual.norm() < tol;
}

bool equivalent(const Question& a, const Question& b, double tol) {
  return a.rank() == b.rank() && implies(a, b, tol) && implies(b, a, tol);
}

Question join(const Question& a, const Question& b) {
  same_ambient(a, b);
  Mat both(a.ambient_dim(), a.rank() + b.rank());
  both << a.basis(), b.basis();
  return Question::span(both);
}

Question meet(const Question& a, const Question& b) { return negate(join(negate(a), negate(b))); }

Question negate(const Question& q) { return Question(q.subspace().complement()); }

bool orthogonal(const Question& a, const Question& b) { return implies(a, negate(b)); }

bool orthomodular_check(const Question& q1, const Question& q2) {
  if (!implies(q1, q2)) fail(Errc::PreconditionViolated, "orthomodular check needs q1 => q2");
  const Question rebuilt = join(q1, meet(q2, negate(q1)));
  return rebuilt.rank() == q2.rank() && equivalent(rebuilt, q2);
}

int info_capacity(long dim) {
  if (dim < 2) fail(Errc::InvalidDimension, "information capacity needs dim >= 2");
  int n = 0;
  while ((1L << n) < dim) ++n;
  return n;
}

CompleteFamily::CompleteFamily(Mat basis, std::string label) : basis_(std::move(basis)), label_(std::move(label)) {
  if (basis_.rows() != basis_.cols() || basis_.rows() == 0) {
    fail(Errc::DimensionMismatch, "family basis must be a non-empty square matrix");
  }
  const auto n = basis_.rows();
  if ((basis_.adjoint() * basis_ - Mat::Identity(n, n)).norm() > kTol) {
    fail(Errc::NotUnitary, "family '" + label_ + "' is not an orthonormal basis");
  }
}

CompleteFamily CompleteFamily::computational(std::size_t dim, std::string label) {
  const auto n = static_cast<Eigen::Index>(dim);
  return CompleteFamily(Mat::Identity(n, n), std::move(label));
}

CompleteFamily CompleteFamily::fourier(std::size_t dim, std::string label) {
  const auto n = static_cast<Eigen::Index>(dim);
  Mat f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((r * c) % n) / static_cast<double>(n);
      double re = std::cos(angle);
      double im = std::sin(angle);
      if (std::abs(re) < 1e-15) re = 0.0;
      if (std::abs(im) < 1e-15) im = 0.0;
      f(r, c) = cplx(re, im) * scale;
    }
  }
  return CompleteFamily(std::move(f), std::move(label));
}

std::vector<Question> complete_questions(const CompleteFamily& f) {
  std::vector<Question> atoms;
  atoms.reserve(f.dim());
  for (std::size_t i = 0; i < f.dim(); ++i) atoms.emplace_back(Projector(Mat(f.vector(i))));
  return atoms;
}

std::vector<Projector> partition(const CompleteFamily& f) {
  std::vector<Projector> out;
  out.reserve(f.dim());
  for (std::size_t i = 0; i < f.dim(); ++i) out.emplace_back(Mat(f.vector(i)));
  return out;
}

std::vector<Question> boolean_algebra(const CompleteFamily& f) {
  const std::size_t k = f.dim();
  if (k > kMaxAlgebraDim) {
    fail(Errc::TooLarge, "Boolean algebra of a dim-" + std::to_string(k) + " family is too large to enumerate");
  }
  std::vector<Question> elements;
  elements.reserve(std::size_t{1} << k);
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Mat cols(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(std::popcount(mask)));
    Eigen::Index c = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::size_t{1} << i)) cols.col(c++) = f.vector(i);
    }
    elements.emplace_back(Projector(std::move(cols)));
  }
  return elements;
}

std::vector<std::uint8_t> atom_code(std::size_t index, std::size_t dim) {
  const int n = info_capacity(static_cast<long>(dim));
  if (index >= (std::size_t{1} << n)) fail(Errc::IndexOutOfRange, "code index exceeds 2^N");
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
  for (int b = 0; b < n; ++b) bits[static_cast<std::size_t>(b)] = (index >> (n - 1 - b)) & 1U;
  return bits;
}

std::vector<std::vector<std::uint8_t>> unreachable_codes(std::size_t dim) {
  const int n = info_capacity(static_cast<long>(dim));
  std::vector<std::vector<std::uint8_t>> out;
  for (std::size_t i = dim; i < (std::size_t{1} << n); ++i) out.push_back(atom_code(i, dim));
  return out;
}

double yes_probability(const StateVector& state, const Question& q) {
  if (q.ambient_dim() != state.dim()) fail(Errc::DimensionMismatch, "question does not fit state");
  return q.subspace().weight(state.amplitudes());
}

AskResult ask_sequence(const StateVector& state, std::span<const Question> questions, Rng& rng) {
  AskResult result{AnswerString{}, state};
  for (const Question& q : questions) {
    const double yes = snap(yes_probability(result.final_state, q));
    const double probs[2] = {1.0 - yes, yes};
    const std::size_t bit = sample_outcome(probs, rng).index;
    result.answers.bits.push_back(static_cast<std::uint8_t>(bit));
    const Projector branch = bit == 1 ? q.subspace() : q.subspace().complement();
    result.final_state = conditional_state(result.final_state, branch);
  }
  return result;
}

AskResult ask_sequence(const StateVector& state, std::span<const Question> questions, std::uint64_t seed) {
  Rng rng(seed);
  return ask_sequence(state, questions, rng);
}

AskResult ask_family(const StateVector& state, const CompleteFamily& f, std::uint64_t seed) {
  const std::vector<Question> atoms = complete_questions(f);
  AskResult result = ask_sequence(state, atoms, seed);
  result.answers.family = f.label();
  return result;
}

std::vector<bool> relevant_bits(const StateVector& state, std::span<const Question> questions,
                                std::span<const std::uint8_t> answers) {
  if (answers.size() != questions.size()) fail(Errc::DimensionMismatch, "one answer per question required");
  std::vector<bool> relevant;
  StateVector current = state;
  for (std::size_t i = 0; i < questions.size(); ++i) {
    const double yes = snap(yes_probability(current, questions[i]));
    relevant.push_back(yes > kTol && yes < 1.0 - kTol);
    const bool said_yes = answers[i] != 0;
    if ((said_yes && yes == 0.0) || (!said_yes && yes == 1.0)) {
      fail(Errc::PreconditionViolated, "answer " + std::to_string(i) + " has zero probability");
    }
    current = conditional_state(current, said_yes ? questions[i].subspace() : questions[i].subspace().complement());
  }
  return relevant;
}

}  // namespace relaqm
