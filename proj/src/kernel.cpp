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

#include "relaqm/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "relaqm/errors.hpp"

namespace relaqm {
namespace {

RealMat moduli_squared(const Mat& u) { return u.cwiseAbs2(); }

bool is_unitary(const Mat& u) {
  return u.rows() == u.cols() && (u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).norm() < kTol;
}

void check_triple(std::size_t dim, std::size_t i, std::size_t j, std::size_t k) {
  if (i >= dim || j >= dim || k >= dim) fail(Errc::IndexOutOfRange, "kernel index out of range");
  if (j == k) fail(Errc::PreconditionViolated, "composite question needs two distinct atoms");
}

Mat polar_factor(const Mat& x) {
  Eigen::JacobiSVD<Mat> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// Hermitian basis of n x n matrices: diagonal units, then symmetric and
// antisymmetric off-diagonal pairs.
std::vector<Mat> hermitian_generators(Eigen::Index n) {
  std::vector<Mat> out;
  for (Eigen::Index a = 0; a < n; ++a) {
    Mat g = Mat::Zero(n, n);
    g(a, a) = 1.0;
    out.push_back(std::move(g));
  }
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      Mat s = Mat::Zero(n, n);
      s(a, b) = s(b, a) = 1.0;
      out.push_back(std::move(s));
      Mat t = Mat::Zero(n, n);
      t(a, b) = cplx(0.0, -1.0);
      t(b, a) = cplx(0.0, 1.0);
      out.push_back(std::move(t));
    }
  }
  return out;
}

Mat exp_i_hermitian(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const Eigen::VectorXcd phases = (cplx(0.0, 1.0) * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Levenberg-Marquardt on U exp(iG) over Hermitian G. Alternating projections
// slow to a crawl near some solutions; this finishes them off quadratically.
Mat polish(Mat u, const RealMat& p, double& residual) {
  const Eigen::Index n = u.rows();
  const std::vector<Mat> gens = hermitian_generators(n);
  const auto m = static_cast<Eigen::Index>(gens.size());
  auto residual_vec = [&](const Mat& v) {
    const RealMat d = moduli_squared(v) - p;
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(d.data(), d.size()));
  };
  Eigen::VectorXd r = residual_vec(u);
  residual = r.norm();
  double lambda = 1e-3;
  for (int step = 0; step < 200 && residual > 1e-14 && lambda < 1e12; ++step) {
    Eigen::MatrixXd jac(n * n, m);
    for (Eigen::Index k = 0; k < m; ++k) {
      const Mat du = cplx(0.0, 1.0) * u * gens[static_cast<std::size_t>(k)];
      const RealMat dk = 2.0 * (u.conjugate().cwiseProduct(du)).real();
      jac.col(k) = Eigen::Map<const Eigen::VectorXd>(dk.data(), dk.size());
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * r;
    for (; lambda < 1e12; lambda *= 4.0) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
      const Eigen::VectorXd delta = damped.ldlt().solve(-grad);
      Mat g = Mat::Zero(n, n);
      for (Eigen::Index k = 0; k < m; ++k) g += delta[k] * gens[static_cast<std::size_t>(k)];
      const Mat candidate = u * exp_i_hermitian(g);
      const Eigen::VectorXd rc = residual_vec(candidate);
      if (rc.norm() < residual) {
        u = candidate;
        r = rc;
        residual = rc.norm();
        lambda = std::max(lambda / 3.0, 1e-12);
        break;
      }
    }
  }
  return u;
}

}  // namespace

TransitionKernel::TransitionKernel(RealMat p, std::optional<Mat> unitary, std::string from, std::string to)
    : p_(std::move(p)), unitary_(std::move(unitary)), from_(std::move(from)), to_(std::move(to)) {
  if (p_.rows() != p_.cols()) fail(Errc::DimensionMismatch, "kernel matrix must be square");
  if (!verify_double_stochastic(p_).ok()) fail(Errc::NotDoublyStochastic, "kernel matrix is not doubly stochastic");
  if (unitary_) {
    if (unitary_->rows() != p_.rows() || !is_unitary(*unitary_)) {
      fail(Errc::NotUnitary, "kernel unitary is not a unitary of matching size");
    }
    if ((moduli_squared(*unitary_) - p_).cwiseAbs().maxCoeff() > kTol) {
      fail(Errc::PreconditionViolated, "kernel unitary does not realize p");
    }
  }
}

const Mat& TransitionKernel::unitary() const {
  if (!unitary_) fail(Errc::MissingUnitary, "kernel " + from_ + "->" + to_ + " carries no unitary");
  return *unitary_;
}

TransitionKernel kernel_from_families(const CompleteFamily& from, const CompleteFamily& to) {
  if (from.dim() != to.dim()) fail(Errc::DimensionMismatch, "families live in different spaces");
  Mat u = from.basis().adjoint() * to.basis();
  RealMat p = moduli_squared(u);
  return TransitionKernel(std::move(p), std::move(u), from.label(), to.label());
}

double StochasticReport::max_violation() const {
  return std::max({range_violation, column_sum_violation, row_sum_violation});
}

StochasticReport verify_double_stochastic(const RealMat& p) {
  if (p.rows() != p.cols()) fail(Errc::DimensionMismatch, "stochastic check needs a square matrix");
  StochasticReport report;
  for (Eigen::Index r = 0; r < p.rows(); ++r) {
    for (Eigen::Index c = 0; c < p.cols(); ++c) {
      const double x = p(r, c);
      report.range_violation = std::max(report.range_violation, std::max(-x, x - 1.0));
    }
  }
  for (Eigen::Index c = 0; c < p.cols(); ++c) {
    report.column_sum_violation = std::max(report.column_sum_violation, std::abs(p.col(c).sum() - 1.0));
  }
  for (Eigen::Index r = 0; r < p.rows(); ++r) {
    report.row_sum_violation = std::max(report.row_sum_violation, std::abs(p.row(r).sum() - 1.0));
  }
  return report;
}

double composite_probability(const Mat& u, std::size_t i, std::size_t j, std::size_t k) {
  check_triple(static_cast<std::size_t>(u.rows()), i, j, k);
  if (!is_unitary(u)) fail(Errc::NotUnitary, "composite probability needs a unitary");
  const Mat reverse = u.adjoint();
  const auto I = static_cast<Eigen::Index>(i);
  const auto J = static_cast<Eigen::Index>(j);
  const auto K = static_cast<Eigen::Index>(k);
  return std::norm(u(I, J) * reverse(J, I) + u(I, K) * reverse(K, I));
}

double classical_composite_probability(const RealMat& p, std::size_t i, std::size_t j, std::size_t k) {
  check_triple(static_cast<std::size_t>(p.rows()), i, j, k);
  const auto I = static_cast<Eigen::Index>(i);
  const double pj = p(I, static_cast<Eigen::Index>(j));
  const double pk = p(I, static_cast<Eigen::Index>(k));
  return pj * pj + pk * pk;
}

Interference interference(const TransitionKernel& kernel, std::size_t i, std::size_t j, std::size_t k) {
  return {composite_probability(kernel.unitary(), i, j, k), classical_composite_probability(kernel.p(), i, j, k)};
}

TransitionKernel compose(const TransitionKernel& first, const TransitionKernel& second) {
  if (first.to() != second.from()) {
    fail(Errc::FamilyMismatch, "cannot compose " + first.from() + "->" + first.to() + " with " + second.from() +
                                   "->" + second.to());
  }
  if (first.dim() != second.dim()) fail(Errc::DimensionMismatch, "kernels of different size");
  Mat u = first.unitary() * second.unitary();
  RealMat p = moduli_squared(u);
  return TransitionKernel(std::move(p), std::move(u), first.from(), second.to());
}

UnistochasticResult unistochastic_search(const RealMat& p, const UnistochasticOptions& options) {
  if (p.rows() != p.cols()) fail(Errc::DimensionMismatch, "unistochastic search needs a square matrix");
  if (!verify_double_stochastic(p).ok(kOptTol)) {
    fail(Errc::NotDoublyStochastic, "matrix is not doubly stochastic");
  }
  if (options.starts == 0) fail(Errc::PreconditionViolated, "need at least one start");
  const auto n = p.rows();
  const RealMat moduli = p.cwiseMax(0.0).cwiseSqrt();

  UnistochasticResult result{Mat(), std::numeric_limits<double>::infinity(), 0, {}, false, true};
  for (std::size_t start = 0; start < options.starts; ++start) {
    Rng rng(options.seed, start);
    Mat x(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
      for (Eigen::Index r = 0; r < n; ++r) {
        x(r, c) = std::polar(moduli(r, c), 2.0 * std::numbers::pi * rng.uniform());
      }
    }
    Mat best_u;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t iter = 0; iter < options.max_iters; ++iter) {
      const Mat u = polar_factor(x);
      const double residual = (moduli_squared(u) - p).norm();
      if (residual < best) {
        best = residual;
        best_u = u;
      }
      if (residual < 1e-13) break;
      for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index r = 0; r < n; ++r) {
          const double m = std::abs(u(r, c));
          x(r, c) = m > 0.0 ? moduli(r, c) * (u(r, c) / m) : cplx(moduli(r, c), 0.0);
        }
      }
    }
    if (best > 1e-13 && best <= options.stall_tol) best_u = polish(best_u, p, best);
    result.start_residuals.push_back(best);
    if (best <= options.stall_tol) result.all_stalled = false;
    if (best < result.residual) {
      result.residual = best;
      result.unitary = best_u;
      result.best_start = start;
    }
  }
  result.unitary = phase_fix(result.unitary);
  result.unistochastic = result.residual < options.accept_tol;
  return result;
}

bool unistochastic_triangle_criterion(const RealMat& p, double tol) {
  if (p.rows() != 3 || p.cols() != 3) fail(Errc::DimensionMismatch, "triangle criterion is for 3x3 matrices");
  auto closes = [tol](double a, double b, double c) {
    const double longest = std::max({a, b, c});
    return longest <= (a + b + c - longest) + tol;
  };
  for (Eigen::Index a = 0; a < 3; ++a) {
    for (Eigen::Index b = a + 1; b < 3; ++b) {
      double row[3];
      double col[3];
      for (Eigen::Index j = 0; j < 3; ++j) {
        row[j] = std::sqrt(std::max(0.0, p(a, j) * p(b, j)));
        col[j] = std::sqrt(std::max(0.0, p(j, a) * p(j, b)));
      }
      if (!closes(row[0], row[1], row[2]) || !closes(col[0], col[1], col[2])) return false;
    }
  }
  return true;
}

Mat phase_fix(const Mat& u) {
  const auto n = u.rows();
  const auto m = u.cols();
  std::vector<cplx> row_phase(static_cast<std::size_t>(n), 0.0);
  std::vector<cplx> col_phase(static_cast<std::size_t>(m), 0.0);
  auto unit = [](cplx z) { return z / std::abs(z); };
  auto live = [&](Eigen::Index r, Eigen::Index c) { return std::abs(u(r, c)) > kBranchTol; };
  auto row_set = [&](Eigen::Index r) { return row_phase[static_cast<std::size_t>(r)] != 0.0; };
  auto col_set = [&](Eigen::Index c) { return col_phase[static_cast<std::size_t>(c)] != 0.0; };
  auto fix_col = [&](Eigen::Index r, Eigen::Index c) {
    col_phase[static_cast<std::size_t>(c)] = std::conj(unit(row_phase[static_cast<std::size_t>(r)] * u(r, c)));
  };
  auto fix_row = [&](Eigen::Index r, Eigen::Index c) {
    row_phase[static_cast<std::size_t>(r)] = std::conj(unit(u(r, c) * col_phase[static_cast<std::size_t>(c)]));
  };
  if (n == 0) return u;

  // First row real, then first column real, then spread along the remaining
  // nonzero entries; disconnected blocks start from their first row.
  row_phase[0] = 1.0;
  for (Eigen::Index c = 0; c < m; ++c) {
    if (live(0, c)) fix_col(0, c);
  }
  if (col_set(0)) {
    for (Eigen::Index r = 1; r < n; ++r) {
      if (live(r, 0)) fix_row(r, 0);
    }
  }
  for (;;) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < m; ++c) {
          if (!live(r, c)) continue;
          if (row_set(r) && !col_set(c)) {
            fix_col(r, c);
            changed = true;
          } else if (!row_set(r) && col_set(c)) {
            fix_row(r, c);
            changed = true;
          }
        }
      }
    }
    Eigen::Index next = 0;
    while (next < n && row_set(next)) ++next;
    if (next == n) break;
    row_phase[static_cast<std::size_t>(next)] = 1.0;
  }
  Mat out = u;
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < m; ++c) {
      const cplx cp = col_set(c) ? col_phase[static_cast<std::size_t>(c)] : cplx(1.0);
      out(r, c) = row_phase[static_cast<std::size_t>(r)] * u(r, c) * cp;
    }
  }
  return out;
}

}  // namespace relaqm
