// Copyright 2026 The walkernel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WALKERNEL_SOLVERS_HPP
#define WALKERNEL_SOLVERS_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "walkernel/dense_matrix.hpp"
#include "walkernel/errors.hpp"

namespace walkernel {

/// A square linear map on Vectors, applied matrix-free.
using LinearOperator = std::function<Vector(std::span<const double>)>;

struct SolveReport {
  Vector solution;
  std::size_t iterations = 0;
  double residual_norm = 0.0;
  bool converged = false;
};

inline LinearOperator as_operator(const DenseMatrix& m) {
  return [&m](std::span<const double> x) { return multiply(m, x); };
}

/// Direct LU solve with partial pivoting. This is the O(N^3) baseline for
/// N-dimensional systems; throws SingularError when M is numerically singular.
inline Vector dense_solve(const DenseMatrix& m, std::span<const double> b) {
  if (!m.is_square()) throw DimensionError("dense_solve: matrix is " + detail::shape(m.rows(), m.cols()));
  if (m.rows() != b.size()) throw DimensionError("dense_solve: right-hand side length mismatch");
  const auto n = static_cast<Eigen::Index>(m.rows());
  if (n == 0) return {};
  Eigen::MatrixXd a = m.eigen();
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > 64.0 * std::numeric_limits<double>::epsilon())) {
    throw SingularError("dense_solve: matrix is singular to working precision (rcond=" + std::to_string(rcond) +
                        ")");
  }
  Eigen::Map<const Eigen::VectorXd> rhs(b.data(), n);
  Eigen::VectorXd x = lu.solve(rhs);
  // One step of iterative refinement keeps the residual bound on moderately
  // conditioned systems.
  Eigen::VectorXd r = rhs - a * x;
  const double bound = 1e-10 * (1.0 + rhs.norm());
  if (r.norm() > bound) {
    x += lu.solve(r);
    r = rhs - a * x;
    if (r.norm() > bound) {
      throw SingularError("dense_solve: residual " + std::to_string(r.norm()) + " exceeds bound; system is ill-conditioned");
    }
  }
  return Vector(x.data(), x.data() + n);
}

/// Krylov solver for a general nonsingular operator (BiCGSTAB). Stops once
/// ||b - A x|| <= tol * ||b||, measured on the original system.
inline SolveReport cg_solve(const LinearOperator& apply, std::span<const double> b, double tol,
                            std::size_t max_iter) {
  if (!(tol > 0.0)) throw InvalidArgument("cg_solve: tolerance must be positive");
  const std::size_t n = b.size();
  SolveReport rep;
  rep.solution.assign(n, 0.0);
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    rep.converged = true;
    return rep;
  }
  const double target = tol * bnorm;
  Vector& x = rep.solution;
  Vector r(b.begin(), b.end());
  Vector rhat = r;
  Vector p(n, 0.0), v(n, 0.0), s(n), t;
  double rho = 1.0, alpha = 1.0, omega = 1.0;

  auto true_residual = [&]() {
    Vector ax = apply(x);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += (b[i] - ax[i]) * (b[i] - ax[i]);
    return std::sqrt(acc);
  };

  for (std::size_t it = 1; it <= max_iter; ++it) {
    rep.iterations = it;
    double rho_new = dot(rhat, r);
    if (std::abs(rho_new) < 1e-300) {
      // Lanczos breakdown: restart the shadow residual.
      rhat = r;
      rho_new = dot(rhat, r);
      std::fill(p.begin(), p.end(), 0.0);
      std::fill(v.begin(), v.end(), 0.0);
      rho = alpha = omega = 1.0;
      if (rho_new == 0.0) break;
    }
    const double beta = (rho_new / rho) * (alpha / omega);
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
    v = apply(p);
    const double denom = dot(rhat, v);
    if (denom == 0.0) break;
    alpha = rho_new / denom;
    for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
    if (norm2(s) <= target) {
      axpy(alpha, p, x);
      rep.residual_norm = true_residual();
      if (rep.residual_norm <= target) {
        rep.converged = true;
        return rep;
      }
      r = s;
      rho = rho_new;
      continue;
    }
    t = apply(s);
    const double tt = dot(t, t);
    omega = tt == 0.0 ? 0.0 : dot(t, s) / tt;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i] + omega * s[i];
      r[i] = s[i] - omega * t[i];
    }
    rho = rho_new;
    if (norm2(r) <= target) {
      rep.residual_norm = true_residual();
      if (rep.residual_norm <= target) {
        rep.converged = true;
        return rep;
      }
    }
    if (omega == 0.0) break;
  }
  rep.residual_norm = true_residual();
  rep.converged = rep.residual_norm <= target;
  return rep;
}

/// Classic conjugate gradients; valid only for symmetric positive definite operators.
inline SolveReport conjugate_gradient(const LinearOperator& apply, std::span<const double> b, double tol,
                                      std::size_t max_iter) {
  if (!(tol > 0.0)) throw InvalidArgument("conjugate_gradient: tolerance must be positive");
  const std::size_t n = b.size();
  SolveReport rep;
  rep.solution.assign(n, 0.0);
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    rep.converged = true;
    return rep;
  }
  Vector r(b.begin(), b.end());
  Vector p = r;
  double rr = dot(r, r);
  for (std::size_t it = 1; it <= max_iter; ++it) {
    rep.iterations = it;
    Vector ap = apply(p);
    const double pap = dot(p, ap);
    if (pap <= 0.0) break;
    const double alpha = rr / pap;
    axpy(alpha, p, rep.solution);
    axpy(-alpha, ap, r);
    const double rr_new = dot(r, r);
    if (std::sqrt(rr_new) <= tol * bnorm) {
      rr = rr_new;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + (rr_new / rr) * p[i];
    rr = rr_new;
  }
  Vector ax = apply(rep.solution);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += (b[i] - ax[i]) * (b[i] - ax[i]);
  rep.residual_norm = std::sqrt(acc);
  rep.converged = rep.residual_norm <= tol * bnorm;
  return rep;
}

/// Iterates x_{t+1} = p + lambda * W x_t from x_0 = p until
/// ||x_{t+1} - x_t|| < tol. The reported residual is that final step norm.
inline SolveReport fixed_point_solve(const LinearOperator& apply_w, std::span<const double> p, double lambda,
                                     double tol, std::size_t max_iter) {
  if (!(lambda >= 0.0)) throw InvalidArgument("fixed_point_solve: lambda must be non-negative");
  if (!(tol > 0.0)) throw InvalidArgument("fixed_point_solve: tolerance must be positive");
  SolveReport rep;
  Vector x(p.begin(), p.end());
  const double start = norm2(p);
  const double blowup = 1e12 * (start > 0.0 ? start : 1.0);
  for (std::size_t it = 1; it <= max_iter; ++it) {
    rep.iterations = it;
    Vector next(p.begin(), p.end());
    if (lambda != 0.0) axpy(lambda, apply_w(x), next);
    double step = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) step += (next[i] - x[i]) * (next[i] - x[i]);
    step = std::sqrt(step);
    x = std::move(next);
    if (!std::isfinite(step) || norm2(x) > blowup) {
      throw DivergenceError("fixed_point_solve: iterates diverge; the spectral condition lambda < 1/xi_max "
                            "is violated (lambda=" + std::to_string(lambda) + ")");
    }
    rep.residual_norm = step;
    if (step < tol) {
      rep.converged = true;
      break;
    }
  }
  rep.solution = std::move(x);
  return rep;
}

}  // namespace walkernel

#endif  // WALKERNEL_SOLVERS_HPP
