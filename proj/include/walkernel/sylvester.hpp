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

#ifndef WALKERNEL_SYLVESTER_HPP
#define WALKERNEL_SYLVESTER_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "walkernel/dense_matrix.hpp"
#include "walkernel/errors.hpp"
#include "walkernel/kronecker.hpp"
#include "walkernel/solvers.hpp"
#include "walkernel/spectral.hpp"

namespace walkernel {

/// Finds a positive diagonal scaling delta such that diag(delta) * S * diag(delta)^-1
/// is symmetric, if one exists. Normalized adjacency matrices D^-1 A of undirected
/// graphs are the motivating case (delta_i = sqrt(d_i)).
inline std::optional<Vector> diagonal_symmetrizer(const DenseMatrix& s) {
  if (!s.is_square()) return std::nullopt;
  const std::size_t n = s.rows();
  const double scale = 1.0 + s.max_abs();
  Vector delta(n, 0.0);
  std::vector<std::size_t> stack;
  for (std::size_t root = 0; root < n; ++root) {
    if (delta[root] != 0.0) continue;
    delta[root] = 1.0;
    stack.push_back(root);
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double sij = s(i, j);
        const double sji = s(j, i);
        if (sij == 0.0 && sji == 0.0) continue;
        if (sij == 0.0 || sji == 0.0 || (sij > 0.0) != (sji > 0.0)) return std::nullopt;
        if (delta[j] == 0.0) {
          delta[j] = delta[i] * std::sqrt(sij / sji);
          stack.push_back(j);
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = delta[i] * s(i, j) / delta[j];
      const double b = delta[j] * s(j, i) / delta[i];
      if (std::abs(a - b) > 1e-12 * scale) return std::nullopt;
    }
  return delta;
}

namespace detail {

// S = X diag(values) X^-1 with both X and X^-1 available explicitly.
struct Diagonalization {
  Vector values;
  DenseMatrix vectors;
  DenseMatrix inverse;
};

inline std::optional<Diagonalization> diagonalize_symmetrizable(const DenseMatrix& s) {
  auto delta = diagonal_symmetrizer(s);
  if (!delta) return std::nullopt;
  const std::size_t n = s.rows();
  DenseMatrix sym(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sym(i, j) = (*delta)[i] * s(i, j) / (*delta)[j];
  // Average away rounding asymmetry.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) sym(i, j) = sym(j, i) = 0.5 * (sym(i, j) + sym(j, i));
  EigenDecomposition eig = sym_eig(sym);
  Diagonalization d{eig.eigenvalues, DenseMatrix(n, n), DenseMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      d.vectors(i, j) = eig.eigenvectors(i, j) / (*delta)[i];
      d.inverse(j, i) = eig.eigenvectors(i, j) * (*delta)[i];
    }
  return d;
}

inline double stein_residual(const DenseMatrix& s, const DenseMatrix& t, const DenseMatrix& m0,
                             const DenseMatrix& m) {
  return max_abs_diff(m, s * m * t + m0);
}

}  // namespace detail

/// Solves the Stein/Sylvester equation M = S M T + M0 for M.
///
/// S is p x p, T is q x q and M0 is p x q. When both S and T are
/// diagonally similar to symmetric matrices the equation decouples in their
/// eigenbases (O(p^3 + q^3)). Otherwise the doubling iteration
/// M <- M + S^(2^k) M T^(2^k) is used, which needs rho(S) rho(T) < 1. Every
/// returned solution meets ||M - S M T - M0||_max <= 1e-8 (1 + ||M0||_max).
inline DenseMatrix sylvester_solve(const DenseMatrix& s, const DenseMatrix& t, const DenseMatrix& m0) {
  if (!s.is_square() || !t.is_square() || m0.rows() != s.rows() || m0.cols() != t.rows()) {
    throw DimensionError("sylvester_solve: need S p x p, T q x q, M0 p x q; got S " +
                         detail::shape(s.rows(), s.cols()) + ", T " + detail::shape(t.rows(), t.cols()) +
                         ", M0 " + detail::shape(m0.rows(), m0.cols()));
  }
  const double bound = 1e-8 * (1.0 + m0.max_abs());
  if (s.max_abs() == 0.0 || t.max_abs() == 0.0) return m0;

  auto ds = detail::diagonalize_symmetrizable(s);
  auto dt = ds ? detail::diagonalize_symmetrizable(t) : std::nullopt;
  if (ds && dt) {
    DenseMatrix c = ds->inverse * m0 * dt->vectors;
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j) {
        const double denom = 1.0 - ds->values[i] * dt->values[j];
        if (std::abs(denom) < 1e-13) {
          throw SingularError("sylvester_solve: Stein operator is singular (eigenvalue product " +
                              std::to_string(ds->values[i] * dt->values[j]) + ")");
        }
        c(i, j) /= denom;
      }
    DenseMatrix m = ds->vectors * c * dt->inverse;
    if (detail::stein_residual(s, t, m0, m) <= bound) return m;
    // Badly scaled symmetrizer; fall through to the doubling iteration.
  }

  DenseMatrix m = m0;
  DenseMatrix sk = s;
  DenseMatrix tk = t;
  const double blowup = 1e12 * (1.0 + m0.max_abs());
  for (int k = 0; k < 64; ++k) {
    DenseMatrix inc = sk * m * tk;
    m = m + inc;
    const double mnorm = m.max_abs();
    if (!std::isfinite(mnorm) || mnorm > blowup) break;
    if (inc.max_abs() <= 1e-17 * (1.0 + mnorm)) break;
    sk = sk * sk;
    tk = tk * tk;
  }
  const double res = detail::stein_residual(s, t, m0, m);
  if (!(res <= bound)) {
    throw SingularError("sylvester_solve: doubling iteration failed (residual " + std::to_string(res) +
                        "); the Stein operator is singular or rho(S) rho(T) >= 1");
  }
  return m;
}

/// Solves M = lambda * sum_i S_i M T_i^T + M0 by fixed-point sweeps.
///
/// Each sweep costs one vec-trick product per pair. Requires the map
/// M -> lambda * sum_i S_i M T_i^T to be a contraction; this is checked by a
/// power-iteration estimate before sweeping and by a growth guard during it.
template <RealMatrix Mat>
DenseMatrix generalized_sylvester_solve(const std::vector<std::pair<Mat, Mat>>& pairs, double lambda,
                                        const DenseMatrix& m0, double tol, std::size_t max_iter) {
  if (pairs.empty()) throw DimensionError("generalized_sylvester_solve: no pairs");
  if (!(lambda >= 0.0)) throw InvalidArgument("generalized_sylvester_solve: lambda must be non-negative");
  for (const auto& [si, ti] : pairs) {
    if (si.rows() != m0.rows() || si.cols() != m0.rows() || ti.rows() != m0.cols() || ti.cols() != m0.cols()) {
      throw DimensionError("generalized_sylvester_solve: pair shapes do not match M0 " +
                           detail::shape(m0.rows(), m0.cols()));
    }
  }
  if (lambda == 0.0) return m0;
  // vec(S M T^T) = (T (x) S) vec(M)
  std::vector<KronPair<Mat>> terms;
  terms.reserve(pairs.size());
  for (const auto& [si, ti] : pairs) terms.push_back({ti, si});
  LinearOperator op = [&terms](std::span<const double> x) { return sum_kron_mat_vec(terms, x); };

  const double rho = lambda * spectral_radius_estimate(op, m0.rows() * m0.cols(), 60);
  if (rho >= 1.0) {
    throw DivergenceError("generalized_sylvester_solve: lambda * xi_max ~= " + std::to_string(rho) +
                          " >= 1, the sweep map is not a contraction");
  }
  Vector b = vec(m0);
  SolveReport rep = fixed_point_solve(op, b, lambda, tol, max_iter);
  if (!rep.converged) {
    throw DivergenceError("generalized_sylvester_solve: no convergence within " + std::to_string(max_iter) +
                          " sweeps");
  }
  return unvec(rep.solution, m0.rows(), m0.cols());
}

}  // namespace walkernel

#endif  // WALKERNEL_SYLVESTER_HPP
