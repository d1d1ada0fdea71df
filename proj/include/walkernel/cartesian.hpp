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


#ifndef WALKERNEL_CARTESIAN_HPP
#define WALKERNEL_CARTESIAN_HPP

#include <chrono>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "walkernel/dense_matrix.hpp"
#include "walkernel/errors.hpp"
#include "walkernel/graph.hpp"
#include "walkernel/graph_spectrum.hpp"
#include "walkernel/kernel_config.hpp"
#include "walkernel/kronecker.hpp"
#include "walkernel/product_graph.hpp"
#include "walkernel/random_walk.hpp"
#include "walkernel/solvers.hpp"
#include "walkernel/spectral.hpp"
#include "walkernel/sylvester.hpp"

namespace walkernel {

/// even: sum_{k>=1} mu(k) q^T W^(2k) p.  all: sum_{k>=0} mu(k) q^T W^k p.
enum class PowerMode { even, all };

inline const char* to_string(PowerMode m) noexcept { return m == PowerMode::even ? "even" : "all"; }

inline PowerMode parse_power_mode(const std::string& s) {
  if (s == "even") return PowerMode::even;
  if (s == "all") return PowerMode::all;
  throw InvalidArgument("unknown power mode \"" + s + "\" (expected even or all)");
}

inline const char* to_string(FactorWeight w) noexcept {
  return w == FactorWeight::adjacency ? "adjacency" : "laplacian";
}

inline FactorWeight parse_factor_weight(const std::string& s) {
  if (s == "adjacency") return FactorWeight::adjacency;
  if (s == "laplacian") return FactorWeight::laplacian;
  throw InvalidArgument("unknown weight \"" + s + "\" (expected adjacency or laplacian)");
}

/// Product graph whose weight is W (+) W' = W (x) I' + I (x) W', with the
/// given (or uniform) start and stop distributions.
inline ProductGraph cartesian_walk_product(const Graph& g, const Graph& h, FactorWeight weight, bool degree_normalize,
                                           const std::optional<WalkEnds>& ends = std::nullopt) {
  detail::require_compatible(g, h, "cartesian_walk_kernel");
  WalkEnds e = detail::resolve_ends(g, h, ends);
  std::vector<KronPair<SparseMatrix>> factors;
  factors.push_back({factor_matrix(g, weight, degree_normalize), SparseMatrix::identity(h.n())});
  factors.push_back({SparseMatrix::identity(g.n()), factor_matrix(h, weight, degree_normalize)});
  return {g.n(), h.n(), std::move(factors), kron_vectors(e.p, e.p2), kron_vectors(e.q, e.q2)};
}

namespace detail {

inline void require_cartesian_convergence(const ProductGraph& pg, double lambda, PowerMode mode) {
  if (lambda == 0.0 || pg.n() == 0) return;
  double bound = 0.0;
  for (const auto& t : pg.factors) bound += max_row_abs_sum(t.left) * max_row_abs_sum(t.right);
  if (mode == PowerMode::even) bound *= bound;
  if (lambda * bound < 1.0) return;
  LinearOperator op = [&pg, mode](std::span<const double> x) {
    return mode == PowerMode::even ? pg.apply(pg.apply(x)) : pg.apply(x);
  };
  const double rho = spectral_radius_estimate(op, pg.n(), 200);
  if (lambda * rho >= 1.0) {
    throw DivergenceError("cartesian walk series diverges: lambda * xi_max ~= " + std::to_string(lambda * rho) +
                          " >= 1; use lambda < " + std::to_string(1.0 / rho));
  }
}

}  // namespace detail

/// Walk kernel on the Cartesian product graph. For the geometric measure,
/// even mode returns q^T [(I - lambda W^2)^-1 - I] p and all mode returns
/// q^T (I - lambda W)^-1 p, with W = W_G (+) W_G'. For the exponential
/// measure the same series use lambda^k / k!. The Laplacian weight is
/// I - D^-1 A (degree_normalize) or D - A.
inline KernelResult cartesian_walk_kernel(const Graph& g, const Graph& h, const KernelConfig& cfg = {},
                                          FactorWeight weight = FactorWeight::adjacency,
                                          PowerMode mode = PowerMode::even,
                                          const std::optional<WalkEnds>& ends = std::nullopt) {
  cfg.validate();
  if (g.directed() || h.directed()) throw InvalidArgument("cartesian_walk_kernel: graphs must be undirected");
  const auto t0 = std::chrono::steady_clock::now();
  ProductGraph pg = cartesian_walk_product(g, h, weight, cfg.degree_normalize, ends);
  const std::size_t n = pg.n();
  const double lambda = cfg.lambda;
  const bool even = mode == PowerMode::even;
  const double offset = even ? dot(pg.stop, pg.start) : 0.0;
  KernelResult r;
  r.method = cfg.method;

  if (cfg.method == Method::spectral) {
    WalkEnds e = detail::resolve_ends(g, h, ends);
    SymmetrizedSpectrum a = factor_spectrum(g, weight, cfg.degree_normalize);
    SymmetrizedSpectrum b = factor_spectrum(h, weight, cfg.degree_normalize);
    if (cfg.measure == Measure::geometric) {
      double exact = 0.0;
      for (double x : a.values)
        for (double y : b.values) exact = std::max(exact, even ? (x + y) * (x + y) : std::abs(x + y));
      if (lambda * exact >= 1.0) {
        throw DivergenceError("cartesian walk series diverges: lambda * xi_max = " + std::to_string(lambda * exact) +
                              " >= 1");
      }
      r.value = spectral_pair_form(a, b, e.p, e.q, e.p2, e.q2, [lambda, even](double x, double y) {
        const double s = x + y;
        return even ? 1.0 / (1.0 - lambda * s * s) - 1.0 : 1.0 / (1.0 - lambda * s);
      });
    } else {
      r.value = spectral_pair_form(a, b, e.p, e.q, e.p2, e.q2, [lambda, even](double x, double y) {
        const double s = x + y;
        return even ? std::expm1(lambda * s * s) : std::exp(lambda * s);
      });
    }
    r.iterations = 1;
    r.wall_time = detail::elapsed_since(t0);
    return r;
  }

  LinearOperator w = [&pg, even](std::span<const double> x) { return even ? pg.apply(pg.apply(x)) : pg.apply(x); };

  if (cfg.measure == Measure::exponential) {
    if (cfg.method == Method::direct) {
      DenseMatrix ws = pg.explicit_weight().to_dense();
      if (even) ws = ws * ws;
      r.value = dot(pg.stop, multiply(matrix_exp_oracle(ws, lambda), pg.start)) - offset;
    } else {
      r = detail::exponential_series(w, pg.start, pg.stop, cfg);
      r.value -= offset;
      r.method = cfg.method;
    }
    r.wall_time = detail::elapsed_since(t0);
    return r;
  }

  detail::require_cartesian_convergence(pg, lambda, mode);
  Vector x;
  switch (cfg.method) {
    case Method::direct: {
      DenseMatrix ws = pg.explicit_weight().to_dense();
      if (even) ws = ws * ws;
      for (double& v : ws.data()) v *= -lambda;
      for (std::size_t i = 0; i < n; ++i) ws(i, i) += 1.0;
      x = dense_solve(ws, pg.start);
      r.iterations = 1;
      break;
    }
    case Method::sylvester: {
      // M is n' x n; vec(W_G-term) = vec(M W^T), vec(W_G'-term) = vec(W' M).
      SparseMatrix wg = pg.factors[0].left, wh = pg.factors[1].right;
      SparseMatrix ig = SparseMatrix::identity(g.n()), ih = SparseMatrix::identity(h.n());
      std::vector<std::pair<SparseMatrix, SparseMatrix>> pairs;
      if (even) {
        pairs.emplace_back(ih, wg * wg);
        pairs.emplace_back(wh.scaled(2.0), wg);
        pairs.emplace_back(wh * wh, ig);
      } else {
        pairs.emplace_back(ih, wg);
        pairs.emplace_back(wh, ig);
      }
      DenseMatrix m = generalized_sylvester_solve(pairs, lambda, unvec(pg.start, h.n(), g.n()), cfg.tol, cfg.max_iter);
      x = vec(m);
      break;
    }
    case Method::cg: {
      LinearOperator op = [&w, lambda](std::span<const double> v) {
        Vector y = w(v);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = v[i] - lambda * y[i];
        return y;
      };
      SolveReport rep = cg_solve(op, pg.start, cfg.tol, cfg.max_iter);
      x = std::move(rep.solution);
      r.iterations = rep.iterations;
      r.residual = rep.residual_norm;
      r.converged = rep.converged;
      break;
    }
    case Method::fixed_point: {
      SolveReport rep = fixed_point_solve(w, pg.start, lambda, cfg.tol, cfg.max_iter);
      x = std::move(rep.solution);
      r.iterations = rep.iterations;
      r.residual = rep.residual_norm;
      r.converged = rep.converged;
      break;
    }
    case Method::spectral: break;
  }
  r.value = dot(pg.stop, x) - offset;
  r.wall_time = detail::elapsed_since(t0);
  return r;
}

/// k(G, G') + k(complement G, complement G').
template <class Base>
double composite_kernel(const Graph& g, const Graph& h, Base&& base) {
  return static_cast<double>(base(g, h)) + static_cast<double>(base(complement(g), complement(h)));
}

}  // namespace walkernel

#endif  // WALKERNEL_CARTESIAN_HPP
