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


#ifndef WALKERNEL_RANDOM_WALK_HPP
#define WALKERNEL_RANDOM_WALK_HPP

#include <Eigen/Eigenvalues>

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
#include "walkernel/solvers.hpp"
#include "walkernel/spectral.hpp"
#include "walkernel/sylvester.hpp"

namespace walkernel {

/// Start and stop distributions on G (p, q) and G' (p2, q2).
struct WalkEnds {
  Vector p;
  Vector q;
  Vector p2;
  Vector q2;
};

namespace detail {

inline void require_distribution(std::span<const double> v, std::size_t n, const char* name) {
  if (v.size() != n) {
    throw DimensionError(std::string(name) + ": length " + std::to_string(v.size()) + " but the graph has " +
                         std::to_string(n) + " vertices");
  }
  double sum = 0.0;
  for (double x : v) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidArgument(std::string(name) + ": entries must be finite and >= 0");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument(std::string(name) + ": entries must sum to 1");
}

inline WalkEnds resolve_ends(const Graph& g, const Graph& h, const std::optional<WalkEnds>& ends) {
  if (!ends) {
    auto a = uniform_start_stop(g);
    auto b = uniform_start_stop(h);
    return {a.start, a.stop, b.start, b.stop};
  }
  require_distribution(ends->p, g.n(), "start distribution p");
  require_distribution(ends->q, g.n(), "stop distribution q");
  require_distribution(ends->p2, h.n(), "start distribution p'");
  require_distribution(ends->q2, h.n(), "stop distribution q'");
  return *ends;
}

inline double max_row_abs_sum(const SparseMatrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (double v : m.row_values(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

/// Throws unless lambda * rho(W) < 1. The infinity-norm bound settles the
/// common case in O(nnz); otherwise a power-iteration estimate decides.
inline void require_walk_convergence(const ProductGraph& pg, double lambda) {
  if (lambda == 0.0 || pg.n() == 0) return;
  double bound = 0.0;
  for (const auto& t : pg.factors) bound += max_row_abs_sum(t.left) * max_row_abs_sum(t.right);
  if (lambda * bound < 1.0) return;
  LinearOperator op = [&pg](std::span<const double> x) { return pg.apply(x); };
  const double rho = spectral_radius_estimate(op, pg.n(), 200);
  if (lambda * rho >= 1.0) {
    throw DivergenceError("random walk series diverges: lambda * xi_max ~= " + std::to_string(lambda * rho) +
                          " >= 1; use lambda < " + std::to_string(1.0 / rho));
  }
}

inline DenseMatrix dense_weight(const ProductGraph& pg) { return pg.explicit_weight().to_dense(); }

inline double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// sum_k lambda^k / k! q^T W^k p, truncated once a term's norm drops below tol.
inline KernelResult exponential_series(const LinearOperator& w, std::span<const double> p, std::span<const double> q,
                                       const KernelConfig& cfg) {
  KernelResult r;
  r.converged = false;
  Vector term(p.begin(), p.end());
  Vector sum = term;
  for (std::size_t k = 1; k <= cfg.max_iter; ++k) {
    term = w(term);
    const double c = cfg.lambda / static_cast<double>(k);
    for (double& v : term) v *= c;
    axpy(1.0, term, sum);
    r.iterations = k;
    r.residual = norm2(term);
    if (r.residual < cfg.tol) {
      r.converged = true;
      break;
    }
  }
  r.value = dot(q, sum);
  return r;
}

}  // namespace detail

/// q_x^T (I - lambda W_x)^-1 p_x (geometric measure) or q_x^T exp(lambda W_x) p_x
/// (exponential measure) for an already assembled product graph.
inline KernelResult product_walk_kernel(const ProductGraph& pg, const KernelConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  KernelResult r;
  r.method = cfg.method;
  const std::size_t n = pg.n();
  if (pg.start.size() != n || pg.stop.size() != n) throw DimensionError("product_walk_kernel: distribution length");

  if (cfg.measure == Measure::exponential) {
    if (cfg.method == Method::direct) {
      DenseMatrix e = matrix_exp_oracle(detail::dense_weight(pg), cfg.lambda);
      r.value = dot(pg.stop, multiply(e, pg.start));
    } else if (cfg.method == Method::spectral) {
      throw InvalidArgument("product_walk_kernel: the spectral method needs the graphs; use random_walk_kernel");
    } else {
      LinearOperator w = [&pg](std::span<const double> x) { return pg.apply(x); };
      r = detail::exponential_series(w, pg.start, pg.stop, cfg);
      r.method = cfg.method;
    }
    r.wall_time = detail::elapsed_since(t0);
    return r;
  }

  detail::require_walk_convergence(pg, cfg.lambda);
  switch (cfg.method) {
    case Method::direct: {
      DenseMatrix m = detail::dense_weight(pg);
      for (double& v : m.data()) v *= -cfg.lambda;
      for (std::size_t i = 0; i < n; ++i) m(i, i) += 1.0;
      Vector x = dense_solve(m, pg.start);
      r.value = dot(pg.stop, x);
      r.iterations = 1;
      break;
    }
    case Method::sylvester: {
      // (sum_k A_k (x) B_k) vec(M) = vec(sum_k B_k M A_k^T) with M of size n' x n.
      DenseMatrix m0 = unvec(pg.start, pg.right_n, pg.left_n);
      DenseMatrix m;
      if (pg.factors.size() == 1) {
        DenseMatrix s = cfg.lambda * pg.factors[0].right.to_dense();
        DenseMatrix t = pg.factors[0].left.to_dense().transpose();
        m = sylvester_solve(s, t, m0);
        r.iterations = 1;
      } else {
        std::vector<std::pair<SparseMatrix, SparseMatrix>> pairs;
        for (const auto& f : pg.factors) pairs.emplace_back(f.right, f.left);
        m = generalized_sylvester_solve(pairs, cfg.lambda, m0, cfg.tol, cfg.max_iter);
      }
      Vector x = vec(m);
      Vector wx = pg.apply(x);
      double res = 0.0;
      for (std::size_t i = 0; i < n; ++i) res += std::pow(x[i] - cfg.lambda * wx[i] - pg.start[i], 2);
      r.residual = std::sqrt(res);
      r.value = dot(pg.stop, x);
      break;
    }
    case Method::cg: {
      const double lambda = cfg.lambda;
      LinearOperator op = [&pg, lambda](std::span<const double> x) {
        Vector y = pg.apply(x);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] - lambda * y[i];
        return y;
      };
      SolveReport rep = cg_solve(op, pg.start, cfg.tol, cfg.max_iter);
      r.value = dot(pg.stop, rep.solution);
      r.iterations = rep.iterations;
      r.residual = rep.residual_norm;
      r.converged = rep.converged;
      break;
    }
    case Method::fixed_point: {
      LinearOperator w = [&pg](std::span<const double> x) { return pg.apply(x); };
      SolveReport rep = fixed_point_solve(w, pg.start, cfg.lambda, cfg.tol, cfg.max_iter);
      r.value = dot(pg.stop, rep.solution);
      r.iterations = rep.iterations;
      r.residual = rep.residual_norm;
      r.converged = rep.converged;
      break;
    }
    case Method::spectral:
      throw InvalidArgument("product_walk_kernel: the spectral method needs the graphs; use random_walk_kernel");
  }
  r.wall_time = detail::elapsed_since(t0);
  return r;
}

/// Product graph for the random walk kernel with the given (or uniform)
/// start and stop distributions.
inline ProductGraph walk_product(const Graph& g, const Graph& h, const KernelConfig& cfg,
                                 const std::optional<WalkEnds>& ends = std::nullopt) {
  WalkEnds e = detail::resolve_ends(g, h, ends);
  ProductGraph pg = direct_product(g, h, {cfg.degree_normalize});
  pg.start = kron_vectors(e.p, e.p2);
  pg.stop = kron_vectors(e.q, e.q2);
  return pg;
}

/// Random walk graph kernel sum_k mu(k) q_x^T W_x^k p_x, k >= 0.
inline KernelResult random_walk_kernel(const Graph& g, const Graph& h, const KernelConfig& cfg = {},
                                       const std::optional<WalkEnds>& ends = std::nullopt) {
  cfg.validate();
  if (cfg.method != Method::spectral) return product_walk_kernel(walk_product(g, h, cfg, ends), cfg);

  const auto t0 = std::chrono::steady_clock::now();
  auto single_label = [](const Graph& x) {
    return x.label_mode() == LabelMode::none || (x.label_mode() == LabelMode::discrete && x.label_dim() == 1);
  };
  if (!single_label(g) || !single_label(h)) {
    throw InvalidArgument("random_walk_kernel: the spectral method needs unlabeled graphs");
  }
  WalkEnds e = detail::resolve_ends(g, h, ends);
  SymmetrizedSpectrum a = factor_spectrum(g, FactorWeight::adjacency, cfg.degree_normalize);
  SymmetrizedSpectrum b = factor_spectrum(h, FactorWeight::adjacency, cfg.degree_normalize);
  KernelResult r;
  r.method = Method::spectral;
  r.iterations = 1;
  const double lambda = cfg.lambda;
  if (cfg.measure == Measure::geometric) {
    double ra = 0.0, rb = 0.0;
    for (double v : a.values) ra = std::max(ra, std::abs(v));
    for (double v : b.values) rb = std::max(rb, std::abs(v));
    if (lambda * ra * rb >= 1.0) {
      throw DivergenceError("random walk series diverges: lambda * xi_max = " + std::to_string(lambda * ra * rb) +
                            " >= 1; use lambda < " + std::to_string(1.0 / (ra * rb)));
    }
    r.value = spectral_pair_form(a, b, e.p, e.q, e.p2, e.q2,
                                 [lambda](double x, double y) { return 1.0 / (1.0 - lambda * x * y); });
  } else {
    r.value = spectral_pair_form(a, b, e.p, e.q, e.p2, e.q2,
                                 [lambda](double x, double y) { return std::exp(lambda * x * y); });
  }
  r.wall_time = detail::elapsed_since(t0);
  return r;
}

/// The terms q_x^T W_x^k p_x for k = 0..k_max, by repeated lazy products.
inline Vector walk_series_terms(const ProductGraph& pg, std::size_t k_max) {
  Vector terms;
  Vector x = pg.start;
  terms.push_back(dot(pg.stop, x));
  for (std::size_t k = 1; k <= k_max; ++k) {
    x = pg.apply(x);
    terms.push_back(dot(pg.stop, x));
  }
  return terms;
}

/// Truncated sum_{k=first_k}^{k_max} mu(k) q_x^T W_x^k p_x with uniform
/// distributions, using the explicit dense product weight matrix.
inline double walk_series_reference(const Graph& g, const Graph& h, double lambda, std::size_t k_max,
                                    std::size_t first_k = 0, Measure measure = Measure::geometric,
                                    bool degree_normalize = true) {
  ProductGraph pg = direct_product(g, h, {degree_normalize});
  DenseMatrix w = detail::dense_weight(pg);
  Vector x = pg.start;
  double total = 0.0, mu = 1.0;
  for (std::size_t k = 0; k <= k_max; ++k) {
    if (k > 0) {
      x = multiply(w, x);
      mu *= measure == Measure::geometric ? lambda : lambda / static_cast<double>(k);
    }
    if (k >= first_k) total += mu * dot(pg.stop, x);
  }
  return total;
}

/// sum_{k=1}^{k_max} lambda^k sum_{all entries} [W_x^k], the unnormalized
/// walk count over every pair of product vertices.
inline double gartner_kernel_reference(const Graph& g, const Graph& h, double lambda, std::size_t k_max,
                                       bool degree_normalize = true) {
  ProductGraph pg = direct_product(g, h, {degree_normalize});
  DenseMatrix w = detail::dense_weight(pg);
  Vector x(pg.n(), 1.0);
  double total = 0.0, mu = 1.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    x = multiply(w, x);
    mu *= lambda;
    double s = 0.0;
    for (double v : x) s += v;
    total += mu * s;
  }
  return total;
}

namespace detail {

/// Label features without weights or degree scaling: e_l for discrete
/// labels, the stored vector for vector labels, [1] for unlabeled edges.
inline FeatureMatrix edge_label_features(const Graph& g) {
  const std::size_t d = g.label_mode() == LabelMode::none ? 1 : g.label_dim();
  FeatureMatrix f(g.n(), g.n(), d);
  for_each_arc(g, [&](std::size_t i, std::size_t j, const Edge& e) {
    auto cell = f(i, j);
    switch (g.label_mode()) {
      case LabelMode::none: cell[0] = 1.0; break;
      case LabelMode::discrete: cell[e.label] = 1.0; break;
      case LabelMode::vector:
        for (std::size_t k = 0; k < d; ++k) cell[k] = e.features[k];
        break;
    }
  });
  return f;
}

inline void require_transition_matrix(const Graph& g, const DenseMatrix& p, const char* name) {
  if (p.rows() != g.n() || p.cols() != g.n()) throw DimensionError(std::string(name) + ": must be n x n");
  for (std::size_t i = 0; i < g.n(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j) {
      const double v = p(i, j);
      if (!(v >= 0.0)) throw InvalidArgument(std::string(name) + ": entries must be >= 0");
      if (v != 0.0 && !g.has_edge(i, j)) {
        throw InvalidArgument(std::string(name) + ": entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") is not an edge");
      }
      row += v;
    }
    if (row > 1.0 + 1e-12) throw InvalidArgument(std::string(name) + ": row " + std::to_string(i) + " sums above 1");
  }
}

inline double dense_spectral_radius(const DenseMatrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::MatrixXd a = m.eigen();
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  if (es.info() != Eigen::Success) throw Error("spectral radius: eigensolver failed");
  double best = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) best = std::max(best, std::abs(es.eigenvalues()(i)));
  return best;
}

}  // namespace detail

/// Marginalized kernel q_x^T (I - T_x)^-1 p_x with
/// T_x[(i,i'),(j,j')] = P_ij P'_i'j' kappa(X_ij, X'_i'j'), where kappa is the
/// inner product of the unweighted edge-label features. T_x is assembled
/// entry by entry and solved densely.
inline KernelResult marginalized_kernel(const Graph& g, const Graph& h, const DenseMatrix& p_trans,
                                        const DenseMatrix& p2_trans, const std::optional<WalkEnds>& ends = std::nullopt) {
  const auto t0 = std::chrono::steady_clock::now();
  detail::require_compatible(g, h, "marginalized_kernel");
  detail::require_same_labels(g, h, "marginalized_kernel");
  detail::require_transition_matrix(g, p_trans, "transition matrix P");
  detail::require_transition_matrix(h, p2_trans, "transition matrix P'");
  WalkEnds e = detail::resolve_ends(g, h, ends);
  FeatureMatrix fg = detail::edge_label_features(g), fh = detail::edge_label_features(h);
  const std::size_t m = h.n(), n = g.n() * m;
  DenseMatrix t(n, n);
  detail::for_each_arc(g, [&](std::size_t i, std::size_t j, const Edge&) {
    detail::for_each_arc(h, [&](std::size_t a, std::size_t b, const Edge&) {
      t(i * m + a, j * m + b) = p_trans(i, j) * p2_trans(a, b) * detail::inner(fg(i, j), fh(a, b));
    });
  });
  // Radius one is reported as divergent even when rounding lands just below it.
  const double rho = detail::dense_spectral_radius(t);
  if (rho >= 1.0 - 1e-10) {
    throw DivergenceError("marginalized_kernel: spectral radius of T_x is " + std::to_string(rho) + " >= 1");
  }
  DenseMatrix sys = -1.0 * t;
  for (std::size_t i = 0; i < n; ++i) sys(i, i) += 1.0;
  Vector x = dense_solve(sys, kron_vectors(e.p, e.p2));
  KernelResult r;
  r.method = Method::direct;
  r.iterations = 1;
  r.value = dot(kron_vectors(e.q, e.q2), x);
  r.wall_time = detail::elapsed_since(t0);
  return r;
}

/// The same kernel through the random walk machinery: the factors are
/// P (.) Phi_k and P' (.) Phi'_k and lambda is fixed to 1.
inline KernelResult marginalized_kernel_via_walk(const Graph& g, const Graph& h, const DenseMatrix& p_trans,
                                                 const DenseMatrix& p2_trans, KernelConfig cfg,
                                                 const std::optional<WalkEnds>& ends = std::nullopt) {
  detail::require_compatible(g, h, "marginalized_kernel");
  detail::require_same_labels(g, h, "marginalized_kernel");
  detail::require_transition_matrix(g, p_trans, "transition matrix P");
  detail::require_transition_matrix(h, p2_trans, "transition matrix P'");
  WalkEnds e = detail::resolve_ends(g, h, ends);
  FeatureMatrix fg = detail::edge_label_features(g), fh = detail::edge_label_features(h);
  SparseMatrix ps = SparseMatrix::from_dense(p_trans), ps2 = SparseMatrix::from_dense(p2_trans);
  std::vector<KronPair<SparseMatrix>> factors;
  for (std::size_t k = 0; k < fg.dim(); ++k) {
    SparseMatrix a = hadamard(ps, fg.component(k)), b = hadamard(ps2, fh.component(k));
    if (a.nnz() == 0 || b.nnz() == 0) continue;
    factors.push_back({std::move(a), std::move(b)});
  }
  if (factors.empty()) factors.push_back({SparseMatrix(g.n(), g.n()), SparseMatrix(h.n(), h.n())});
  ProductGraph pg{g.n(), h.n(), std::move(factors), kron_vectors(e.p, e.p2), kron_vectors(e.q, e.q2)};
  cfg.lambda = 1.0;
  cfg.measure = Measure::geometric;
  if (cfg.method == Method::spectral) cfg.method = Method::direct;
  return product_walk_kernel(pg, cfg);
}

}  // namespace walkernel

#endif  // WALKERNEL_RANDOM_WALK_HPP
