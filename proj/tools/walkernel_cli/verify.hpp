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

// Property suites run by `walkernel verify`. Every suite compares a library
// route against an independent oracle on seeded random inputs and records
// each failing case with the seed and trial needed to reproduce it.

#ifndef WALKERNEL_CLI_VERIFY_HPP
#define WALKERNEL_CLI_VERIFY_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "walkernel/errors.hpp"
#include "walkernel/feature_matrix.hpp"
#include "walkernel/generators.hpp"
#include "walkernel/graph.hpp"
#include "walkernel/kernels.hpp"
#include "walkernel/kronecker.hpp"
#include "walkernel/oracles.hpp"
#include "walkernel/semiring.hpp"
#include "walkernel/sparse_matrix.hpp"
#include "walkernel/transducer.hpp"

namespace walkernel::cli {

struct SuiteReport {
  std::string name;
  std::uint64_t seed = 0;
  bool pass = true;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  double seconds = 0.0;

  /// Records one comparison; keeps the first few failure descriptions.
  void check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    pass = false;
    if (failures.size() < 20) failures.push_back(what);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

struct Suite {
  std::string name;
  std::string description;
  std::function<SuiteReport(std::uint64_t)> run;
};

namespace detail {

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)) || a == b;
}

inline bool scaled_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

inline std::string fmt(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

inline std::string where(std::uint64_t seed, std::size_t trial) {
  return "seed " + std::to_string(seed) + " trial " + std::to_string(trial);
}

inline std::string mismatch(const std::string& what, double got, double want) {
  return what + ": got " + fmt(got) + ", expected " + fmt(want) + " (diff " + fmt(std::abs(got - want)) + ")";
}

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline KernelConfig config(Method m, double lambda, bool normalize = true) {
  KernelConfig c;
  c.method = m;
  c.lambda = lambda;
  c.degree_normalize = normalize;
  c.tol = 1e-10;
  c.max_iter = 5000;
  return c;
}

inline std::size_t draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

template <class Body>
SuiteReport timed(const std::string& name, std::uint64_t seed, Body&& body) {
  SuiteReport r;
  r.name = name;
  r.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.check(false, std::string("unexpected exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline DenseMatrix column(const DenseMatrix& m) {
  auto v = vec(m);
  return unvec(v, v.size(), 1);
}

}  // namespace detail

// ---------------------------------------------------------------- suites

/// direct, sylvester, cg and fixed_point agree on every pair of 20 SET-2
/// graphs with n = 32 (fills cycling 10..100%) at lambda = 0.001.
inline SuiteReport verify_cross_method(std::uint64_t seed, std::size_t count = 20, std::size_t n = 32,
                                       double lambda = 1e-3, double rel_tol = 1e-6, double budget_secs = 60.0) {
  return detail::timed("cross-method", seed, [&](SuiteReport& r) {
    std::vector<Graph> graphs;
    for (std::size_t i = 0; i < count; ++i) {
      const double fill = 10.0 * static_cast<double>(1 + i % 10);
      graphs.push_back(random_graph_set2(n, fill, RngSeed{seed + i}));
    }
    const Method methods[] = {Method::direct, Method::sylvester, Method::cg, Method::fixed_point};
    double worst = 0.0;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i; j < count; ++j) {
        const double ref = random_walk_kernel(graphs[i], graphs[j], detail::config(Method::direct, lambda)).value;
        for (Method m : methods) {
          if (m == Method::direct) continue;
          KernelResult v = random_walk_kernel(graphs[i], graphs[j], detail::config(m, lambda));
          const double rel = std::abs(v.value - ref) / std::abs(ref);
          worst = std::max(worst, rel);
          r.check(v.converged && rel <= rel_tol,
                  detail::mismatch(std::string(to_string(m)) + " vs direct on pair (" + std::to_string(i) + "," +
                                       std::to_string(j) + ") " + detail::where(seed, i),
                                   v.value, ref));
        }
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.check(secs < budget_secs, "runtime " + detail::fmt(secs) + " s exceeds " + detail::fmt(budget_secs) + " s");
    r.note("max relative difference " + detail::fmt(worst) + " over " + std::to_string(count * (count + 1) / 2) +
           " pairs in " + detail::fmt(secs) + " s");
  });
}

/// Powers of the direct-product weight factor into outer products of the
/// factor powers, and walk-series terms factor into per-graph bilinear forms.
inline SuiteReport verify_walk_identities(std::uint64_t seed, std::size_t pairs = 100, std::size_t max_n = 10,
                                          int max_k = 5, double tol = 1e-10) {
  return detail::timed("walk-identities", seed, [&](SuiteReport& r) {
    std::mt19937_64 rng(seed);
    for (std::size_t trial = 0; trial < pairs; ++trial) {
      const std::size_t n = detail::draw(rng, 2, max_n), m = detail::draw(rng, 2, max_n);
      const bool normalize = trial % 2 == 0;
      Graph g = oracles::random_test_graph(rng, n, 0.4), h = oracles::random_test_graph(rng, m, 0.4);
      KernelConfig cfg;
      cfg.degree_normalize = normalize;
      WalkEnds e{oracles::random_distribution(rng, n), oracles::random_distribution(rng, n),
                 oracles::random_distribution(rng, m), oracles::random_distribution(rng, m)};
      ProductGraph pg = walk_product(g, h, cfg, e);
      Vector terms = walk_series_terms(pg, static_cast<std::size_t>(max_k));
      DenseMatrix a = oracles::transition_by_definition(g, normalize), b = oracles::transition_by_definition(h, normalize);
      Vector p = oracles::random_vector(rng, n), p2 = oracles::random_vector(rng, m);
      Vector x = oracles::kron_vector_by_definition(p, p2), ap = p, bp = p2;
      for (int k = 1; k <= max_k; ++k) {
        x = pg.apply(x);
        ap = oracles::matvec_by_definition(a, ap);
        bp = oracles::matvec_by_definition(b, bp);
        DenseMatrix outer(m, n);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < n; ++j) outer(i, j) = bp[i] * ap[j];
        Vector v = vec(outer);
        const double scale = std::max(1.0, detail::max_abs(v));
        const double err = max_abs_diff(x, v);
        r.check(err <= tol * scale, "power outer-product identity k=" + std::to_string(k) + " " +
                                        detail::where(seed, trial) + ": error " + detail::fmt(err));
        const double left = oracles::bilinear(oracles::matrix_power(a, k), e.p, e.q);
        const double right = oracles::bilinear(oracles::matrix_power(b, k), e.p2, e.q2);
        r.check(detail::scaled_close(terms[k], left * right, tol),
                detail::mismatch("term factorization k=" + std::to_string(k) + " " + detail::where(seed, trial),
                                 terms[k], left * right));
      }
    }
  });
}

/// Spectral geometric kernel against the explicit matrix exponential.
inline SuiteReport verify_geometric(std::uint64_t seed, std::size_t pairs = 50, std::size_t max_n = 16,
                                    double tol = 1e-8) {
  return detail::timed("geometric", seed, [&](SuiteReport& r) {
    std::mt19937_64 rng(seed);
    const double lambdas[] = {0.1, 0.5, 1.0, -0.5};
    for (std::size_t trial = 0; trial < pairs; ++trial) {
      const std::size_t n = detail::draw(rng, 2, max_n), m = detail::draw(rng, 2, max_n);
      Graph g = oracles::random_test_graph(rng, n, 0.3, trial % 3 == 1);
      Graph h = oracles::random_test_graph(rng, m, 0.3, trial % 3 == 1);
      const bool normalize = trial % 2 == 0;
      const double lambda = lambdas[trial % 4];
      const double fast = geometric_kernel(g, h, lambda, normalize);
      const double slow = geometric_kernel_reference(g, h, lambda, normalize);
      r.check(detail::rel_close(fast, slow, tol), detail::mismatch("spectral vs matrix exponential " +
                                                                       detail::where(seed, trial),
                                                                   fast, slow));
    }
    const Graph k2 = Graph::from_pairs(2, {{0, 1}});
    const double closed = 4.0 * std::exp(0.1), v = geometric_kernel(k2, k2, 0.1);
    r.check(std::abs(v - closed) <= 1e-10, detail::mismatch("K2 x K2 at lambda 0.1", v, closed));
  });
}

/// Cartesian powers W^k p = sum_i C(k,i) vec[L'^(k-i) p' (L^i p)^T] for the raw
/// Laplacian W = L (+) L'.
inline SuiteReport verify_binomial_expansion(std::uint64_t seed, std::size_t pairs = 50, std::size_t max_n = 8,
                                             int max_k = 6, double tol = 1e-9) {
  return detail::timed("binomial-expansion", seed, [&](SuiteReport& r) {
    std::mt19937_64 rng(seed);
    for (std::size_t trial = 0; trial < pairs; ++trial) {
      const std::size_t n = detail::draw(rng, 2, max_n), m = detail::draw(rng, 2, max_n);
      Graph g = oracles::random_test_graph(rng, n, 0.5, trial % 2 == 1);
      Graph h = oracles::random_test_graph(rng, m, 0.5, trial % 2 == 1);
      ProductGraph pg = cartesian_walk_product(g, h, FactorWeight::laplacian, false);
      Vector p = oracles::random_vector(rng, n), p2 = oracles::random_vector(rng, m);
      DenseMatrix l = laplacian(g).to_dense(), l2 = laplacian(h).to_dense();
      Vector x = oracles::kron_vector_by_definition(p, p2);
      for (int k = 1; k <= max_k; ++k) {
        x = pg.apply(x);
        Vector expected(n * m, 0.0);
        for (int i = 0; i <= k; ++i) {
          Vector a = oracles::matvec_by_definition(oracles::matrix_power(l, i), p);
          Vector b = oracles::matvec_by_definition(oracles::matrix_power(l2, k - i), p2);
          for (std::size_t s = 0; s < n; ++s)
            for (std::size_t t = 0; t < m; ++t) expected[s * m + t] += oracles::binomial(k, i) * a[s] * b[t];
        }
        const double scale = std::max(1.0, detail::max_abs(expected));
        const double err = max_abs_diff(x, expected);
        r.check(err <= tol * scale, "binomial expansion k=" + std::to_string(k) + " " + detail::where(seed, trial) +
                                        ": error " + detail::fmt(err) + " at scale " + detail::fmt(scale));
      }
    }
  });
}

/// Laplacian-weight Cartesian kernel with uniform distributions: every term
/// q^T W^k p for k <= 6 and the kernel value itself vanish.
inline SuiteReport verify_diffusion_deficiency(std::uint64_t seed, std::size_t pairs = 30, std::size_t max_n = 10,
                                               int max_k = 6, double tol = 1e-12) {
  return detail::timed("diffusion-deficiency", seed, [&](SuiteReport& r) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (std::size_t trial = 0; trial < pairs; ++trial) {
      const std::size_t n = detail::draw(rng, 2, max_n), m = detail::draw(rng, 2, max_n);
      Graph g = oracles::random_test_graph(rng, n, 0.4, trial % 2 == 1);
      Graph h = oracles::random_test_graph(rng, m, 0.4, trial % 2 == 1);
      for (bool normalize : {true, false}) {
        ProductGraph pg = cartesian_walk_product(g, h, FactorWeight::laplacian, normalize);
        Vector x = pg.start;
        for (int k = 1; k <= max_k; ++k) {
          x = pg.apply(x);
          const double term = dot(pg.stop, x);
          worst = std::max(worst, std::abs(term));
          r.check(std::abs(term) <= tol, "term k=" + std::to_string(k) + " normalize=" + std::to_string(normalize) +
                                             " " + detail::where(seed, trial) + ": " + detail::fmt(term));
        }
        const double rho = oracles::max_abs_eigenvalue(pg.explicit_weight().to_dense());
        const double lambda = rho > 0.0 ? 0.5 / (rho * rho) : 0.1;
        for (Method method : {Method::direct, Method::fixed_point, Method::spectral}) {
          const double v =
              cartesian_walk_kernel(g, h, detail::config(method, lambda, normalize), FactorWeight::laplacian).value;
          worst = std::max(worst, std::abs(v));
          r.check(std::abs(v) <= tol, std::string("kernel via ") + to_string(method) + " normalize=" +
                                          std::to_string(normalize) + " " + detail::where(seed, trial) + ": " +
                                          detail::fmt(v));
        }
      }
    }
    r.note("largest magnitude " + detail::fmt(worst));
  });
}

namespace detail {

inline double random_weight(std::mt19937_64& rng, const Semiring& s) {
  if (s.name == "logarithmic") return std::uniform_real_distribution<double>(-2.0, 0.5)(rng);
  return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
}

inline WeightedTransducer random_transducer(std::mt19937_64& rng, const SemiringPtr& s, std::size_t states,
                                            std::size_t sigma) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Transition> ts;
  for (std::size_t i = 0; i < states; ++i)
    for (std::size_t a = 0; a < sigma; ++a)
      for (std::size_t b = 0; b < sigma; ++b)
        for (std::size_t j = 0; j < states; ++j)
          if (u(rng) < 0.6) ts.push_back({i, a, b, j, random_weight(rng, *s)});
  Vector p(states), q(states);
  for (double& x : p) x = random_weight(rng, *s);
  for (double& x : q) x = random_weight(rng, *s);
  return WeightedTransducer(s, states, sigma, std::move(ts), p, q);
}

/// The first `count` nonempty strings over {0, 1} in length-then-lexicographic order.
inline std::vector<Labels> short_strings(std::size_t count) {
  std::vector<Labels> out;
  for (std::size_t len = 1; out.size() < count; ++len)
    for (std::size_t code = 0; code < (std::size_t{1} << len) && out.size() < count; ++code) {
      Labels s(len);
      for (std::size_t k = 0; k < len; ++k) s[k] = (code >> (len - 1 - k)) & 1u;
      out.push_back(std::move(s));
    }
  return out;
}

}  // namespace detail

/// 10 x 10 Gram matrices of the graph kernels and of T o T^-1 rational
/// kernels are PSD; the diffusion vertex kernel is PSD and row-stochastic.
inline SuiteReport verify_psd(std::uint64_t seed, std::size_t count = 10, double rel_tol = 1e-8) {
  return detail::timed("psd", seed, [&](SuiteReport& r) {
    std::vector<Graph> graphs;
    for (std::size_t i = 0; i < count; ++i) graphs.push_back(random_graph_set1(2 + i % 2, RngSeed{seed + i}));
    using K = std::function<double(const Graph&, const Graph&)>;
    const std::vector<std::pair<std::string, K>> kernels = {
        {"random_walk",
         [](const Graph& a, const Graph& b) { return random_walk_kernel(a, b, detail::config(Method::direct, 0.5)).value; }},
        {"geometric", [](const Graph& a, const Graph& b) { return geometric_kernel(a, b, 0.5); }},
        {"cartesian_even",
         [](const Graph& a, const Graph& b) { return cartesian_walk_kernel(a, b, detail::config(Method::direct, 0.1)).value; }},
    };
    auto record = [&](const std::string& name, const PsdReport& rep) {
      r.check(rep.min_eigenvalue >= -rel_tol * std::max(rep.trace, 0.0),
              name + " Gram min eigenvalue " + detail::fmt(rep.min_eigenvalue) + " below -" + detail::fmt(rel_tol) +
                  " x trace " + detail::fmt(rep.trace) + " (seed " + std::to_string(seed) + ")");
      r.note(name + ": min eigenvalue " + detail::fmt(rep.min_eigenvalue) + ", trace " + detail::fmt(rep.trace));
    };
    for (const auto& [name, k] : kernels) record(name, psd_check(gram_matrix(k, graphs).values, rel_tol));
    r.note("cartesian_even uses the default configuration (D^-1 A weights, uniform start/stop); "
           "raw weights or non-uniform distributions can give an indefinite Gram matrix");

    std::mt19937_64 rng(seed);
    const std::vector<Labels> strings = detail::short_strings(count);
    for (SemiringKind kind : {SemiringKind::real, SemiringKind::logarithmic}) {
      WeightedTransducer t = detail::random_transducer(rng, semiring_instance(kind), 3, 2);
      WeightedTransducer tt = compose(t, inverse(t));
      auto g = gram_matrix<Labels>([&](const Labels& x, const Labels& y) { return rational_kernel(tt, x, y); },
                                   std::span<const Labels>(strings));
      record(std::string("rational T o T^-1 (") + to_string(kind) + ")", psd_check(g.values, rel_tol));
    }

    for (std::size_t trial = 0; trial < 3; ++trial) {
      Graph g = oracles::random_test_graph(rng, count, 0.3, trial % 2 == 1);
      const double t = 0.5 + static_cast<double>(trial);
      DenseMatrix k = diffusion_vertex_kernel(g, t);
      PsdReport rep = psd_check(k, 1e-9);
      r.check(rep.min_eigenvalue >= -1e-9 * std::max(rep.trace, 0.0),
              "diffusion kernel t=" + detail::fmt(t) + " min eigenvalue " + detail::fmt(rep.min_eigenvalue) + " " +
                  detail::where(seed, trial));
      r.check(max_abs_diff(k, k.transpose()) <= 1e-9, "diffusion kernel not symmetric " + detail::where(seed, trial));
      for (std::size_t i = 0; i < k.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < k.cols(); ++j) row += k(i, j);
        r.check(std::abs(row - 1.0) <= 1e-9,
                detail::mismatch("diffusion row " + std::to_string(i) + " sum " + detail::where(seed, trial), row, 1.0));
      }
    }
  });
}

/// Power sums through the composed graph automata equal the linear-algebra
/// walk series for k = 1..K.
inline SuiteReport verify_transducer_equivalence(std::uint64_t seed, std::size_t pairs = 20, std::size_t max_n = 16,
                                                 std::size_t k_max = 10, double tol = 1e-10) {
  return detail::timed("transducer-equivalence", seed, [&](SuiteReport& r) {
    std::mt19937_64 rng(seed);
    for (std::size_t trial = 0; trial < pairs; ++trial) {
      const std::size_t n = detail::draw(rng, 1, max_n), m = detail::draw(rng, 1, max_n);
      const bool normalize = trial % 2 == 0;
      Graph g = oracles::random_test_graph(rng, n, 0.3, trial % 3 == 2);
      Graph h = oracles::random_test_graph(rng, m, 0.3, trial % 3 == 2);
      EquivalenceReport rep = rw_equivalence_check(g, h, k_max, tol, normalize);
      r.check(rep.pass, detail::mismatch("power sum normalize=" + std::to_string(normalize) + " " +
                                             detail::where(seed, trial) + " max term error " +
                                             detail::fmt(rep.max_term_error),
                                         rep.automaton_sum, rep.walk_sum));
    }
  });
}

/// Closed-form marginalized kernel against the walk-kernel route with the
/// rescaled edge kernel and against a dense resolvent.
inline SuiteReport verify_marginalized(std::uint64_t seed, std::size_t pairs = 20, std::size_t max_n = 10,
                                       double tol = 1e-8) {
  return detail::timed("marginalized", seed, [&](SuiteReport& r) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> stay(0.5, 0.95);
    const std::size_t labels = 2;
    for (std::size_t trial = 0; trial < pairs; ++trial) {
      const std::size_t n = detail::draw(rng, 2, max_n), m = detail::draw(rng, 2, max_n);
      Graph g = oracles::random_test_graph(rng, n, 0.5, true, labels);
      Graph h = oracles::random_test_graph(rng, m, 0.5, true, labels);
      DenseMatrix p = stay(rng) * oracles::transition_by_definition(g, true);
      DenseMatrix p2 = stay(rng) * oracles::transition_by_definition(h, true);
      WalkEnds e{oracles::random_distribution(rng, n), oracles::random_distribution(rng, n),
                 oracles::random_distribution(rng, m), oracles::random_distribution(rng, m)};
      DenseMatrix t(n * m, n * m);
      for (std::size_t l = 0; l < labels; ++l) {
        DenseMatrix mg = oracles::transition_by_definition(g, false, static_cast<long>(l));
        DenseMatrix mh = oracles::transition_by_definition(h, false, static_cast<long>(l));
        DenseMatrix a(n, n), b(m, m);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) a(i, j) = mg(i, j) != 0.0 ? p(i, j) : 0.0;
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j) b(i, j) = mh(i, j) != 0.0 ? p2(i, j) : 0.0;
        t = t + oracles::kron_by_definition(a, b);
      }
      const double oracle = oracles::resolvent_form(t, 1.0, oracles::kron_vector_by_definition(e.p, e.p2),
                                                    oracles::kron_vector_by_definition(e.q, e.q2));
      const double closed = marginalized_kernel(g, h, p, p2, e).value;
      const double via_walk = marginalized_kernel_via_walk(g, h, p, p2, detail::config(Method::direct, 1.0), e).value;
      r.check(detail::rel_close(closed, via_walk, tol),
              detail::mismatch("closed form vs walk route " + detail::where(seed, trial), closed, via_walk));
      r.check(detail::rel_close(closed, oracle, tol),
              detail::mismatch("closed form vs dense resolvent " + detail::where(seed, trial), closed, oracle));
    }
  });
}

/// (n n')^2 times the truncated uniform walk series equals the truncated
/// entry sum of sum_k lambda^k W_x^k.
inline SuiteReport verify_gartner(std::uint64_t seed, std::size_t pairs = 30, std::size_t max_n = 8,
                                  std::size_t k_max = 6, double tol = 1e-8) {
  return detail::timed("gartner", seed, [&](SuiteReport& r) {
    std::mt19937_64 rng(seed);
    for (std::size_t trial = 0; trial < pairs; ++trial) {
      const std::size_t n = detail::draw(rng, 2, max_n), m = detail::draw(rng, 2, max_n);
      Graph g = oracles::random_test_graph(rng, n, 0.4), h = oracles::random_test_graph(rng, m, 0.4);
      const double lambda = trial % 2 == 0 ? 0.1 : 0.3;
      const double nn = static_cast<double>(n * m);
      const double lhs = gartner_kernel_reference(g, h, lambda, k_max);
      const double rhs = nn * nn * walk_series_reference(g, h, lambda, k_max, 1);
      DenseMatrix w = oracles::product_weight_by_definition(g, h, true);
      double entry_sum = 0.0;
      for (std::size_t j = 1; j <= k_max; ++j) {
        DenseMatrix wj = oracles::matrix_power(w, static_cast<int>(j));
        for (double v : wj.data()) entry_sum += std::pow(lambda, static_cast<double>(j)) * v;
      }
      r.check(detail::rel_close(lhs, rhs, tol),
              detail::mismatch("entry sum vs scaled walk series " + detail::where(seed, trial), lhs, rhs));
      r.check(detail::rel_close(lhs, entry_sum, tol),
              detail::mismatch("entry sum vs definition " + detail::where(seed, trial), lhs, entry_sum));
    }
  });
}

/// Semiring laws for all four instances and the log morphism push-through.
inline SuiteReport verify_semiring_axioms(std::uint64_t seed, std::size_t samples = 1000, double tol = 1e-9) {
  return detail::timed("semiring-axioms", seed, [&](SuiteReport& r) {
    for (SemiringKind kind : {SemiringKind::real, SemiringKind::boolean, SemiringKind::logarithmic, SemiringKind::tropical}) {
      const Semiring& s = *semiring_instance(kind);
      AxiomReport a = check_semiring_axioms(s, samples, seed);
      r.check(a.pass, std::string(to_string(kind)) + ": " + a.failure);
      if (s.morphism) {
        AxiomReport m = check_morphism(s, samples, seed + 1);
        r.check(m.pass, std::string(to_string(kind)) + " morphism: " + m.failure);
      }
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const SemiringPtr log = semiring_instance(SemiringKind::logarithmic);
    double worst = 0.0;
    for (std::size_t n = 1; n <= 6; ++n) {
      for (std::size_t trial = 0; trial < 10; ++trial) {
        auto matrix = [&] {
          std::vector<double> d(n * n);
          for (double& x : d) x = u(rng);
          return SemiringMatrix(log, n, n, std::move(d));
        };
        SemiringMatrix a = matrix(), b = matrix();
        Vector x(n);
        for (double& v : x) v = u(rng);
        PushThroughReport mv = morphism_pushthrough_check(a, x, tol), mm = morphism_pushthrough_check(a, b, tol);
        worst = std::max({worst, mv.max_error, mm.max_error});
        r.check(mv.pass, "log push-through mat-vec n=" + std::to_string(n) + " " + detail::where(seed, trial) +
                             ": error " + detail::fmt(mv.max_error));
        r.check(mm.pass, "log push-through mat-mat n=" + std::to_string(n) + " " + detail::where(seed, trial) +
                             ": error " + detail::fmt(mm.max_error));
      }
    }
    r.note("log push-through max error " + detail::fmt(worst));
  });
}

/// Searches for part-list instances whose optimal-assignment Gram matrix has
/// an eigenvalue below -1e-6 and prints the instance.
inline SuiteReport verify_assignment_counterexample(std::uint64_t seed, double threshold = -1e-6) {
  return detail::timed("assignment-npsd", seed, [&](SuiteReport& r) {
    CounterexampleSearch s;
    s.seed = seed;
    s.threshold = threshold;
    AssignmentCounterexample c = assignment_psd_counterexample(s);
    const double recomputed = sym_eig(c.gram).eigenvalues.front();
    r.check(recomputed < threshold, "min eigenvalue " + detail::fmt(recomputed) + " not below " + detail::fmt(threshold));
    std::ostringstream inst;
    inst << "instances (Gaussian part kernel sigma=" << c.sigma << ", search seed " << c.seed << ", trial " << c.trial
         << "):";
    for (const auto& parts : c.instances) {
      inst << " [";
      for (std::size_t k = 0; k < parts.size(); ++k) inst << (k ? " " : "") << parts[k];
      inst << "]";
    }
    r.note(inst.str());
    r.note("Gram min eigenvalue " + detail::fmt(recomputed));
  });
}

/// Kronecker, vec and Hadamard identities for real matrices and for
/// feature-valued matrices with feature dimension d <= 4.
inline SuiteReport verify_matrix_identities(std::uint64_t seed, std::size_t trials = 40, double real_tol = 1e-12,
                                            double feature_tol = 1e-10) {
  return detail::timed("matrix-identities", seed, [&](SuiteReport& r) {
    using detail::column;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> side(1, 6), dim(1, 4);
    auto real = [&](std::size_t rows, std::size_t cols) { return oracles::random_matrix(rng, rows, cols); };
    auto feat = [&](std::size_t rows, std::size_t cols, std::size_t d) {
      return oracles::random_feature_matrix(rng, rows, cols, d);
    };
    auto expect = [&](double err, double tol, const std::string& what, std::size_t trial) {
      r.check(err <= tol, what + " " + detail::where(seed, trial) + ": error " + detail::fmt(err));
    };
    for (std::size_t t = 0; t < trials; ++t) {
      const std::size_t n = side(rng), m = side(rng), p = side(rng), q = side(rng), d = dim(rng);
      const std::size_t o = side(rng), s = side(rng);
      {
        DenseMatrix a = real(n, m), b = real(m, p), c = real(p, q);
        expect(max_abs_diff(column(a * b * c), oracles::kron_by_definition(c.transpose(), a) * column(b)), real_tol,
               "vec(ABC) = (C^T x A) vec(B)", t);
      }
      {
        DenseMatrix a = real(n, m), b = real(p, q), c = real(m, o), e = real(q, s);
        expect(max_abs_diff(kron(a, b) * kron(c, e), kron(a * c, b * e)), real_tol, "mixed product", t);
      }
      {
        DenseMatrix a = real(n, m), b = real(p, q), c = real(n, m), e = real(p, q);
        expect(max_abs_diff(hadamard(kron(a, b), kron(c, e)), kron(hadamard(a, c), hadamard(b, e))), real_tol,
               "Hadamard of Kronecker products", t);
      }
      {
        DenseMatrix a = real(n, m), b = real(p, q);
        Vector x = oracles::random_vector(rng, m * q);
        Vector explicit_product = oracles::matvec_by_definition(oracles::kron_by_definition(a, b), x);
        const double scale = std::max(1.0, detail::max_abs(explicit_product));
        expect(max_abs_diff(kron_mat_vec(a, b, x), explicit_product) / scale, real_tol, "vec-trick dense mat-vec", t);
        expect(max_abs_diff(kron_mat_vec(SparseMatrix::from_dense(a), SparseMatrix::from_dense(b), x),
                            explicit_product) /
                   scale,
               real_tol, "vec-trick sparse mat-vec", t);
        DenseMatrix a2 = real(n, m), b2 = real(p, q);
        std::vector<KronPair<DenseMatrix>> terms{{a, b}, {a2, b2}};
        Vector summed = oracles::matvec_by_definition(
            oracles::kron_by_definition(a, b) + oracles::kron_by_definition(a2, b2), x);
        expect(max_abs_diff(sum_kron_mat_vec(terms, x), summed) / std::max(1.0, detail::max_abs(summed)), real_tol,
               "vec-trick sum of Kronecker products", t);
      }
      {
        DenseMatrix a = real(n, n), b = real(p, p), c = real(p, n);
        DenseMatrix rhs = b * c + c * a.transpose();
        expect(max_abs_diff(oracles::kron_sum_by_definition(a, b) * column(c), column(rhs)), real_tol,
               "Kronecker sum vec identity", t);
      }
      {
        DenseMatrix a = real(n, m), c = real(p, q);
        FeatureMatrix b = feat(m, p, d);
        expect(max_abs_diff(vec(a * b * c), kron(c.transpose(), a) * vec(b)), feature_tol, "vec(A B C), feature B", t);
      }
      {
        FeatureMatrix a = feat(n, m, d), c = feat(p, q, d);
        DenseMatrix b = real(m, p);
        expect(max_abs_diff(column((a * b) * c), kron(c.transpose(), a) * column(b)), feature_tol,
               "vec(A B C), feature A and C", t);
      }
      {
        FeatureMatrix a = feat(n, m, d);
        DenseMatrix b = real(m, p), c = real(p, q);
        expect(max_abs_diff(vec(a * b * c), kron(c.transpose(), a) * column(b)), feature_tol, "vec(A B C), feature A", t);
      }
      {
        DenseMatrix a = real(n, m), b = real(m, p);
        FeatureMatrix c = feat(p, q, d);
        expect(max_abs_diff(vec(a * b * c), kron(c.transpose(), a) * column(b)), feature_tol, "vec(A B C), feature C", t);
      }
      {
        FeatureMatrix a = feat(n, m, d), b = feat(m, p, d);
        DenseMatrix c = real(p, q);
        expect(max_abs_diff(column((a * b) * c), kron(c.transpose(), a) * vec(b)), feature_tol,
               "vec(A B C), feature A and B", t);
      }
      {
        DenseMatrix a = real(n, m);
        FeatureMatrix b = feat(m, p, d), c = feat(p, q, d);
        expect(max_abs_diff(column((a * b) * c), kron(c.transpose(), a) * vec(b)), feature_tol,
               "vec(A B C), feature B and C", t);
      }
      {
        FeatureMatrix a = feat(n, m, d), b = feat(p, q, d);
        DenseMatrix c = real(m, o), e = real(q, s);
        expect(max_abs_diff(kron(a, b) * kron(c, e), kron(a * c, b * e)), feature_tol, "mixed product, feature left",
               t);
        DenseMatrix b2 = real(p, q), e2 = real(q, s);
        FeatureMatrix c2 = feat(m, o, d);
        expect(max_abs_diff(kron(a, b2) * kron(c2, e2), kron(a * c2, b2 * e2)), feature_tol,
               "mixed product, heterogeneous", t);
      }
      {
        FeatureMatrix a = feat(n, m, d), b = feat(p, q, d), c = feat(q, m, d);
        DenseMatrix ib = identity_like(p, q), ia = identity_like(n, m);
        DenseMatrix rhs = (ib * c) * a.transpose() + (b * c) * ia.transpose();
        expect(max_abs_diff(kron_sum(a, b) * vec(c), column(rhs)), feature_tol, "Kronecker sum, all feature", t);
      }
      {
        FeatureMatrix a = feat(n, m, d), b = feat(p, q, d);
        DenseMatrix c = real(q, m);
        DenseMatrix ib = identity_like(p, q), ia = identity_like(n, m);
        FeatureMatrix rhs = (ib * c) * a.transpose() + b * (c * ia.transpose());
        expect(max_abs_diff(kron_sum(a, b) * column(c), vec(rhs)), feature_tol, "Kronecker sum, feature on real", t);
      }
      {
        DenseMatrix a = real(n, m), b = real(p, q);
        FeatureMatrix c = feat(q, m, d);
        DenseMatrix ib = identity_like(p, q), ia = identity_like(n, m);
        DenseMatrix ks = kron(a, ib) + kron(ia, b);
        FeatureMatrix rhs = ib * c * a.transpose() + b * c * ia.transpose();
        expect(max_abs_diff(ks * vec(c), vec(rhs)), feature_tol, "Kronecker sum, real on feature", t);
      }
      {
        FeatureMatrix a = feat(n, m, d), b = feat(p, q, d);
        DenseMatrix c = real(n, m), e = real(p, q);
        expect(max_abs_diff(hadamard(kron(a, b), kron(c, e)), kron(hadamard(a, c), hadamard(b, e))), feature_tol,
               "Hadamard of feature Kronecker products", t);
        FeatureMatrix a2 = feat(n, m, d);
        DenseMatrix b2 = real(p, q);
        expect(max_abs_diff(hadamard(kron(a, b2), kron(a2, e)), kron(hadamard(a, a2), hadamard(b2, e))), feature_tol,
               "Hadamard of heterogeneous Kronecker products", t);
      }
    }
  });
}

// ---------------------------------------------------------------- registry

inline const std::vector<Suite>& verify_suites() {
  static const std::vector<Suite> suites = {
      {"cross-method", "direct, sylvester, cg and fixed_point agree on 20 SET-2 graphs (n=32)",
       [](std::uint64_t s) { return verify_cross_method(s); }},
      {"walk-identities", "product-walk powers factor into per-graph outer products and bilinear forms",
       [](std::uint64_t s) { return verify_walk_identities(s); }},
      {"geometric", "spectral geometric kernel matches the matrix-exponential oracle",
       [](std::uint64_t s) { return verify_geometric(s); }},
      {"binomial-expansion", "Cartesian Laplacian powers expand binomially",
       [](std::uint64_t s) { return verify_binomial_expansion(s); }},
      {"diffusion-deficiency", "Laplacian Cartesian kernel with uniform ends vanishes term by term",
       [](std::uint64_t s) { return verify_diffusion_deficiency(s); }},
      {"psd", "Gram matrices of the graph and rational kernels are PSD; diffusion kernel is row-stochastic",
       [](std::uint64_t s) { return verify_psd(s); }},
      {"transducer-equivalence", "composed graph automata reproduce the walk power sums",
       [](std::uint64_t s) { return verify_transducer_equivalence(s); }},
      {"marginalized", "closed-form marginalized kernel matches the walk route and a dense resolvent",
       [](std::uint64_t s) { return verify_marginalized(s); }},
      {"gartner", "entry-sum walk kernel equals the scaled uniform walk series",
       [](std::uint64_t s) { return verify_gartner(s); }},
      {"semiring-axioms", "semiring laws for all instances and log morphism push-through",
       [](std::uint64_t s) { return verify_semiring_axioms(s); }},
      {"assignment-npsd", "optimal-assignment Gram matrix with a negative eigenvalue",
       [](std::uint64_t s) { return verify_assignment_counterexample(s); }},
      {"matrix-identities", "Kronecker, vec and Hadamard identities for real and feature matrices",
       [](std::uint64_t s) { return verify_matrix_identities(s); }},
  };
  return suites;
}

inline const Suite* find_suite(const std::string& name) {
  for (const Suite& s : verify_suites())
    if (s.name == name) return &s;
  return nullptr;
}

inline std::string format_report(const SuiteReport& r) {
  std::ostringstream out;
  out << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks, seed " << r.seed << ", ";
  out.precision(3);
  out << r.seconds << " s)\n";
  for (const auto& n : r.notes) out << "  note: " << n << "\n";
  for (const auto& f : r.failures) out << "  failure: " << f << "\n";
  if (!r.pass) out << "  reproduce: walkernel verify " << r.name << " --seed " << r.seed << "\n";
  return out.str();
}

}  // namespace walkernel::cli

#endif  // WALKERNEL_CLI_VERIFY_HPP
