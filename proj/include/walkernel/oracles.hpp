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

// Brute-force reference computations and random input generators. Everything
// here takes the slow, obvious route so it stays independent of the library
// paths it checks; the unit tests and the verify suites share it.

#ifndef WALKERNEL_ORACLES_HPP
#define WALKERNEL_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "walkernel/feature_matrix.hpp"
#include "walkernel/graph.hpp"
#include "walkernel/linalg.hpp"

namespace walkernel::oracles {

inline DenseMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, double lo = -1.0,
                                 double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  DenseMatrix m(r, c);
  for (double& v : m.data()) v = u(rng);
  return m;
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (double& x : v) x = u(rng);
  return v;
}

inline DenseMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
  DenseMatrix a = random_matrix(rng, n, n);
  return 0.5 * (a + a.transpose());
}

// Entry-by-entry Kronecker product straight from the block definition.
inline DenseMatrix kron_by_definition(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t r = 0; r < c.rows(); ++r)
    for (std::size_t s = 0; s < c.cols(); ++s)
      c(r, s) = a(r / b.rows(), s / b.cols()) * b(r % b.rows(), s % b.cols());
  return c;
}

inline Vector matvec_by_definition(const DenseMatrix& m, const Vector& x) {
  Vector y(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
  return y;
}

// Gaussian elimination with partial pivoting, written out longhand.
inline Vector gaussian_solve(DenseMatrix a, Vector b) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  Vector x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

// vec(M) = (I - T^T (x) S)^-1 vec(M0)
inline DenseMatrix stein_vectorized_oracle(const DenseMatrix& s, const DenseMatrix& t, const DenseMatrix& m0) {
  DenseMatrix op = DenseMatrix::identity(s.rows() * t.rows()) - kron_by_definition(t.transpose(), s);
  return unvec(gaussian_solve(op, vec(m0)), m0.rows(), m0.cols());
}

// Maximum eigenvalue magnitude of a general real matrix via Eigen's
// nonsymmetric solver.
inline double max_abs_eigenvalue(const DenseMatrix& a) {
  Eigen::MatrixXd m = a.eigen();
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  double best = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) best = std::max(best, std::abs(es.eigenvalues()(i)));
  return best;
}

inline DenseMatrix matrix_power(const DenseMatrix& a, int k) {
  DenseMatrix r = DenseMatrix::identity(a.rows());
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

// Max over all permutations (injections of the shorter list) of sum kappa.
template <class Kappa>
double assignment_by_permutation(std::vector<double> x, std::vector<double> y, Kappa kappa) {
  if (x.size() > y.size()) std::swap(x, y);
  std::vector<std::size_t> perm(y.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = -INFINITY;
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += kappa(x[i], y[perm[i]]);
    best = std::max(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Erdos-Renyi style graph with a random spanning path added so that every
// vertex has an edge (n >= 2). Weights are uniform in [0.5, 2) when
// weighted; labels are uniform in [0, d) when d > 0.
inline Graph random_test_graph(std::mt19937_64& rng, std::size_t n, double edge_prob, bool weighted = false,
                               std::size_t d = 0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<bool> present(n * n, false);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t k = 0; k + 1 < n; ++k) pairs.emplace_back(order[k], order[k + 1]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (u(rng) < edge_prob) pairs.emplace_back(i, j);
  std::vector<Edge> edges;
  for (auto [i, j] : pairs) {
    std::size_t a = std::min(i, j), b = std::max(i, j);
    if (present[a * n + b]) continue;
    present[a * n + b] = true;
    Edge e{a, b, weighted ? 0.5 + 1.5 * u(rng) : 1.0, 0, {}};
    if (d > 0) e.label = static_cast<std::size_t>(u(rng) * static_cast<double>(d)) % d;
    edges.push_back(e);
  }
  if (d > 0) return Graph(n, std::move(edges), false, LabelMode::discrete, d);
  return Graph(n, std::move(edges));
}

inline FeatureMatrix random_feature_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, std::size_t d) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> data(r * c * d);
  for (double& x : data) x = u(rng);
  return FeatureMatrix(r, c, d, std::move(data));
}

// Dense matrix with entry (i,j) = weight of edge i -> j, from the edge list.
inline DenseMatrix adjacency_by_definition(const Graph& g) {
  DenseMatrix a(g.n(), g.n());
  for (const Edge& e : g.edges()) {
    a(e.source, e.target) = e.weight;
    if (!g.directed()) a(e.target, e.source) = e.weight;
  }
  return a;
}

// Row i holds the weights of arcs i -> j, restricted to edges with the given
// label when one is passed, divided by the full weighted degree of i when
// normalize is set. Isolated rows stay zero.
inline DenseMatrix transition_by_definition(const Graph& g, bool normalize, long label = -1) {
  DenseMatrix a(g.n(), g.n());
  std::vector<double> deg(g.n(), 0.0);
  for (const Edge& e : g.edges()) {
    deg[e.source] += e.weight;
    if (!g.directed()) deg[e.target] += e.weight;
    if (label >= 0 && e.label != static_cast<std::size_t>(label)) continue;
    a(e.source, e.target) = e.weight;
    if (!g.directed()) a(e.target, e.source) = e.weight;
  }
  if (normalize)
    for (std::size_t i = 0; i < g.n(); ++i)
      for (std::size_t j = 0; j < g.n(); ++j)
        if (deg[i] > 0.0) a(i, j) /= deg[i];
  return a;
}

// Direct product weight: kron of the transition matrices, summed over
// labels for discrete-labeled graphs.
inline DenseMatrix product_weight_by_definition(const Graph& g, const Graph& h, bool normalize) {
  if (g.label_mode() != LabelMode::discrete) {
    return kron_by_definition(transition_by_definition(g, normalize), transition_by_definition(h, normalize));
  }
  DenseMatrix w(g.n() * h.n(), g.n() * h.n());
  for (std::size_t l = 0; l < g.label_dim(); ++l) {
    w = w + kron_by_definition(transition_by_definition(g, normalize, static_cast<long>(l)),
                               transition_by_definition(h, normalize, static_cast<long>(l)));
  }
  return w;
}

inline DenseMatrix kron_sum_by_definition(const DenseMatrix& a, const DenseMatrix& b) {
  return kron_by_definition(a, DenseMatrix::identity(b.rows())) + kron_by_definition(DenseMatrix::identity(a.rows()), b);
}

// Outer product flattened with the left factor as the slow index.
inline Vector kron_vector_by_definition(const Vector& a, const Vector& b) {
  Vector out;
  for (double x : a)
    for (double y : b) out.push_back(x * y);
  return out;
}

// q^T (I - lambda W)^-1 p by Gaussian elimination.
inline double resolvent_form(const DenseMatrix& w, double lambda, const Vector& p, const Vector& q) {
  DenseMatrix m = DenseMatrix::identity(w.rows()) - lambda * w;
  Vector x = gaussian_solve(m, p);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += q[i] * x[i];
  return s;
}

inline double bilinear(const DenseMatrix& m, const Vector& p, const Vector& q) {
  Vector x = matvec_by_definition(m, p);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += q[i] * x[i];
  return s;
}

// Positive entries summing to one.
inline Vector random_distribution(std::mt19937_64& rng, std::size_t n) {
  Vector v = random_vector(rng, n, 0.1, 1.0);
  double s = 0.0;
  for (double x : v) s += x;
  for (double& x : v) x /= s;
  return v;
}

}  // namespace walkernel::oracles

#endif  // WALKERNEL_ORACLES_HPP
