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


#ifndef WALKERNEL_GRAPH_SPECTRUM_HPP
#define WALKERNEL_GRAPH_SPECTRUM_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "walkernel/dense_matrix.hpp"
#include "walkernel/errors.hpp"
#include "walkernel/graph.hpp"
#include "walkernel/spectral.hpp"

namespace walkernel {

/// Eigensystem of a matrix W that is diagonally similar to a symmetric one:
/// W = diag(scale) * V diag(values) V^T * diag(scale)^-1.
struct SymmetrizedSpectrum {
  Vector values;
  DenseMatrix vectors;
  Vector scale;
};

enum class FactorWeight { adjacency, laplacian };

namespace detail {

inline SymmetrizedSpectrum symmetrized(const DenseMatrix& symmetric, Vector scale) {
  EigenDecomposition e = sym_eig(symmetric);
  return {std::move(e.eigenvalues), std::move(e.eigenvectors), std::move(scale)};
}

}  // namespace detail

/// The walk matrix itself: D^-1 A or I - D^-1 A with degree_normalize
/// (isolated vertices give zero rows of D^-1 A), else A or D - A.
inline SparseMatrix factor_matrix(const Graph& g, FactorWeight weight, bool degree_normalize) {
  if (!degree_normalize) return weight == FactorWeight::adjacency ? adjacency(g) : laplacian(g);
  SparseMatrix a = adjacency(g).row_scaled(detail::inverse_degrees(degrees(g)));
  if (weight == FactorWeight::adjacency) return a;
  return SparseMatrix::identity(g.n()) - a;
}

/// Spectrum of the walk matrix of an undirected graph. With
/// degree_normalize the adjacency weight is D^-1 A and the Laplacian weight
/// is I - D^-1 A, both similar to symmetric matrices through D^1/2;
/// otherwise the raw A or D - A is used. Isolated vertices contribute zero
/// rows to D^-1 A.
inline SymmetrizedSpectrum factor_spectrum(const Graph& g, FactorWeight weight, bool degree_normalize) {
  if (g.directed()) throw InvalidArgument("factor_spectrum: graph must be undirected");
  const std::size_t n = g.n();
  if (!degree_normalize) {
    DenseMatrix m = weight == FactorWeight::adjacency ? adjacency(g).to_dense() : laplacian(g).to_dense();
    return detail::symmetrized(m, Vector(n, 1.0));
  }
  DenseMatrix a = adjacency(g).to_dense();
  Vector deg = degrees(g);
  Vector scale(n, 1.0);
  for (std::size_t i = 0; i < n; ++i)
    if (deg[i] > 0.0) scale[i] = 1.0 / std::sqrt(deg[i]);
  DenseMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double v = a(i, j) * scale[i] * scale[j];
      s(i, j) = weight == FactorWeight::adjacency ? v : (i == j ? 1.0 : 0.0) - v;
    }
  return detail::symmetrized(s, std::move(scale));
}

/// The matrix W a spectrum describes; used for checks and dense oracles.
inline DenseMatrix reconstruct(const SymmetrizedSpectrum& sp) {
  const std::size_t n = sp.values.size();
  DenseMatrix w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += sp.vectors(i, k) * sp.values[k] * sp.vectors(j, k);
      w(i, j) = sp.scale[i] * acc / sp.scale[j];
    }
  return w;
}

/// q_x^T f(W, W') p_x where f acts on the product eigenvalue pairs and
/// p_x = p (x) p', q_x = q (x) q'. Costs O(n^2 + n'^2 + n n') after the
/// eigendecompositions.
template <class F>
double spectral_pair_form(const SymmetrizedSpectrum& a, const SymmetrizedSpectrum& b, std::span<const double> p,
                          std::span<const double> q, std::span<const double> p2, std::span<const double> q2,
                          F&& f) {
  auto project = [](const SymmetrizedSpectrum& sp, std::span<const double> v, bool inverse) {
    const std::size_t n = sp.values.size();
    Vector out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = inverse ? v[i] / sp.scale[i] : v[i] * sp.scale[i];
      for (std::size_t k = 0; k < n; ++k) out[k] += sp.vectors(i, k) * w;
    }
    return out;
  };
  if (p.size() != a.values.size() || q.size() != a.values.size() || p2.size() != b.values.size() ||
      q2.size() != b.values.size()) {
    throw DimensionError("spectral_pair_form: distribution lengths do not match the graphs");
  }
  Vector qa = project(a, q, false), pa = project(a, p, true);
  Vector qb = project(b, q2, false), pb = project(b, p2, true);
  double total = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < b.values.size(); ++j) row += qb[j] * pb[j] * f(a.values[i], b.values[j]);
    total += qa[i] * pa[i] * row;
  }
  return total;
}

}  // namespace walkernel

#endif  // WALKERNEL_GRAPH_SPECTRUM_HPP
