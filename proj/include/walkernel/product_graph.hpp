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


#ifndef WALKERNEL_PRODUCT_GRAPH_HPP
#define WALKERNEL_PRODUCT_GRAPH_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "walkernel/errors.hpp"
#include "walkernel/graph.hpp"
#include "walkernel/kronecker.hpp"
#include "walkernel/sparse_matrix.hpp"

namespace walkernel {

/// p (x) p': entry i*n' + i' is p_i p'_i'.
inline Vector kron_vectors(std::span<const double> a, std::span<const double> b) {
  Vector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

/// Weight matrix of a product graph kept as a sum of Kronecker products,
/// with the start and stop distributions over vertex pairs (i,i') at index
/// i*n' + i'. The explicit matrix is materialized only on request.
struct ProductGraph {
  std::size_t left_n = 0;
  std::size_t right_n = 0;
  std::vector<KronPair<SparseMatrix>> factors;
  Vector start;
  Vector stop;

  std::size_t n() const noexcept { return left_n * right_n; }

  Vector apply(std::span<const double> x) const { return sum_kron_mat_vec(std::span(factors), x); }

  SparseMatrix explicit_weight() const { return explicit_kron_sum_of_products(std::span(factors)); }
};

struct ProductOptions {
  /// Use D^-1 A (true) or the raw weights (false) inside each factor.
  bool degree_normalize = true;
};

namespace detail {

inline void require_compatible(const Graph& g, const Graph& h, const char* what) {
  if (g.directed() != h.directed()) throw InvalidArgument(std::string(what) + ": directedness differs");
}

inline void require_same_labels(const Graph& g, const Graph& h, const char* what) {
  if (g.label_mode() != h.label_mode() || g.label_dim() != h.label_dim()) {
    throw InvalidArgument(std::string(what) + ": label modes differ (" + to_string(g.label_mode()) + "/" +
                          std::to_string(g.label_dim()) + " vs " + to_string(h.label_mode()) + "/" +
                          std::to_string(h.label_dim()) + ")");
  }
}

inline ProductGraph with_uniform_ends(std::size_t n, std::size_t m, std::vector<KronPair<SparseMatrix>> factors) {
  ProductGraph pg{n, m, std::move(factors), {}, {}};
  if (n * m > 0) {
    pg.start.assign(n * m, 1.0 / static_cast<double>(n * m));
    pg.stop = pg.start;
  }
  return pg;
}

}  // namespace detail

/// The per-feature factors (Phi_k, Phi'_k) with W_x = sum_k Phi_k (x) Phi'_k.
/// For discrete labels Phi_k is the label-filtered adjacency of label k.
inline std::vector<KronPair<SparseMatrix>> direct_product_factors(const Graph& g, const Graph& h,
                                                                 const ProductOptions& opts = {}) {
  detail::require_compatible(g, h, "direct_product");
  detail::require_same_labels(g, h, "direct_product");
  if (g.label_mode() != LabelMode::vector) {
    // Sparse assembly; same matrices as the components of feature_matrix.
    auto transition = [&](const Graph& x) {
      SparseMatrix a = adjacency(x);
      return opts.degree_normalize ? a.row_scaled(detail::inverse_degrees(a.row_sums())) : a;
    };
    std::vector<KronPair<SparseMatrix>> factors;
    if (g.label_mode() == LabelMode::none) {
      SparseMatrix a = transition(g), b = transition(h);
      if (a.nnz() > 0 && b.nnz() > 0) factors.push_back({std::move(a), std::move(b)});
    } else {
      for (std::size_t k = 0; k < g.label_dim(); ++k) {
        SparseMatrix a = label_filtered_adjacency(g, k, opts.degree_normalize);
        SparseMatrix b = label_filtered_adjacency(h, k, opts.degree_normalize);
        if (a.nnz() == 0 || b.nnz() == 0) continue;
        factors.push_back({std::move(a), std::move(b)});
      }
    }
    if (factors.empty()) factors.push_back({SparseMatrix(g.n(), g.n()), SparseMatrix(h.n(), h.n())});
    return factors;
  }
  FeatureMatrix fg = feature_matrix(g, opts.degree_normalize);
  FeatureMatrix fh = feature_matrix(h, opts.degree_normalize);
  std::vector<KronPair<SparseMatrix>> factors;
  for (std::size_t k = 0; k < fg.dim(); ++k) {
    SparseMatrix a = fg.component(k), b = fh.component(k);
    if (a.nnz() == 0 || b.nnz() == 0) continue;
    factors.push_back({std::move(a), std::move(b)});
  }
  if (factors.empty()) factors.push_back({SparseMatrix(g.n(), g.n()), SparseMatrix(h.n(), h.n())});
  return factors;
}

/// Direct product: (i,i') ~ (j,j') iff i ~ j and i' ~ j', weighted by
/// matching edge features.
inline ProductGraph direct_product(const Graph& g, const Graph& h, const ProductOptions& opts = {}) {
  return detail::with_uniform_ends(g.n(), h.n(), direct_product_factors(g, h, opts));
}

/// Cartesian product: (i,i') ~ (j,j') iff i = j and i' ~ j', or i ~ j and
/// i' = j'. The weight is the Kronecker sum of the factor matrices.
inline ProductGraph cartesian_product(const Graph& g, const Graph& h, const ProductOptions& opts = {}) {
  detail::require_compatible(g, h, "cartesian_product");
  SparseMatrix a = opts.degree_normalize ? normalized_adjacency(g) : adjacency(g);
  SparseMatrix b = opts.degree_normalize ? normalized_adjacency(h) : adjacency(h);
  std::vector<KronPair<SparseMatrix>> factors;
  factors.push_back({std::move(a), SparseMatrix::identity(h.n())});
  factors.push_back({SparseMatrix::identity(g.n()), std::move(b)});
  return detail::with_uniform_ends(g.n(), h.n(), std::move(factors));
}

/// Direct product graph enumerated edge by edge; weights multiply.
inline Graph direct_product_graph(const Graph& g, const Graph& h) {
  detail::require_compatible(g, h, "direct_product_graph");
  const std::size_t m = h.n();
  std::vector<Edge> edges;
  detail::for_each_arc(g, [&](std::size_t i, std::size_t j, const Edge& e) {
    detail::for_each_arc(h, [&](std::size_t a, std::size_t b, const Edge& f) {
      edges.push_back({i * m + a, j * m + b, e.weight * f.weight, 0, {}});
    });
  });
  return Graph(g.n() * m, std::move(edges), g.directed());
}

/// Cartesian product graph enumerated edge by edge.
inline Graph cartesian_product_graph(const Graph& g, const Graph& h) {
  detail::require_compatible(g, h, "cartesian_product_graph");
  const std::size_t m = h.n();
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    for (std::size_t a = 0; a < m; ++a) edges.push_back({e.source * m + a, e.target * m + a, e.weight, 0, {}});
  for (std::size_t i = 0; i < g.n(); ++i)
    for (const Edge& f : h.edges()) edges.push_back({i * m + f.source, i * m + f.target, f.weight, 0, {}});
  return Graph(g.n() * m, std::move(edges), g.directed());
}

}  // namespace walkernel

#endif  // WALKERNEL_PRODUCT_GRAPH_HPP
