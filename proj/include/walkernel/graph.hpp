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


#ifndef WALKERNEL_GRAPH_HPP
#define WALKERNEL_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "walkernel/dense_matrix.hpp"
#include "walkernel/errors.hpp"
#include "walkernel/feature_matrix.hpp"
#include "walkernel/sparse_matrix.hpp"

namespace walkernel {

enum class LabelMode { none, discrete, vector };

inline const char* to_string(LabelMode m) noexcept {
  switch (m) {
    case LabelMode::none: return "none";
    case LabelMode::discrete: return "discrete";
    case LabelMode::vector: return "vector";
  }
  return "none";
}

struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;
  double weight = 1.0;
  /// Label id in [0, d) for discrete graphs.
  std::size_t label = 0;
  /// Feature vector of length d for vector-labeled graphs.
  std::vector<double> features;

  bool operator==(const Edge&) const = default;
};

/// Immutable weighted graph without self-loops. Undirected edges are stored
/// once with source < target; lookups work in either orientation.
class Graph {
 public:
  Graph() = default;

  Graph(std::size_t n, std::vector<Edge> edges, bool directed = false, LabelMode mode = LabelMode::none,
        std::size_t label_dim = 0)
      : n_(n), directed_(directed), mode_(mode), dim_(mode == LabelMode::none ? 0 : label_dim) {
    if (mode != LabelMode::none && label_dim == 0) {
      throw InvalidArgument("Graph: labeled graph needs a label dimension d >= 1");
    }
    for (auto& e : edges) {
      validate(e);
      if (!directed_ && e.source > e.target) std::swap(e.source, e.target);
      if (mode_ != LabelMode::discrete) e.label = 0;
      if (mode_ != LabelMode::vector) e.features.clear();
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return std::tie(a.source, a.target) < std::tie(b.source, b.target);
    });
    for (auto& e : edges) {
      if (!edges_.empty() && edges_.back().source == e.source && edges_.back().target == e.target) {
        if (!(edges_.back() == e)) {
          throw InvalidArgument("Graph: conflicting duplicate edge (" + std::to_string(e.source) + "," +
                                std::to_string(e.target) + ")");
        }
        continue;
      }
      edges_.push_back(std::move(e));
    }
  }

  /// Unit-weight unlabeled graph from vertex pairs.
  static Graph from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                          bool directed = false) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [i, j] : pairs) edges.push_back({i, j, 1.0, 0, {}});
    return Graph(n, std::move(edges), directed);
  }

  std::size_t n() const noexcept { return n_; }
  bool directed() const noexcept { return directed_; }
  LabelMode label_mode() const noexcept { return mode_; }
  /// Alphabet size (discrete) or feature length (vector); 0 when unlabeled.
  std::size_t label_dim() const noexcept { return dim_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// The edge joining i to j, or nullptr.
  const Edge* find_edge(std::size_t i, std::size_t j) const noexcept {
    if (!directed_ && i > j) std::swap(i, j);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{i, j}, [](const Edge& e, auto key) {
      return std::pair{e.source, e.target} < key;
    });
    if (it == edges_.end() || it->source != i || it->target != j) return nullptr;
    return &*it;
  }
  bool has_edge(std::size_t i, std::size_t j) const noexcept { return find_edge(i, j) != nullptr; }

  bool operator==(const Graph&) const = default;

 private:
  void validate(const Edge& e) const {
    const std::string where = "Graph: edge (" + std::to_string(e.source) + "," + std::to_string(e.target) + ")";
    if (e.source >= n_ || e.target >= n_) throw InvalidArgument(where + " has a vertex outside [0, " + std::to_string(n_) + ")");
    if (e.source == e.target) throw InvalidArgument(where + " is a self-loop");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) throw InvalidArgument(where + " needs a finite positive weight");
    if (mode_ == LabelMode::discrete && e.label >= dim_) {
      throw InvalidArgument(where + " label " + std::to_string(e.label) + " outside alphabet of size " +
                            std::to_string(dim_));
    }
    if (mode_ == LabelMode::vector) {
      if (e.features.size() != dim_) throw InvalidArgument(where + " feature vector length differs from d");
      detail::require_finite(e.features, "Graph edge features");
    }
  }

  std::size_t n_ = 0;
  bool directed_ = false;
  LabelMode mode_ = LabelMode::none;
  std::size_t dim_ = 0;
  std::vector<Edge> edges_;
};

namespace detail {

template <class F>
void for_each_arc(const Graph& g, F&& f) {
  for (const Edge& e : g.edges()) {
    f(e.source, e.target, e);
    if (!g.directed()) f(e.target, e.source, e);
  }
}

inline SparseMatrix adjacency_where(const Graph& g, auto keep) {
  std::vector<Triplet> t;
  t.reserve(2 * g.edge_count());
  for_each_arc(g, [&](std::size_t i, std::size_t j, const Edge& e) {
    if (keep(e)) t.push_back({i, j, e.weight});
  });
  return SparseMatrix::from_triplets(g.n(), g.n(), std::move(t));
}

/// 1/d_i, or 0 for isolated vertices.
inline Vector inverse_degrees(const Vector& deg) {
  Vector inv(deg.size(), 0.0);
  for (std::size_t i = 0; i < deg.size(); ++i) inv[i] = deg[i] > 0.0 ? 1.0 / deg[i] : 0.0;
  return inv;
}

inline void require_no_isolated(const Vector& deg, const char* what) {
  for (std::size_t i = 0; i < deg.size(); ++i) {
    if (!(deg[i] > 0.0)) throw InvalidArgument(std::string(what) + ": vertex " + std::to_string(i) + " is isolated");
  }
}

inline void require_undirected(const Graph& g, const char* what) {
  if (g.directed()) throw InvalidArgument(std::string(what) + ": graph must be undirected");
}

}  // namespace detail

/// Weighted adjacency matrix: entry (i,j) is w_ij.
inline SparseMatrix adjacency(const Graph& g) {
  return detail::adjacency_where(g, [](const Edge&) { return true; });
}

/// Weighted out-degrees d_i = sum_j w_ij.
inline Vector degrees(const Graph& g) { return adjacency(g).row_sums(); }

/// Row-stochastic D^-1 A. Throws when a vertex has no outgoing edge.
inline SparseMatrix normalized_adjacency(const Graph& g) {
  SparseMatrix a = adjacency(g);
  Vector deg = a.row_sums();
  detail::require_no_isolated(deg, "normalized_adjacency");
  return a.row_scaled(detail::inverse_degrees(deg));
}

/// D - A.
inline SparseMatrix laplacian(const Graph& g) {
  detail::require_undirected(g, "laplacian");
  SparseMatrix a = adjacency(g);
  Vector deg = a.row_sums();
  std::vector<Triplet> t;
  t.reserve(a.nnz() + g.n());
  for (std::size_t i = 0; i < g.n(); ++i) {
    if (deg[i] != 0.0) t.push_back({i, i, deg[i]});
    auto c = a.row_cols(i);
    auto v = a.row_values(i);
    for (std::size_t k = 0; k < c.size(); ++k) t.push_back({i, c[k], -v[k]});
  }
  return SparseMatrix::from_triplets(g.n(), g.n(), std::move(t));
}

/// I - D^-1/2 A D^-1/2, symmetric with spectrum in [0, 2].
inline SparseMatrix normalized_laplacian(const Graph& g) {
  detail::require_undirected(g, "normalized_laplacian");
  SparseMatrix a = adjacency(g);
  Vector deg = a.row_sums();
  detail::require_no_isolated(deg, "normalized_laplacian");
  std::vector<Triplet> t;
  t.reserve(a.nnz() + g.n());
  for (std::size_t i = 0; i < g.n(); ++i) {
    t.push_back({i, i, 1.0});
    auto c = a.row_cols(i);
    auto v = a.row_values(i);
    for (std::size_t k = 0; k < c.size(); ++k) t.push_back({i, c[k], -v[k] / std::sqrt(deg[i] * deg[c[k]])});
  }
  return SparseMatrix::from_triplets(g.n(), g.n(), std::move(t));
}

/// Entries of the transition matrix whose edge carries label l. Rows are
/// scaled by the full degree so that the filtered matrices sum to D^-1 A;
/// with degree_normalize off the raw weights are kept. Isolated vertices
/// give zero rows.
inline SparseMatrix label_filtered_adjacency(const Graph& g, std::size_t label, bool degree_normalize = true) {
  if (g.label_mode() != LabelMode::discrete) {
    throw InvalidArgument("label_filtered_adjacency: graph has no discrete labels");
  }
  if (label >= g.label_dim()) {
    throw InvalidArgument("label_filtered_adjacency: label " + std::to_string(label) + " outside alphabet of size " +
                          std::to_string(g.label_dim()));
  }
  SparseMatrix a = detail::adjacency_where(g, [label](const Edge& e) { return e.label == label; });
  if (!degree_normalize) return a;
  return a.row_scaled(detail::inverse_degrees(degrees(g)));
}

/// Feature grid phi(X_ij). Unlabeled graphs use d = 1 with phi = w_ij,
/// discrete labels give w_ij e_l, vector labels copy the stored features.
/// With degree_normalize each row i is divided by d_i; isolated vertices
/// keep zero rows.
inline FeatureMatrix feature_matrix(const Graph& g, bool degree_normalize = true) {
  const std::size_t d = g.label_mode() == LabelMode::none ? 1 : g.label_dim();
  FeatureMatrix f(g.n(), g.n(), d);
  Vector scale = degree_normalize ? detail::inverse_degrees(degrees(g)) : Vector(g.n(), 1.0);
  detail::for_each_arc(g, [&](std::size_t i, std::size_t j, const Edge& e) {
    auto cell = f(i, j);
    switch (g.label_mode()) {
      case LabelMode::none: cell[0] = e.weight * scale[i]; break;
      case LabelMode::discrete: cell[e.label] = e.weight * scale[i]; break;
      case LabelMode::vector:
        for (std::size_t k = 0; k < d; ++k) cell[k] = e.features[k] * scale[i];
        break;
    }
  });
  return f;
}

/// Breadth-first connectivity test; the empty graph counts as connected.
/// Directed graphs are tested on their underlying undirected graph.
inline bool is_connected(const Graph& g) {
  if (g.n() <= 1) return true;
  std::vector<std::vector<std::size_t>> nbr(g.n());
  for (const Edge& e : g.edges()) {
    nbr[e.source].push_back(e.target);
    nbr[e.target].push_back(e.source);
  }
  std::vector<bool> seen(g.n(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : nbr[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        queue.push_back(w);
      }
    }
  }
  return count == g.n();
}

/// Unit-weight unlabeled graph on the non-adjacent vertex pairs of g.
/// The diagonal is excluded, so complement(complement(g)) recovers the
/// edge set of an unweighted g.
inline Graph complement(const Graph& g) {
  detail::require_undirected(g, "complement");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < g.n(); ++i)
    for (std::size_t j = i + 1; j < g.n(); ++j)
      if (!g.has_edge(i, j)) edges.push_back({i, j, 1.0, 0, {}});
  return Graph(g.n(), std::move(edges));
}

struct StartStop {
  Vector start;
  Vector stop;
};

/// p = q = e/n.
inline StartStop uniform_start_stop(const Graph& g) {
  if (g.n() == 0) throw InvalidArgument("uniform_start_stop: graph has no vertices");
  Vector u(g.n(), 1.0 / static_cast<double>(g.n()));
  return {u, u};
}

/// Moves discrete vertex labels onto edges: the new label of edge (i,j)
/// encodes its old label together with the unordered pair of endpoint
/// labels. Unlabeled edges count as label 0 of a one-letter alphabet.
inline Graph fold_vertex_labels(const Graph& g, std::span<const std::size_t> vertex_labels,
                                std::size_t vertex_alphabet) {
  if (g.label_mode() == LabelMode::vector) throw InvalidArgument("fold_vertex_labels: vector edge labels");
  if (vertex_labels.size() != g.n()) throw DimensionError("fold_vertex_labels: one label per vertex required");
  if (vertex_alphabet == 0) throw InvalidArgument("fold_vertex_labels: empty vertex alphabet");
  for (std::size_t v : vertex_labels) {
    if (v >= vertex_alphabet) throw InvalidArgument("fold_vertex_labels: vertex label outside alphabet");
  }
  const std::size_t edge_alphabet = g.label_mode() == LabelMode::discrete ? g.label_dim() : 1;
  const std::size_t s = vertex_alphabet;
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    std::size_t a = vertex_labels[e.source], b = vertex_labels[e.target];
    if (!g.directed() && a > b) std::swap(a, b);
    edges.push_back({e.source, e.target, e.weight, (e.label * s + a) * s + b, {}});
  }
  return Graph(g.n(), std::move(edges), g.directed(), LabelMode::discrete, edge_alphabet * s * s);
}

}  // namespace walkernel

#endif  // WALKERNEL_GRAPH_HPP
