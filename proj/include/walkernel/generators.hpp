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


#ifndef WALKERNEL_GENERATORS_HPP
#define WALKERNEL_GENERATORS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "walkernel/errors.hpp"
#include "walkernel/graph.hpp"

namespace walkernel {

struct RngSeed {
  std::uint64_t value = 0;
};

namespace detail {

/// Uniform integer in [0, bound) by rejection; unlike the standard
/// distributions its output is identical across library implementations.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("uniform_below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), components_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent_[a] = b;
      --components_;
    }
  }
  std::size_t components() const noexcept { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::size_t components_;
};

/// Inserts uniformly random new undirected edges into an empty n-vertex
/// graph until done(edge_count, connected) holds or the graph is complete.
template <class Done>
Graph grow_random_graph(std::size_t n, RngSeed seed, Done done) {
  std::mt19937_64 rng(seed.value);
  const std::size_t max_edges = n * (n - 1) / 2;
  std::vector<bool> present(n * n, false);
  std::vector<Edge> edges;
  DisjointSets sets(n);
  auto insert = [&](std::size_t i, std::size_t j) {
    present[i * n + j] = present[j * n + i] = true;
    edges.push_back({std::min(i, j), std::max(i, j), 1.0, 0, {}});
    sets.unite(i, j);
  };
  auto finished = [&] { return edges.size() == max_edges || done(edges.size(), sets.components() == 1); };
  // Rejection sampling while the graph is sparse.
  while (!finished() && 2 * edges.size() < max_edges) {
    std::size_t i = uniform_below(rng, n);
    std::size_t j = uniform_below(rng, n);
    if (i != j && !present[i * n + j]) insert(i, j);
  }
  // Dense phase: draw from the explicit list of remaining pairs.
  if (!finished()) {
    std::vector<std::pair<std::size_t, std::size_t>> free_pairs;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!present[i * n + j]) free_pairs.emplace_back(i, j);
    while (!finished()) {
      std::size_t k = uniform_below(rng, free_pairs.size());
      auto [i, j] = free_pairs[k];
      free_pairs[k] = free_pairs.back();
      free_pairs.pop_back();
      insert(i, j);
    }
  }
  return Graph(n, std::move(edges));
}

}  // namespace detail

/// Connected graph on 2^k vertices with average degree at least 2 (or the
/// complete graph when fewer vertices make that impossible).
inline Graph random_graph_set1(unsigned k, RngSeed seed) {
  if (k < 1 || k > 20) throw InvalidArgument("random_graph_set1: size exponent must be in [1, 20]");
  const std::size_t n = std::size_t{1} << k;
  return detail::grow_random_graph(n, seed, [n](std::size_t m, bool connected) { return connected && m >= n; });
}

/// Connected graph on n vertices whose adjacency matrix has at least
/// fill_pct percent nonzero entries, capped at the complete graph.
inline Graph random_graph_set2(std::size_t n, double fill_pct, RngSeed seed) {
  if (n < 2) throw InvalidArgument("random_graph_set2: need at least 2 vertices");
  if (!(fill_pct > 0.0) || fill_pct > 100.0) {
    throw InvalidArgument("random_graph_set2: fill percentage must be in (0, 100], got " + std::to_string(fill_pct));
  }
  const double target_nnz = std::ceil(fill_pct * static_cast<double>(n) * static_cast<double>(n) / 100.0 - 1e-9);
  return detail::grow_random_graph(
      n, seed, [target_nnz](std::size_t m, bool connected) { return connected && 2.0 * static_cast<double>(m) >= target_nnz; });
}

/// Same edges and weights, each edge given a uniformly random label in [0, d).
inline Graph with_random_labels(const Graph& g, std::size_t d, RngSeed seed) {
  if (d == 0) throw InvalidArgument("with_random_labels: empty alphabet");
  std::mt19937_64 rng(seed.value);
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (Edge& e : edges) e.label = detail::uniform_below(rng, d);
  return Graph(g.n(), std::move(edges), g.directed(), LabelMode::discrete, d);
}

/// Same edges, each weight replaced by a uniform draw from [lo, hi).
inline Graph with_random_weights(const Graph& g, double lo, double hi, RngSeed seed) {
  if (!(lo > 0.0) || !(hi > lo)) throw InvalidArgument("with_random_weights: need 0 < lo < hi");
  std::mt19937_64 rng(seed.value);
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (Edge& e : edges) e.weight = lo + (hi - lo) * detail::uniform_unit(rng);
  return Graph(g.n(), std::move(edges), g.directed(), g.label_mode(), g.label_dim());
}

}  // namespace walkernel

#endif  // WALKERNEL_GENERATORS_HPP
