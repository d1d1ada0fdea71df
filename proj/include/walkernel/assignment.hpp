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


#ifndef WALKERNEL_ASSIGNMENT_HPP
#define WALKERNEL_ASSIGNMENT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "walkernel/dense_matrix.hpp"
#include "walkernel/errors.hpp"
#include "walkernel/generators.hpp"
#include "walkernel/spectral.hpp"

namespace walkernel {

/// Maximum of sum_i w(i, pi(i)) over injective maps pi from the rows of w
/// into its columns (rows <= cols), by the O(r^2 c) Hungarian algorithm.
inline double max_weight_assignment(const DenseMatrix& w, std::vector<std::size_t>* assignment = nullptr) {
  const std::size_t r = w.rows(), c = w.cols();
  if (r > c) throw DimensionError("max_weight_assignment: more rows than columns");
  if (r == 0) {
    if (assignment) assignment->clear();
    return 0.0;
  }
  // Potentials u (rows) and v (columns), 1-based with column 0 as a sentinel.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(r + 1, 0.0), v(c + 1, 0.0);
  std::vector<std::size_t> match(c + 1, 0), way(c + 1, 0);
  for (std::size_t i = 1; i <= r; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(c + 1, inf);
    std::vector<char> used(c + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= c; ++j) {
        if (used[j]) continue;
        const double cur = -w(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= c; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(r, 0);
  for (std::size_t j = 1; j <= c; ++j)
    if (match[j] != 0) row_to_col[match[j] - 1] = j - 1;
  double total = 0.0;
  for (std::size_t i = 0; i < r; ++i) total += w(i, row_to_col[i]);
  if (assignment) *assignment = std::move(row_to_col);
  return total;
}

/// max over injective assignments of the shorter list into the longer of
/// sum_i kappa(x_i, y_pi(i)).
template <class T, class Kappa>
double optimal_assignment_kernel(const std::vector<T>& x, const std::vector<T>& y, Kappa&& kappa) {
  if (x.empty() || y.empty()) throw InvalidArgument("optimal_assignment_kernel: part lists must be nonempty");
  const bool swap = x.size() > y.size();
  const std::vector<T>& a = swap ? y : x;
  const std::vector<T>& b = swap ? x : y;
  DenseMatrix w(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      w(i, j) = swap ? static_cast<double>(kappa(b[j], a[i])) : static_cast<double>(kappa(a[i], b[j]));
  return max_weight_assignment(w);
}

/// exp(-(x - y)^2 / (2 sigma^2)); approaches the delta kernel on integers
/// as sigma shrinks.
struct GaussianPartKernel {
  double sigma = 0.5;
  double operator()(double x, double y) const {
    const double d = x - y;
    return std::exp(-d * d / (2.0 * sigma * sigma));
  }
};

struct AssignmentCounterexample {
  std::vector<std::vector<double>> instances;
  DenseMatrix gram;
  double min_eigenvalue = 0.0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double sigma = 0.5;
};

struct CounterexampleSearch {
  std::uint64_t seed = 0;
  std::size_t instances = 10;
  std::size_t max_parts = 3;
  std::size_t alphabet = 4;
  double sigma = 0.5;
  std::size_t max_trials = 10000;
  double threshold = -1e-6;
};

/// Draws random sets of small integer-valued part lists until the optimal
/// assignment Gram matrix under a narrow Gaussian part kernel has an
/// eigenvalue below the threshold. Deterministic per seed.
inline AssignmentCounterexample assignment_psd_counterexample(const CounterexampleSearch& s = {}) {
  if (s.instances == 0 || s.max_parts == 0 || s.alphabet == 0) {
    throw InvalidArgument("assignment_psd_counterexample: sizes must be positive");
  }
  std::mt19937_64 rng(s.seed);
  const GaussianPartKernel kappa{s.sigma};
  for (std::size_t trial = 0; trial < s.max_trials; ++trial) {
    std::vector<std::vector<double>> inst(s.instances);
    for (auto& parts : inst) {
      parts.resize(1 + detail::uniform_below(rng, s.max_parts));
      for (double& p : parts) p = static_cast<double>(detail::uniform_below(rng, s.alphabet));
    }
    DenseMatrix gram(s.instances, s.instances);
    for (std::size_t i = 0; i < s.instances; ++i)
      for (std::size_t j = i; j < s.instances; ++j) gram(i, j) = gram(j, i) = optimal_assignment_kernel(inst[i], inst[j], kappa);
    const double lo = sym_eig(gram).eigenvalues.front();
    if (lo < s.threshold) return {std::move(inst), std::move(gram), lo, trial, s.seed, s.sigma};
  }
  throw Error("assignment_psd_counterexample: no counterexample within " + std::to_string(s.max_trials) + " trials");
}

/// sum over decompositions (xs, ys) of x and y of mu(xs, ys) * prod_d kappa_d(xs[d], ys[d]).
/// `decompose(x)` returns a range of part tuples, each indexable by d.
template <class X, class Decompose, class Mu, class Kappas>
double r_convolution_kernel(Decompose&& decompose, Mu&& mu, const Kappas& kappas, const X& x, const X& y) {
  const auto dx = decompose(x);
  const auto dy = decompose(y);
  double total = 0.0;
  for (const auto& xs : dx) {
    for (const auto& ys : dy) {
      if (xs.size() != kappas.size() || ys.size() != kappas.size()) {
        throw DimensionError("r_convolution_kernel: decomposition arity does not match the number of part kernels");
      }
      double term = static_cast<double>(mu(xs, ys));
      for (std::size_t d = 0; d < kappas.size() && term != 0.0; ++d) term *= static_cast<double>(kappas[d](xs[d], ys[d]));
      total += term;
    }
  }
  return total;
}

/// The mu = 1 R-convolution.
template <class X, class Decompose, class Kappas>
double r_convolution_kernel(Decompose&& decompose, const Kappas& kappas, const X& x, const X& y) {
  return r_convolution_kernel(std::forward<Decompose>(decompose), [](const auto&, const auto&) { return 1.0; }, kappas,
                              x, y);
}

}  // namespace walkernel

#endif  // WALKERNEL_ASSIGNMENT_HPP
