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


#ifndef WALKERNEL_VERTEX_KERNELS_HPP
#define WALKERNEL_VERTEX_KERNELS_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>

#include "walkernel/dense_matrix.hpp"
#include "walkernel/errors.hpp"
#include "walkernel/graph.hpp"
#include "walkernel/sparse_matrix.hpp"
#include "walkernel/spectral.hpp"

namespace walkernel {

namespace detail {

/// V diag(f(lambda_i)) V^T over the eigensystem of a symmetric matrix.
template <class F>
DenseMatrix spectral_function(const DenseMatrix& sym, F&& f) {
  EigenDecomposition e = sym_eig(sym);
  const std::size_t n = sym.rows();
  DenseMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(e.eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const double vik = e.eigenvectors(i, k) * fk;
      if (vik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * e.eigenvectors(j, k);
    }
  }
  return out;
}

}  // namespace detail

/// Heat kernel exp(-t L) with L = D - A: the limit of (I - t L / m)^m.
/// Symmetric, positive semidefinite and row-stochastic.
inline DenseMatrix diffusion_vertex_kernel(const Graph& g, double t) {
  if (g.directed()) throw InvalidArgument("diffusion_vertex_kernel: graph must be undirected");
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("diffusion_vertex_kernel: t must be positive");
  return detail::spectral_function(laplacian(g).to_dense(), [t](double x) { return std::exp(-t * x); });
}

/// A transform r on the normalized-Laplacian spectrum; the kernel is
/// sum_i r(lambda_i)^-1 v_i v_i^T.
using SpectralTransform = std::function<double(double)>;

/// r(x) = 1 + sigma^2 x, giving (I + sigma^2 L)^-1.
inline SpectralTransform regularized_laplacian_transform(double sigma) {
  return [s2 = sigma * sigma](double x) { return 1.0 + s2 * x; };
}

/// r(x) = exp(sigma^2 x / 2), giving exp(-sigma^2 L / 2).
inline SpectralTransform diffusion_transform(double sigma) {
  return [s2 = sigma * sigma](double x) { return std::exp(0.5 * s2 * x); };
}

inline DenseMatrix spectral_kernel_family(const Graph& g, const SpectralTransform& r) {
  if (!r) throw InvalidArgument("spectral_kernel_family: empty transform");
  if (g.directed()) throw InvalidArgument("spectral_kernel_family: graph must be undirected");
  return detail::spectral_function(normalized_laplacian(g).to_dense(), [&r](double x) {
    const double v = r(x);
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("spectral_kernel_family: transform is not positive at eigenvalue " + std::to_string(x) +
                            " (r = " + std::to_string(v) + ")");
    }
    return 1.0 / v;
  });
}

/// f^T L f with L = D - A.
inline double smoothness_functional(const Graph& g, std::span<const double> f) {
  if (g.directed()) throw InvalidArgument("smoothness_functional: graph must be undirected");
  if (f.size() != g.n()) {
    throw DimensionError("smoothness_functional: f has length " + std::to_string(f.size()) + ", graph has " +
                         std::to_string(g.n()) + " vertices");
  }
  detail::require_finite(f, "smoothness_functional");
  return dot(f, multiply(laplacian(g), f));
}

}  // namespace walkernel

#endif  // WALKERNEL_VERTEX_KERNELS_HPP
