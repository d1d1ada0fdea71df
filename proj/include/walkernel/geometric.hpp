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


#ifndef WALKERNEL_GEOMETRIC_HPP
#define WALKERNEL_GEOMETRIC_HPP

#include <cmath>

#include "walkernel/dense_matrix.hpp"
#include "walkernel/graph.hpp"
#include "walkernel/graph_spectrum.hpp"
#include "walkernel/product_graph.hpp"
#include "walkernel/spectral.hpp"

namespace walkernel {

/// e^T exp(lambda W_x) e with W_x = W (x) W', computed from the two factor
/// eigensystems in O(n^3 + n'^3). W is D^-1 A (degree_normalize) or the raw
/// adjacency; edge labels are ignored.
inline double geometric_kernel(const Graph& g, const Graph& h, double lambda, bool degree_normalize = true) {
  detail::require_compatible(g, h, "geometric_kernel");
  if (g.directed()) throw InvalidArgument("geometric_kernel: graphs must be undirected");
  if (!std::isfinite(lambda)) throw InvalidArgument("geometric_kernel: lambda must be finite");
  SymmetrizedSpectrum a = factor_spectrum(g, FactorWeight::adjacency, degree_normalize);
  SymmetrizedSpectrum b = factor_spectrum(h, FactorWeight::adjacency, degree_normalize);
  Vector e(g.n(), 1.0), e2(h.n(), 1.0);
  return spectral_pair_form(a, b, e, e, e2, e2, [lambda](double x, double y) { return std::exp(lambda * x * y); });
}

/// The same value from the explicit nn' x nn' matrix exponential.
inline double geometric_kernel_reference(const Graph& g, const Graph& h, double lambda, bool degree_normalize = true) {
  if (g.directed() || h.directed()) throw InvalidArgument("geometric_kernel: graphs must be undirected");
  SparseMatrix a = factor_matrix(g, FactorWeight::adjacency, degree_normalize);
  SparseMatrix b = factor_matrix(h, FactorWeight::adjacency, degree_normalize);
  DenseMatrix ex = matrix_exp_oracle(kron(a, b).to_dense(), lambda);
  double total = 0.0;
  for (double v : ex.data()) total += v;
  return total;
}

}  // namespace walkernel

#endif  // WALKERNEL_GEOMETRIC_HPP
