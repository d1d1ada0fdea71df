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

#ifndef WALKERNEL_SPECTRAL_HPP
#define WALKERNEL_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>

#include <Eigen/Dense>

#include "walkernel/dense_matrix.hpp"
#include "walkernel/errors.hpp"
#include "walkernel/solvers.hpp"

namespace walkernel {

/// Eigenvalues ascending; column i of `eigenvectors` pairs with eigenvalue i.
struct EigenDecomposition {
  Vector eigenvalues;
  DenseMatrix eigenvectors;
};

inline bool is_symmetric(const DenseMatrix& a, double tol) {
  if (!a.is_square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (std::abs(a(i, j) - a(j, i)) > tol) return false;
  return true;
}

inline EigenDecomposition sym_eig(const DenseMatrix& a) {
  if (!is_symmetric(a, 1e-12 * (1.0 + a.max_abs()))) {
    throw InvalidArgument("sym_eig: input is not symmetric");
  }
  const auto n = static_cast<Eigen::Index>(a.rows());
  EigenDecomposition out{Vector(a.rows()), DenseMatrix(a.rows(), a.cols())};
  if (n == 0) return out;
  Eigen::MatrixXd m = a.eigen();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) throw Error("sym_eig: eigensolver failed to converge");
  for (Eigen::Index i = 0; i < n; ++i) out.eigenvalues[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  out.eigenvectors.eigen() = solver.eigenvectors();
  return out;
}

/// exp(t A) by scaling and squaring of a truncated Taylor series. Meant as a
/// brute-force reference; prefer spectral routes in production paths.
inline DenseMatrix matrix_exp_oracle(const DenseMatrix& a, double t) {
  if (!a.is_square()) throw DimensionError("matrix_exp_oracle: matrix must be square");
  const std::size_t n = a.rows();
  DenseMatrix b = t * a;
  double norm1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += std::abs(b(i, j));
    norm1 = std::max(norm1, col);
  }
  int squarings = 0;
  if (norm1 > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.25)));
  b = std::ldexp(1.0, -squarings) * b;
  DenseMatrix result = DenseMatrix::identity(n);
  DenseMatrix term = DenseMatrix::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = (1.0 / k) * (term * b);
    result = result + term;
    if (term.max_abs() <= 1e-18 * result.max_abs()) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

/// Power-iteration estimate of the largest eigenvalue magnitude.
inline double spectral_radius_estimate(const LinearOperator& apply, std::size_t dim, std::size_t iters) {
  if (iters == 0) throw InvalidArgument("spectral_radius_estimate: iters must be >= 1");
  if (dim == 0) return 0.0;
  Vector x(dim);
  for (std::size_t i = 0; i < dim; ++i) x[i] = 1.0 + 0.1 * std::sin(static_cast<double>(i + 1));
  double nx = norm2(x);
  for (double& v : x) v /= nx;
  double estimate = 0.0;
  for (std::size_t it = 0; it < iters; ++it) {
    Vector y = apply(x);
    const double ny = norm2(y);
    if (ny == 0.0) return 0.0;
    estimate = ny;
    for (std::size_t i = 0; i < dim; ++i) x[i] = y[i] / ny;
  }
  return estimate;
}

}  // namespace walkernel

#endif  // WALKERNEL_SPECTRAL_HPP
