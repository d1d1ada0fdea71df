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


#ifndef WALKERNEL_FEATURE_MATRIX_HPP
#define WALKERNEL_FEATURE_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "walkernel/dense_matrix.hpp"
#include "walkernel/errors.hpp"
#include "walkernel/sparse_matrix.hpp"

namespace walkernel {

/// A rows x cols grid of d-dimensional feature vectors. Entry (i,j) is the
/// image of the label at that position under a finite-dimensional feature
/// map; absent entries are the zero vector.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols, std::size_t dim)
      : rows_(rows), cols_(cols), dim_(dim), data_(rows * cols * dim, 0.0) {}
  FeatureMatrix(std::size_t rows, std::size_t cols, std::size_t dim, std::vector<double> data)
      : rows_(rows), cols_(cols), dim_(dim), data_(std::move(data)) {
    if (data_.size() != rows * cols * dim) {
      throw DimensionError("FeatureMatrix: expected " + std::to_string(rows * cols * dim) + " values, got " +
                           std::to_string(data_.size()));
    }
    detail::require_finite(data_, "FeatureMatrix");
  }

  /// Builds a grid from one real matrix per feature coordinate.
  static FeatureMatrix from_components(std::span<const DenseMatrix> components) {
    if (components.empty()) throw InvalidArgument("FeatureMatrix: no components");
    FeatureMatrix f(components[0].rows(), components[0].cols(), components.size());
    for (std::size_t k = 0; k < components.size(); ++k) {
      if (components[k].rows() != f.rows_ || components[k].cols() != f.cols_) {
        throw DimensionError("FeatureMatrix: component shapes differ");
      }
      for (std::size_t i = 0; i < f.rows_; ++i)
        for (std::size_t j = 0; j < f.cols_; ++j) f(i, j)[k] = components[k](i, j);
    }
    return f;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t dim() const noexcept { return dim_; }

  std::span<double> operator()(std::size_t i, std::size_t j) noexcept {
    return {data_.data() + (i * cols_ + j) * dim_, dim_};
  }
  std::span<const double> operator()(std::size_t i, std::size_t j) const noexcept {
    return {data_.data() + (i * cols_ + j) * dim_, dim_};
  }
  std::span<const double> data() const noexcept { return data_; }

  /// The real matrix holding feature coordinate k of every entry.
  SparseMatrix component(std::size_t k) const {
    if (k >= dim_) throw InvalidArgument("FeatureMatrix: component " + std::to_string(k) + " out of range");
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        double v = (*this)(i, j)[k];
        if (v != 0.0) t.push_back({i, j, v});
      }
    return SparseMatrix::from_triplets(rows_, cols_, std::move(t));
  }

  FeatureMatrix transpose() const {
    FeatureMatrix t(cols_, rows_, dim_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) copy_into(t(j, i), (*this)(i, j), 1.0);
    return t;
  }

  bool operator==(const FeatureMatrix&) const = default;

 private:
  static void copy_into(std::span<double> dst, std::span<const double> src, double s) {
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = s * src[k];
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

namespace detail {

inline void require_same_dim(const FeatureMatrix& a, const FeatureMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(what) + ": feature dimensions " + std::to_string(a.dim()) + " and " +
                         std::to_string(b.dim()));
  }
}

inline void require_inner(std::size_t a_cols, std::size_t b_rows, const char* what) {
  if (a_cols != b_rows) {
    throw DimensionError(std::string(what) + ": inner dimensions " + std::to_string(a_cols) + " and " +
                         std::to_string(b_rows));
  }
}

inline double inner(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline void add_scaled(std::span<double> dst, std::span<const double> src, double s) {
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += s * src[k];
}

}  // namespace detail

/// [F G]_ik = sum_j <F_ij, G_jk>.
inline DenseMatrix operator*(const FeatureMatrix& f, const FeatureMatrix& g) {
  detail::require_same_dim(f, g, "feature product");
  detail::require_inner(f.cols(), g.rows(), "feature product");
  DenseMatrix out(f.rows(), g.cols());
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t k = 0; k < g.cols(); ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < f.cols(); ++j) s += detail::inner(f(i, j), g(j, k));
      out(i, k) = s;
    }
  return out;
}

/// [F C]_ik = sum_j F_ij C_jk.
inline FeatureMatrix operator*(const FeatureMatrix& f, const DenseMatrix& c) {
  detail::require_inner(f.cols(), c.rows(), "feature-real product");
  FeatureMatrix out(f.rows(), c.cols(), f.dim());
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t k = 0; k < c.cols(); ++k)
      for (std::size_t j = 0; j < f.cols(); ++j) detail::add_scaled(out(i, k), f(i, j), c(j, k));
  return out;
}

/// [C F]_ik = sum_j C_ij F_jk.
inline FeatureMatrix operator*(const DenseMatrix& c, const FeatureMatrix& f) {
  detail::require_inner(c.cols(), f.rows(), "real-feature product");
  FeatureMatrix out(c.rows(), f.cols(), f.dim());
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t k = 0; k < f.cols(); ++k)
      for (std::size_t j = 0; j < c.cols(); ++j) detail::add_scaled(out(i, k), f(j, k), c(i, j));
  return out;
}

inline FeatureMatrix operator+(const FeatureMatrix& a, const FeatureMatrix& b) {
  detail::require_same_dim(a, b, "feature sum");
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("feature sum: shape mismatch");
  FeatureMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) detail::add_scaled(out(i, j), b(i, j), 1.0);
  return out;
}

/// [F (x) G]_{(i,k),(j,l)} = <F_ij, G_kl>.
inline DenseMatrix kron(const FeatureMatrix& f, const FeatureMatrix& g) {
  detail::require_same_dim(f, g, "feature kron");
  const std::size_t p = g.rows(), q = g.cols();
  DenseMatrix out(f.rows() * p, f.cols() * q);
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j)
      for (std::size_t k = 0; k < p; ++k)
        for (std::size_t l = 0; l < q; ++l) out(i * p + k, j * q + l) = detail::inner(f(i, j), g(k, l));
  return out;
}

/// [F (x) B]_{(i,k),(j,l)} = F_ij B_kl.
inline FeatureMatrix kron(const FeatureMatrix& f, const DenseMatrix& b) {
  const std::size_t p = b.rows(), q = b.cols();
  FeatureMatrix out(f.rows() * p, f.cols() * q, f.dim());
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j)
      for (std::size_t k = 0; k < p; ++k)
        for (std::size_t l = 0; l < q; ++l) detail::add_scaled(out(i * p + k, j * q + l), f(i, j), b(k, l));
  return out;
}

/// [B (x) F]_{(i,k),(j,l)} = B_ij F_kl.
inline FeatureMatrix kron(const DenseMatrix& b, const FeatureMatrix& f) {
  const std::size_t p = f.rows(), q = f.cols();
  FeatureMatrix out(b.rows() * p, b.cols() * q, f.dim());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < p; ++k)
        for (std::size_t l = 0; l < q; ++l) detail::add_scaled(out(i * p + k, j * q + l), f(k, l), b(i, j));
  return out;
}

/// Rectangular identity: ones where row == col.
inline DenseMatrix identity_like(std::size_t rows, std::size_t cols) {
  DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < std::min(rows, cols); ++i) m(i, i) = 1.0;
  return m;
}

/// F (+) G = F (x) I_G + I_F (x) G, with identities shaped like the operands.
inline FeatureMatrix kron_sum(const FeatureMatrix& f, const FeatureMatrix& g) {
  detail::require_same_dim(f, g, "feature kron_sum");
  return kron(f, identity_like(g.rows(), g.cols())) + kron(identity_like(f.rows(), f.cols()), g);
}

/// [F o G]_ij = <F_ij, G_ij>.
inline DenseMatrix hadamard(const FeatureMatrix& f, const FeatureMatrix& g) {
  detail::require_same_dim(f, g, "feature hadamard");
  if (f.rows() != g.rows() || f.cols() != g.cols()) throw DimensionError("feature hadamard: shape mismatch");
  DenseMatrix out(f.rows(), f.cols());
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j) out(i, j) = detail::inner(f(i, j), g(i, j));
  return out;
}

/// [F o C]_ij = F_ij C_ij.
inline FeatureMatrix hadamard(const FeatureMatrix& f, const DenseMatrix& c) {
  if (f.rows() != c.rows() || f.cols() != c.cols()) throw DimensionError("feature hadamard: shape mismatch");
  FeatureMatrix out(f.rows(), f.cols(), f.dim());
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j) detail::add_scaled(out(i, j), f(i, j), c(i, j));
  return out;
}

/// Column-stacks the grid into a (rows*cols) x 1 feature column.
inline FeatureMatrix vec(const FeatureMatrix& f) {
  FeatureMatrix out(f.rows() * f.cols(), 1, f.dim());
  for (std::size_t j = 0; j < f.cols(); ++j)
    for (std::size_t i = 0; i < f.rows(); ++i) detail::add_scaled(out(j * f.rows() + i, 0), f(i, j), 1.0);
  return out;
}

inline double max_abs_diff(const FeatureMatrix& a, const FeatureMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.dim() != b.dim()) {
    throw DimensionError("max_abs_diff: feature shape mismatch");
  }
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

}  // namespace walkernel

#endif  // WALKERNEL_FEATURE_MATRIX_HPP
