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

#ifndef WALKERNEL_SPARSE_MATRIX_HPP
#define WALKERNEL_SPARSE_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "walkernel/dense_matrix.hpp"
#include "walkernel/errors.hpp"

namespace walkernel {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed sparse row matrix.
///
/// Column indices are strictly increasing within a row and no explicit zeros
/// are stored, so nnz() is the structural nonzero count.
class SparseMatrix {
 public:
  SparseMatrix() : row_ptr_(1, 0) {}
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

  /// Duplicate coordinates are summed; entries that sum to zero are dropped.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries) {
    for (const auto& t : entries) {
      if (t.row >= rows || t.col >= cols) {
        throw DimensionError("SparseMatrix: entry (" + std::to_string(t.row) + "," + std::to_string(t.col) +
                             ") outside " + detail::shape(rows, cols));
      }
      if (!std::isfinite(t.value)) throw InvalidArgument("SparseMatrix: non-finite entry");
    }
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    SparseMatrix m(rows, cols);
    m.cols_idx_.reserve(entries.size());
    m.values_.reserve(entries.size());
    std::size_t k = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      while (k < entries.size() && entries[k].row == r) {
        std::size_t c = entries[k].col;
        double v = 0.0;
        while (k < entries.size() && entries[k].row == r && entries[k].col == c) v += entries[k++].value;
        if (v != 0.0) {
          m.cols_idx_.push_back(c);
          m.values_.push_back(v);
        }
      }
      m.row_ptr_[r + 1] = m.cols_idx_.size();
    }
    return m;
  }

  static SparseMatrix from_dense(const DenseMatrix& d) {
    SparseMatrix m(d.rows(), d.cols());
    for (std::size_t i = 0; i < d.rows(); ++i) {
      for (std::size_t j = 0; j < d.cols(); ++j) {
        if (d(i, j) != 0.0) {
          m.cols_idx_.push_back(j);
          m.values_.push_back(d(i, j));
        }
      }
      m.row_ptr_[i + 1] = m.cols_idx_.size();
    }
    return m;
  }

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    m.cols_idx_.resize(n);
    m.values_.assign(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      m.cols_idx_[i] = i;
      m.row_ptr_[i + 1] = i + 1;
    }
    return m;
  }

  /// Builds directly from CSR arrays; the arrays must already satisfy the
  /// class invariants.
  static SparseMatrix from_csr(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                               std::vector<std::size_t> col_idx, std::vector<double> values) {
    SparseMatrix m(rows, cols);
    if (row_ptr.size() != rows + 1 || col_idx.size() != values.size() || row_ptr.back() != values.size()) {
      throw DimensionError("SparseMatrix: inconsistent CSR arrays");
    }
    m.row_ptr_ = std::move(row_ptr);
    m.cols_idx_ = std::move(col_idx);
    m.values_ = std::move(values);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_cols(std::size_t i) const noexcept {
    return {cols_idx_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const double> row_values(std::size_t i) const noexcept {
    return {values_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::size_t> col_indices() const noexcept { return cols_idx_; }
  std::span<const double> values() const noexcept { return values_; }

  double at(std::size_t i, std::size_t j) const {
    auto cols = row_cols(i);
    auto it = std::lower_bound(cols.begin(), cols.end(), j);
    if (it == cols.end() || *it != j) return 0.0;
    return row_values(i)[static_cast<std::size_t>(it - cols.begin())];
  }

  DenseMatrix to_dense() const {
    DenseMatrix d(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      auto c = row_cols(i);
      auto v = row_values(i);
      for (std::size_t k = 0; k < c.size(); ++k) d(i, c[k]) = v[k];
    }
    return d;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows_);
    for (std::size_t c : cols_idx_) ++t.row_ptr_[c + 1];
    for (std::size_t r = 0; r < cols_; ++r) t.row_ptr_[r + 1] += t.row_ptr_[r];
    t.cols_idx_.resize(nnz());
    t.values_.resize(nnz());
    std::vector<std::size_t> next(t.row_ptr_.begin(), t.row_ptr_.end() - 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      auto c = row_cols(i);
      auto v = row_values(i);
      for (std::size_t k = 0; k < c.size(); ++k) {
        std::size_t dst = next[c[k]]++;
        t.cols_idx_[dst] = i;
        t.values_[dst] = v[k];
      }
    }
    return t;
  }

  SparseMatrix scaled(double s) const {
    if (s == 0.0) return SparseMatrix(rows_, cols_);
    SparseMatrix m = *this;
    for (double& v : m.values_) v *= s;
    return m;
  }

  /// Multiplies row i by factors[i].
  SparseMatrix row_scaled(std::span<const double> factors) const {
    if (factors.size() != rows_) throw DimensionError("row_scaled: factor count");
    std::vector<Triplet> t;
    t.reserve(nnz());
    for (std::size_t i = 0; i < rows_; ++i) {
      auto c = row_cols(i);
      auto v = row_values(i);
      for (std::size_t k = 0; k < c.size(); ++k) t.push_back({i, c[k], v[k] * factors[i]});
    }
    return from_triplets(rows_, cols_, std::move(t));
  }

  Vector row_sums() const {
    Vector s(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (double v : row_values(i)) s[i] += v;
    return s;
  }

  bool is_symmetric(double tol = 0.0) const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
      auto c = row_cols(i);
      auto v = row_values(i);
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (std::abs(at(c[k], i) - v[k]) > tol) return false;
      }
    }
    return true;
  }

  bool operator==(const SparseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> cols_idx_;
  std::vector<double> values_;
};

inline Vector multiply(const SparseMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) {
    throw DimensionError("sparse matrix-vector product: " + detail::shape(a.rows(), a.cols()) + " * " +
                         std::to_string(x.size()));
  }
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto c = a.row_cols(i);
    auto v = a.row_values(i);
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) s += v[k] * x[c[k]];
    y[i] = s;
  }
  return y;
}

inline SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("sparse sum: shape mismatch");
  std::vector<Triplet> t;
  t.reserve(a.nnz() + b.nnz());
  for (const SparseMatrix* m : {&a, &b}) {
    for (std::size_t i = 0; i < m->rows(); ++i) {
      auto c = m->row_cols(i);
      auto v = m->row_values(i);
      for (std::size_t k = 0; k < c.size(); ++k) t.push_back({i, c[k], v[k]});
    }
  }
  return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(t));
}

inline SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return a + b.scaled(-1.0); }

inline SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("sparse product: inner dimension mismatch");
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ac = a.row_cols(i);
    auto av = a.row_values(i);
    for (std::size_t k = 0; k < ac.size(); ++k) {
      auto bc = b.row_cols(ac[k]);
      auto bv = b.row_values(ac[k]);
      for (std::size_t l = 0; l < bc.size(); ++l) t.push_back({i, bc[l], av[k] * bv[l]});
    }
  }
  return SparseMatrix::from_triplets(a.rows(), b.cols(), std::move(t));
}

}  // namespace walkernel

#endif  // WALKERNEL_SPARSE_MATRIX_HPP
