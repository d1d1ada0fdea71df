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

#ifndef WALKERNEL_KRONECKER_HPP
#define WALKERNEL_KRONECKER_HPP

#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "walkernel/dense_matrix.hpp"
#include "walkernel/sparse_matrix.hpp"

namespace walkernel {

template <class M>
concept RealMatrix = std::same_as<M, DenseMatrix> || std::same_as<M, SparseMatrix>;

// A (x) B. Block (i, j) of the result is A(i, j) * B.

inline DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double s = a(i, j);
      if (s == 0.0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) c(i * b.rows() + k, j * b.cols() + l) = s * b(k, l);
    }
  return c;
}

inline SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  std::vector<std::size_t> row_ptr(rows + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  cols.reserve(a.nnz() * b.nnz());
  vals.reserve(a.nnz() * b.nnz());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ac = a.row_cols(i);
    auto av = a.row_values(i);
    for (std::size_t k = 0; k < b.rows(); ++k) {
      auto bc = b.row_cols(k);
      auto bv = b.row_values(k);
      // Columns stay sorted: outer loop over A's (sorted) columns, inner over B's.
      for (std::size_t p = 0; p < ac.size(); ++p)
        for (std::size_t q = 0; q < bc.size(); ++q) {
          cols.push_back(ac[p] * b.cols() + bc[q]);
          vals.push_back(av[p] * bv[q]);
        }
      row_ptr[i * b.rows() + k + 1] = cols.size();
    }
  }
  return SparseMatrix::from_csr(rows, a.cols() * b.cols(), std::move(row_ptr), std::move(cols), std::move(vals));
}

/// A (+) B = A (x) I_B + I_A (x) B, with identities shaped like the partner.
inline DenseMatrix kron_sum(const DenseMatrix& a, const DenseMatrix& b) {
  auto rect_identity = [](std::size_t r, std::size_t c) {
    DenseMatrix m(r, c);
    for (std::size_t i = 0; i < std::min(r, c); ++i) m(i, i) = 1.0;
    return m;
  };
  return kron(a, rect_identity(b.rows(), b.cols())) + kron(rect_identity(a.rows(), a.cols()), b);
}

inline SparseMatrix kron_sum(const SparseMatrix& a, const SparseMatrix& b) {
  auto rect_identity = [](std::size_t r, std::size_t c) {
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < std::min(r, c); ++i) t.push_back({i, i, 1.0});
    return SparseMatrix::from_triplets(r, c, std::move(t));
  };
  return kron(a, rect_identity(b.rows(), b.cols())) + kron(rect_identity(a.rows(), a.cols()), b);
}

inline DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("hadamard: " + detail::shape(a.rows(), a.cols()) + " vs " +
                         detail::shape(b.rows(), b.cols()));
  }
  DenseMatrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t k = 0; k < cd.size(); ++k) cd[k] *= bd[k];
  return c;
}

inline SparseMatrix hadamard(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("hadamard: " + detail::shape(a.rows(), a.cols()) + " vs " +
                         detail::shape(b.rows(), b.cols()));
  }
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ac = a.row_cols(i);
    auto av = a.row_values(i);
    for (std::size_t k = 0; k < ac.size(); ++k) {
      double bv = b.at(i, ac[k]);
      if (bv != 0.0) t.push_back({i, ac[k], av[k] * bv});
    }
  }
  return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(t));
}

namespace detail {

// out(:, j) = B * in(:, j) for ncols column-major columns.
inline void left_apply(const SparseMatrix& b, const double* in, std::size_t ncols, double* out) {
  const std::size_t m = b.rows();
  const std::size_t k = b.cols();
  for (std::size_t j = 0; j < ncols; ++j) {
    const double* x = in + j * k;
    double* y = out + j * m;
    for (std::size_t i = 0; i < m; ++i) {
      auto c = b.row_cols(i);
      auto v = b.row_values(i);
      double s = 0.0;
      for (std::size_t t = 0; t < c.size(); ++t) s += v[t] * x[c[t]];
      y[i] = s;
    }
  }
}

// out(:, i) = sum_j A(i, j) * in(:, j); that is out = in * A^T.
inline void right_apply_transpose(const SparseMatrix& a, const double* in, std::size_t nrows, double* out) {
  std::fill(out, out + nrows * a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto c = a.row_cols(i);
    auto v = a.row_values(i);
    double* y = out + i * nrows;
    for (std::size_t t = 0; t < c.size(); ++t) {
      const double* x = in + c[t] * nrows;
      const double s = v[t];
      for (std::size_t r = 0; r < nrows; ++r) y[r] += s * x[r];
    }
  }
}

using ColMajorMap = Eigen::Map<Eigen::MatrixXd>;
using ConstColMajorMap = Eigen::Map<const Eigen::MatrixXd>;

inline void left_apply(const DenseMatrix& b, const double* in, std::size_t ncols, double* out) {
  ConstColMajorMap x(in, static_cast<Eigen::Index>(b.cols()), static_cast<Eigen::Index>(ncols));
  ColMajorMap y(out, static_cast<Eigen::Index>(b.rows()), static_cast<Eigen::Index>(ncols));
  y.noalias() = b.eigen() * x;
}

inline void right_apply_transpose(const DenseMatrix& a, const double* in, std::size_t nrows, double* out) {
  ConstColMajorMap x(in, static_cast<Eigen::Index>(nrows), static_cast<Eigen::Index>(a.cols()));
  ColMajorMap y(out, static_cast<Eigen::Index>(nrows), static_cast<Eigen::Index>(a.rows()));
  y.noalias() = x * a.eigen().transpose();
}

}  // namespace detail

/// (A (x) B) r computed as vec(B * unvec(r) * A^T); A (x) B is never formed.
template <RealMatrix MA, RealMatrix MB>
Vector kron_mat_vec(const MA& a, const MB& b, std::span<const double> r) {
  if (r.size() != a.cols() * b.cols()) {
    throw DimensionError("kron_mat_vec: vector length " + std::to_string(r.size()) + " but factors need " +
                         std::to_string(a.cols() * b.cols()));
  }
  Vector tmp(b.rows() * a.cols());
  Vector out(b.rows() * a.rows());
  detail::left_apply(b, r.data(), a.cols(), tmp.data());
  detail::right_apply_transpose(a, tmp.data(), b.rows(), out.data());
  return out;
}

/// One term A (x) B of a sum of Kronecker products.
template <RealMatrix M>
struct KronPair {
  M left;
  M right;
};

/// (sum_l A_l (x) B_l) r through one vec-trick product per term.
template <RealMatrix M>
Vector sum_kron_mat_vec(std::span<const KronPair<M>> terms, std::span<const double> r) {
  if (terms.empty()) throw DimensionError("sum_kron_mat_vec: no terms");
  const std::size_t rows = terms.front().left.rows() * terms.front().right.rows();
  const std::size_t cols = terms.front().left.cols() * terms.front().right.cols();
  for (const auto& t : terms) {
    if (t.left.rows() * t.right.rows() != rows || t.left.cols() * t.right.cols() != cols ||
        t.right.cols() != terms.front().right.cols()) {
      throw DimensionError("sum_kron_mat_vec: inconsistent factor shapes");
    }
  }
  Vector out(rows, 0.0);
  for (const auto& t : terms) {
    Vector y = kron_mat_vec(t.left, t.right, r);
    for (std::size_t i = 0; i < rows; ++i) out[i] += y[i];
  }
  return out;
}

template <RealMatrix M>
Vector sum_kron_mat_vec(const std::vector<KronPair<M>>& terms, std::span<const double> r) {
  return sum_kron_mat_vec(std::span<const KronPair<M>>(terms), r);
}

/// Explicit sum_l A_l (x) B_l; the O(n^4)-memory route the vec trick avoids.
inline SparseMatrix explicit_kron_sum_of_products(std::span<const KronPair<SparseMatrix>> terms) {
  if (terms.empty()) throw DimensionError("explicit_kron_sum_of_products: no terms");
  SparseMatrix acc = kron(terms.front().left, terms.front().right);
  for (std::size_t l = 1; l < terms.size(); ++l) acc = acc + kron(terms[l].left, terms[l].right);
  return acc;
}

}  // namespace walkernel

#endif  // WALKERNEL_KRONECKER_HPP
