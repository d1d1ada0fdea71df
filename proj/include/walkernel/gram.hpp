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


#ifndef WALKERNEL_GRAM_HPP
#define WALKERNEL_GRAM_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "walkernel/dense_matrix.hpp"
#include "walkernel/errors.hpp"
#include "walkernel/spectral.hpp"

namespace walkernel {

/// Symmetric matrix of pairwise kernel values with one identifier per item.
struct GramMatrix {
  DenseMatrix values;
  std::vector<std::string> ids;

  std::size_t size() const noexcept { return values.rows(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return values(i, j); }
};

/// A kernel evaluation failed; carries the offending pair.
class GramError : public Error {
 public:
  GramError(std::size_t i, std::size_t j, const std::string& what) : Error(what), first(i), second(j) {}
  std::size_t first;
  std::size_t second;
};

/// Worker count for parallel work: hardware concurrency, capped by the
/// WALKERNEL_THREADS environment variable when it holds a positive integer.
inline std::size_t worker_count() {
  std::size_t n = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("WALKERNEL_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min(n, static_cast<std::size_t>(cap));
  }
  return n;
}

/// Evaluates kernel(items[i], items[j]) for i <= j and mirrors. Each pair
/// writes its own slot, so the result does not depend on scheduling. On
/// failure the pair with the smallest (i, j) is reported.
template <class T, class Kernel>
GramMatrix gram_matrix(Kernel&& kernel, std::span<const T> items, bool parallel = false,
                       std::vector<std::string> ids = {}) {
  const std::size_t m = items.size();
  if (ids.empty()) {
    ids.reserve(m);
    for (std::size_t i = 0; i < m; ++i) ids.push_back(std::to_string(i));
  }
  if (ids.size() != m) throw DimensionError("gram_matrix: identifier count does not match item count");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(m * (m + 1) / 2);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) pairs.emplace_back(i, j);

  GramMatrix g{DenseMatrix(m, m), std::move(ids)};
  std::vector<std::exception_ptr> errors(pairs.size());
  auto eval = [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    try {
      const double v = static_cast<double>(kernel(items[i], items[j]));
      if (!std::isfinite(v)) throw Error("kernel value is not finite");
      g.values(i, j) = v;
      g.values(j, i) = v;
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };
  const std::size_t workers = parallel ? std::min(worker_count(), pairs.size()) : 1;
  if (workers <= 1) {
    for (std::size_t k = 0; k < pairs.size(); ++k) eval(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < pairs.size(); k = next++) eval(k);
      });
    }
  }
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (!errors[k]) continue;
    const auto [i, j] = pairs[k];
    std::string what = "unknown error";
    try {
      std::rethrow_exception(errors[k]);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    throw GramError(i, j, "gram_matrix: kernel failed on pair (" + g.ids[i] + ", " + g.ids[j] + "): " + what);
  }
  return g;
}

template <class T, class Kernel>
GramMatrix gram_matrix(Kernel&& kernel, const std::vector<T>& items, bool parallel = false,
                       std::vector<std::string> ids = {}) {
  return gram_matrix<T>(std::forward<Kernel>(kernel), std::span<const T>(items), parallel, std::move(ids));
}

struct PsdReport {
  double min_eigenvalue = 0.0;
  double trace = 0.0;
  double threshold = 0.0;
  bool psd = true;
};

/// PSD when the smallest eigenvalue is at least -rel_tol * |trace|.
inline PsdReport psd_check(const DenseMatrix& m, double rel_tol = 1e-8) {
  if (!m.is_square()) throw DimensionError("psd_check: matrix must be square");
  PsdReport r;
  r.trace = m.trace();
  r.threshold = -rel_tol * std::abs(r.trace);
  if (m.rows() == 0) return r;
  r.min_eigenvalue = sym_eig(m).eigenvalues.front();
  r.psd = r.min_eigenvalue >= r.threshold;
  return r;
}

inline PsdReport psd_check(const GramMatrix& g, double rel_tol = 1e-8) { return psd_check(g.values, rel_tol); }

}  // namespace walkernel

#endif  // WALKERNEL_GRAM_HPP
