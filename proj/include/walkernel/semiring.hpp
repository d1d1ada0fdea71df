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


#ifndef WALKERNEL_SEMIRING_HPP
#define WALKERNEL_SEMIRING_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "walkernel/dense_matrix.hpp"
#include "walkernel/errors.hpp"

namespace walkernel {

/// A map psi from the carrier to the reals with psi(x (+) y) = psi(x) + psi(y),
/// psi(x (.) y) = psi(x) psi(y), psi(0) = 0 and psi(1) = 1.
struct Morphism {
  std::function<double(double)> forward;
  std::function<double(double)> inverse;  // empty when not available
};

/// A semiring over a numeric carrier. Booleans are encoded as {0, 1}.
struct Semiring {
  std::string name;
  std::string carrier;
  double (*oplus)(double, double);
  double (*odot)(double, double);
  double zero;
  double one;
  bool (*contains)(double);
  std::optional<Morphism> morphism;

  bool is_zero(double x) const { return x == zero; }
};

using SemiringPtr = std::shared_ptr<const Semiring>;

enum class SemiringKind { real, boolean, logarithmic, tropical };

namespace detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

/// ln(e^x + e^y) without overflow: max + log1p(exp(-|x - y|)).
inline double log_add(double x, double y) {
  if (x == kNegInf) return y;
  if (y == kNegInf) return x;
  if (x == kPosInf || y == kPosInf) return kPosInf;
  const double m = std::max(x, y);
  return m + std::log1p(std::exp(-std::abs(x - y)));
}

/// x + y with -inf absorbing, so that -inf is an annihilator even against +inf.
inline double log_mul(double x, double y) {
  if (x == kNegInf || y == kNegInf) return kNegInf;
  return x + y;
}

inline Semiring make_semiring(SemiringKind kind) {
  switch (kind) {
    case SemiringKind::real: {
      Morphism id{[](double x) { return x; }, [](double x) { return x; }};
      return {"real", "R", [](double x, double y) { return x + y; }, [](double x, double y) { return x * y; }, 0.0, 1.0,
              [](double x) { return std::isfinite(x); }, id};
    }
    case SemiringKind::boolean:
      return {"boolean", "{F, T} as {0, 1}",
              [](double x, double y) { return (x != 0.0 || y != 0.0) ? 1.0 : 0.0; },
              [](double x, double y) { return (x != 0.0 && y != 0.0) ? 1.0 : 0.0; },
              0.0,
              1.0,
              [](double x) { return x == 0.0 || x == 1.0; },
              std::nullopt};
    case SemiringKind::logarithmic: {
      Morphism ex{[](double x) { return std::exp(x); }, [](double x) { return std::log(x); }};
      return {"logarithmic", "R u {-inf, +inf}", log_add, log_mul, kNegInf, 0.0, [](double x) { return !std::isnan(x); },
              ex};
    }
    case SemiringKind::tropical:
      return {"tropical", "R u {-inf}", [](double x, double y) { return std::max(x, y); }, log_mul, kNegInf, 0.0,
              [](double x) { return !std::isnan(x) && x != kPosInf; }, std::nullopt};
  }
  throw InvalidArgument("unknown semiring kind");
}

}  // namespace detail

inline const char* to_string(SemiringKind k) noexcept {
  switch (k) {
    case SemiringKind::real: return "real";
    case SemiringKind::boolean: return "boolean";
    case SemiringKind::logarithmic: return "logarithmic";
    case SemiringKind::tropical: return "tropical";
  }
  return "real";
}

inline SemiringKind parse_semiring_kind(const std::string& name) {
  for (SemiringKind k : {SemiringKind::real, SemiringKind::boolean, SemiringKind::logarithmic, SemiringKind::tropical}) {
    if (name == to_string(k)) return k;
  }
  throw InvalidArgument("unknown semiring \"" + name + "\" (expected real, boolean, logarithmic or tropical)");
}

/// Shared immutable descriptor for one of the built-in semirings.
inline SemiringPtr semiring_instance(SemiringKind kind) {
  static const SemiringPtr instances[] = {
      std::make_shared<const Semiring>(detail::make_semiring(SemiringKind::real)),
      std::make_shared<const Semiring>(detail::make_semiring(SemiringKind::boolean)),
      std::make_shared<const Semiring>(detail::make_semiring(SemiringKind::logarithmic)),
      std::make_shared<const Semiring>(detail::make_semiring(SemiringKind::tropical)),
  };
  return instances[static_cast<std::size_t>(kind)];
}

inline SemiringPtr semiring_instance(const std::string& name) { return semiring_instance(parse_semiring_kind(name)); }

namespace detail {

inline void require_member(const Semiring& s, double x, const char* what) {
  if (!s.contains(x)) {
    throw InvalidArgument(std::string(what) + ": " + std::to_string(x) + " is not in the " + s.name + " carrier");
  }
}

inline void require_same_semiring(const SemiringPtr& a, const SemiringPtr& b, const char* what) {
  if (a != b && a->name != b->name) {
    throw InvalidArgument(std::string(what) + ": semirings differ (" + a->name + " vs " + b->name + ")");
  }
}

}  // namespace detail

/// Dense row-major matrix over a semiring.
class SemiringMatrix {
 public:
  SemiringMatrix(SemiringPtr s, std::size_t rows, std::size_t cols)
      : s_(std::move(s)), rows_(rows), cols_(cols), data_(rows * cols, s_->zero) {}

  SemiringMatrix(SemiringPtr s, std::size_t rows, std::size_t cols, std::vector<double> entries)
      : s_(std::move(s)), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) {
      throw DimensionError("SemiringMatrix: " + std::to_string(data_.size()) + " entries for shape " +
                           detail::shape(rows, cols));
    }
    for (double x : data_) detail::require_member(*s_, x, "SemiringMatrix");
  }

  static SemiringMatrix identity(SemiringPtr s, std::size_t n) {
    SemiringMatrix m(std::move(s), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = m.s_->one;
    return m;
  }

  const Semiring& semiring() const noexcept { return *s_; }
  const SemiringPtr& semiring_ptr() const noexcept { return s_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  std::span<const double> data() const noexcept { return data_; }

  bool operator==(const SemiringMatrix& o) const {
    return s_->name == o.s_->name && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  SemiringPtr s_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

/// [A x]_i = (+)_j A_ij (.) x_j.
inline Vector semiring_mat_vec(const SemiringMatrix& a, std::span<const double> x) {
  if (x.size() != a.cols()) {
    throw DimensionError("semiring_mat_vec: " + detail::shape(a.rows(), a.cols()) + " times vector of length " +
                         std::to_string(x.size()));
  }
  const Semiring& s = a.semiring();
  Vector y(a.rows(), s.zero);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double acc = s.zero;
    for (std::size_t j = 0; j < a.cols(); ++j) acc = s.oplus(acc, s.odot(a(i, j), x[j]));
    y[i] = acc;
  }
  return y;
}

/// [A B]_ij = (+)_k A_ik (.) B_kj.
inline SemiringMatrix semiring_mat_mat(const SemiringMatrix& a, const SemiringMatrix& b) {
  detail::require_same_semiring(a.semiring_ptr(), b.semiring_ptr(), "semiring_mat_mat");
  if (a.cols() != b.rows()) {
    throw DimensionError("semiring_mat_mat: inner dimensions differ, " + detail::shape(a.rows(), a.cols()) + " times " +
                         detail::shape(b.rows(), b.cols()));
  }
  const Semiring& s = a.semiring();
  SemiringMatrix c(a.semiring_ptr(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double acc = s.zero;
      for (std::size_t k = 0; k < a.cols(); ++k) acc = s.oplus(acc, s.odot(a(i, k), b(k, j)));
      c(i, j) = acc;
    }
  return c;
}

/// Entrywise (+).
inline SemiringMatrix semiring_add(const SemiringMatrix& a, const SemiringMatrix& b) {
  detail::require_same_semiring(a.semiring_ptr(), b.semiring_ptr(), "semiring_add");
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("semiring_add: shapes differ");
  SemiringMatrix c(a.semiring_ptr(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.semiring().oplus(a(i, j), b(i, j));
  return c;
}

/// Kronecker product with (.) in place of multiplication.
inline SemiringMatrix semiring_kron(const SemiringMatrix& a, const SemiringMatrix& b) {
  detail::require_same_semiring(a.semiring_ptr(), b.semiring_ptr(), "semiring_kron");
  SemiringMatrix c(a.semiring_ptr(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) c(i * b.rows() + k, j * b.cols() + l) = a.semiring().odot(a(i, j), b(k, l));
  return c;
}

inline Vector semiring_kron(const Semiring& s, std::span<const double> a, std::span<const double> b) {
  Vector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = s.odot(a[i], b[j]);
  return out;
}

/// (+)_i x_i (.) y_i.
inline double semiring_dot(const Semiring& s, std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("semiring_dot: lengths differ");
  double acc = s.zero;
  for (std::size_t i = 0; i < x.size(); ++i) acc = s.oplus(acc, s.odot(x[i], y[i]));
  return acc;
}

inline const Morphism& require_morphism(const Semiring& s, const char* what) {
  if (!s.morphism) throw InvalidArgument(std::string(what) + ": the " + s.name + " semiring has no morphism to the reals");
  return *s.morphism;
}

/// Entrywise psi.
inline DenseMatrix apply_morphism(const SemiringMatrix& a) {
  const Morphism& m = require_morphism(a.semiring(), "apply_morphism");
  std::vector<double> out(a.rows() * a.cols());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = m.forward(a.data()[k]);
  return DenseMatrix(a.rows(), a.cols(), std::move(out));
}

inline Vector apply_morphism(const Semiring& s, std::span<const double> x) {
  const Morphism& m = require_morphism(s, "apply_morphism");
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = m.forward(x[i]);
  return out;
}

namespace detail {

/// Carrier values agree: equal (including infinities) or within tol relative.
inline bool carrier_close(double a, double b, double tol) {
  if (a == b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace detail

struct PushThroughReport {
  bool pass = true;
  double max_error = 0.0;
};

/// Compares the semiring product with psi^-1(psi(A) psi(x)), evaluated with
/// ordinary linear algebra.
inline PushThroughReport morphism_pushthrough_check(const SemiringMatrix& a, std::span<const double> x,
                                                    double tol = 1e-9) {
  const Morphism& m = require_morphism(a.semiring(), "morphism_pushthrough_check");
  if (!m.inverse) throw InvalidArgument("morphism_pushthrough_check: morphism has no inverse");
  Vector direct = semiring_mat_vec(a, x);
  Vector mapped = multiply(apply_morphism(a), apply_morphism(a.semiring(), x));
  PushThroughReport r;
  for (std::size_t i = 0; i < direct.size(); ++i) {
    const double back = m.inverse(mapped[i]);
    if (!detail::carrier_close(direct[i], back, tol)) r.pass = false;
    if (std::isfinite(direct[i]) && std::isfinite(back)) r.max_error = std::max(r.max_error, std::abs(direct[i] - back));
  }
  return r;
}

inline PushThroughReport morphism_pushthrough_check(const SemiringMatrix& a, const SemiringMatrix& b,
                                                    double tol = 1e-9) {
  const Morphism& m = require_morphism(a.semiring(), "morphism_pushthrough_check");
  if (!m.inverse) throw InvalidArgument("morphism_pushthrough_check: morphism has no inverse");
  SemiringMatrix direct = semiring_mat_mat(a, b);
  DenseMatrix mapped = apply_morphism(a) * apply_morphism(b);
  PushThroughReport r;
  for (std::size_t k = 0; k < direct.data().size(); ++k) {
    const double d = direct.data()[k], back = m.inverse(mapped.data()[k]);
    if (!detail::carrier_close(d, back, tol)) r.pass = false;
    if (std::isfinite(d) && std::isfinite(back)) r.max_error = std::max(r.max_error, std::abs(d - back));
  }
  return r;
}

/// Random carrier elements, including the special values with small probability.
inline double sample_element(const Semiring& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = u(rng);
  if (s.name == "boolean") return r < 0.5 ? 0.0 : 1.0;
  if (r < 0.05) return s.zero;
  if (r < 0.10) return s.one;
  if (s.name == "logarithmic" && r < 0.13) return detail::kPosInf;
  if (s.name == "real") return -5.0 + 10.0 * u(rng);
  return -20.0 + 40.0 * u(rng);
}

struct AxiomReport {
  bool pass = true;
  std::size_t samples = 0;
  std::string failure;  // first failing law with its witnesses
};

/// Checks the semiring laws on random elements. Laws that hold only up to
/// rounding are compared with a relative tolerance.
inline AxiomReport check_semiring_axioms(const Semiring& s, std::size_t samples, std::uint64_t seed, double tol = 1e-9) {
  std::mt19937_64 rng(seed);
  AxiomReport r;
  r.samples = samples;
  auto fail = [&](const std::string& law, double x, double y, double z) {
    if (!r.pass) return;
    r.pass = false;
    r.failure = law + " at (" + std::to_string(x) + ", " + std::to_string(y) + ", " + std::to_string(z) + ")";
  };
  auto close = [&](double a, double b) { return detail::carrier_close(a, b, tol); };
  for (std::size_t t = 0; t < samples && r.pass; ++t) {
    const double x = sample_element(s, rng), y = sample_element(s, rng), z = sample_element(s, rng);
    if (!close(s.oplus(s.oplus(x, y), z), s.oplus(x, s.oplus(y, z)))) fail("(+) associativity", x, y, z);
    if (!close(s.oplus(x, y), s.oplus(y, x))) fail("(+) commutativity", x, y, z);
    if (!close(s.oplus(x, s.zero), x)) fail("(+) identity", x, y, z);
    if (!close(s.odot(s.odot(x, y), z), s.odot(x, s.odot(y, z)))) fail("(.) associativity", x, y, z);
    if (!close(s.odot(x, s.one), x) || !close(s.odot(s.one, x), x)) fail("(.) identity", x, y, z);
    if (!close(s.odot(x, s.oplus(y, z)), s.oplus(s.odot(x, y), s.odot(x, z)))) fail("left distributivity", x, y, z);
    if (!close(s.odot(s.oplus(y, z), x), s.oplus(s.odot(y, x), s.odot(z, x)))) fail("right distributivity", x, y, z);
    if (s.odot(x, s.zero) != s.zero || s.odot(s.zero, x) != s.zero) fail("annihilation", x, y, z);
    if (!s.contains(s.oplus(x, y)) || !s.contains(s.odot(x, y))) fail("closure", x, y, z);
  }
  return r;
}

/// Checks psi(x (+) y) = psi(x) + psi(y), psi(x (.) y) = psi(x) psi(y) and
/// psi(0) = 0, psi(1) = 1 on random finite elements.
inline AxiomReport check_morphism(const Semiring& s, std::size_t samples, std::uint64_t seed, double tol = 1e-9) {
  const Morphism& m = require_morphism(s, "check_morphism");
  std::mt19937_64 rng(seed);
  AxiomReport r;
  r.samples = samples;
  auto close = [&](double a, double b) { return detail::carrier_close(a, b, tol); };
  if (m.forward(s.zero) != 0.0 || m.forward(s.one) != 1.0) {
    r.pass = false;
    r.failure = "psi(0) = 0 or psi(1) = 1";
    return r;
  }
  for (std::size_t t = 0; t < samples; ++t) {
    double x = sample_element(s, rng), y = sample_element(s, rng);
    if (!std::isfinite(x) || !std::isfinite(y)) continue;
    if (!close(m.forward(s.oplus(x, y)), m.forward(x) + m.forward(y)) ||
        !close(m.forward(s.odot(x, y)), m.forward(x) * m.forward(y))) {
      r.pass = false;
      r.failure = "homomorphism at (" + std::to_string(x) + ", " + std::to_string(y) + ")";
      return r;
    }
  }
  return r;
}

}  // namespace walkernel

#endif  // WALKERNEL_SEMIRING_HPP
