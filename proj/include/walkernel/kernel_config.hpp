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


#ifndef WALKERNEL_KERNEL_CONFIG_HPP
#define WALKERNEL_KERNEL_CONFIG_HPP

#include <cmath>
#include <cstddef>
#include <string>

#include "walkernel/errors.hpp"

namespace walkernel {

enum class Method { direct, sylvester, cg, fixed_point, spectral };

/// Weighting mu(k) of length-k walks: lambda^k or lambda^k / k!.
enum class Measure { geometric, exponential };

inline const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::direct: return "direct";
    case Method::sylvester: return "sylvester";
    case Method::cg: return "cg";
    case Method::fixed_point: return "fixed_point";
    case Method::spectral: return "spectral";
  }
  return "direct";
}

inline const char* to_string(Measure m) noexcept {
  return m == Measure::geometric ? "geometric" : "exponential";
}

inline Method parse_method(const std::string& s) {
  for (Method m : {Method::direct, Method::sylvester, Method::cg, Method::fixed_point, Method::spectral}) {
    if (s == to_string(m)) return m;
  }
  throw InvalidArgument("unknown method \"" + s + "\" (expected direct, sylvester, cg, fixed_point or spectral)");
}

inline Measure parse_measure(const std::string& s) {
  if (s == "geometric") return Measure::geometric;
  if (s == "exponential") return Measure::exponential;
  throw InvalidArgument("unknown measure \"" + s + "\" (expected geometric or exponential)");
}

struct KernelConfig {
  double lambda = 1e-3;
  Method method = Method::fixed_point;
  double tol = 1e-6;
  std::size_t max_iter = 1000;
  Measure measure = Measure::geometric;
  /// Truncation length for series-sum reference computations.
  std::size_t k_max = 20;
  /// Use the row-normalized transition matrix D^-1 A instead of raw weights.
  bool degree_normalize = true;

  void validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidArgument("KernelConfig: lambda must be finite and >= 0");
    if (!(tol > 0.0)) throw InvalidArgument("KernelConfig: tol must be > 0");
    if (k_max < 1) throw InvalidArgument("KernelConfig: k_max must be >= 1");
    if (max_iter < 1) throw InvalidArgument("KernelConfig: max_iter must be >= 1");
  }
};

struct KernelResult {
  double value = 0.0;
  Method method = Method::direct;
  std::size_t iterations = 0;
  double residual = 0.0;
  double wall_time = 0.0;
  bool converged = true;
};

}  // namespace walkernel

#endif  // WALKERNEL_KERNEL_CONFIG_HPP
