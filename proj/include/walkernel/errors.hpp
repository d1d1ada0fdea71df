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

#ifndef WALKERNEL_ERRORS_HPP
#define WALKERNEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace walkernel {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands have incompatible shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value violates a documented precondition (NaN entry, negative decay, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A direct factorization or Stein operator is singular to working precision.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// An iteration grew without bound, or a spectral precondition such as
/// lambda < 1 / xi_max is violated.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Malformed graph or transducer document.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace walkernel

#endif  // WALKERNEL_ERRORS_HPP
