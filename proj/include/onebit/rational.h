// Copyright 2026 The Onebit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ONEBIT_RATIONAL_H_
#define ONEBIT_RATIONAL_H_

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace onebit {

// Exact rational number. Every finite double converts to one without loss.
using Rational = mpq_class;

// Raised when an input violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a closed form is evaluated outside the region where it is
// defined (division by zero, vacuous constraint, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when a construction would exceed a configured size cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact conversion; throws ValidationError on NaN or infinity.
Rational ToRational(double value);

inline Rational ToRational(std::int64_t num, std::int64_t den) {
  Rational r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

inline double ToDouble(const Rational& r) { return r.get_d(); }

// "p/q" (or "p" for integers), always in lowest terms.
std::string ToFractionString(const Rational& r);

// Accepts "p/q", "p", or a decimal literal such as "0.25".
Rational ParseRational(std::string_view text);

// Binomial coefficient with C(n, k) = 0 for k < 0 or k > n. Throws
// ResourceError if the result does not fit in 63 bits.
std::int64_t Binomial(int n, int k);

}  // namespace onebit

#endif  // ONEBIT_RATIONAL_H_
