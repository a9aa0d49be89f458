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

#include "onebit/rational.h"

#include <cmath>
#include <limits>
#include <string>

namespace onebit {

Rational ToRational(double value) {
  if (!std::isfinite(value)) {
    throw ValidationError("cannot convert a non-finite double to a rational");
  }
  Rational r(value);
  r.canonicalize();
  return r;
}

std::string ToFractionString(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational ParseRational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ValidationError("empty rational literal");
  const auto dot = s.find('.');
  const auto exp = s.find_first_of("eE");
  try {
    if (dot == std::string::npos && exp == std::string::npos) {
      Rational r(s, 10);
      if (r.get_den() == 0) throw ValidationError("zero denominator in " + s);
      r.canonicalize();
      return r;
    }
    // Decimal literal: parse the digits exactly rather than through double.
    if (exp != std::string::npos) {
      throw ValidationError("exponent notation is not accepted: " + s);
    }
    const bool negative = s[0] == '-';
    std::string digits = s.substr(negative ? 1 : 0);
    const auto point = digits.find('.');
    const std::string frac = digits.substr(point + 1);
    const std::string whole = digits.substr(0, point);
    mpz_class num(whole.empty() ? "0" : whole, 10);
    mpz_class den = 1;
    for (char ch : frac) {
      if (ch < '0' || ch > '9') throw ValidationError("bad decimal: " + s);
      num = num * 10 + (ch - '0');
      den *= 10;
    }
    Rational r(negative ? mpz_class(-num) : num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ValidationError("bad rational literal: " + s);
  }
}

std::int64_t Binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  // C(n, i) = C(n, i - 1) * (n - i + 1) / i is always exact.
  __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * (n - i + 1) / i;
    if (acc > std::numeric_limits<std::int64_t>::max()) {
      throw ResourceError("binomial C(" + std::to_string(n) + ", " +
                          std::to_string(k) + ") overflows 63 bits");
    }
  }
  return static_cast<std::int64_t>(acc);
}

}  // namespace onebit
