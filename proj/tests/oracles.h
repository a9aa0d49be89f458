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

// Independent reference computations for the tests. Everything here is
// written directly from the defining formulas, in long double, without
// calling the library's evaluators.

#ifndef ONEBIT_TESTS_ORACLES_H_
#define ONEBIT_TESTS_ORACLES_H_

#include <cmath>
#include <vector>

namespace onebit::oracle {

using Real = long double;
using Matrix = std::vector<std::vector<Real>>;  // rows = inputs

// F(Q) by direct summation over columns; zero columns contribute 0.
inline Real FDirect(const Matrix& q) {
  Real f = 0;
  for (std::size_t w = 0; w < q[0].size(); ++w) {
    Real sum = 0, sum_sq = 0;
    for (const auto& row : q) {
      sum += row[w];
      sum_sq += row[w] * row[w];
    }
    if (sum > 0) f += sum_sq / sum;
  }
  return f;
}

// v x 2 matrix whose first column is `high` on t rows and `low` elsewhere.
inline Matrix TwoColumn(Real high, Real low, int t, int v) {
  Matrix q(v, std::vector<Real>(2));
  for (int x = 0; x < v; ++x) {
    q[x][0] = x < t ? high : low;
    q[x][1] = 1 - q[x][0];
  }
  return q;
}

inline Real LdpHigh(Real eps, Real delta) {
  return (std::exp(eps) + delta) / (std::exp(eps) + 1);
}

// F of the best two-level column (t = floor(v/2)).
inline Real BestTwoLevelF(Real eps, Real delta, int v) {
  const Real a = LdpHigh(eps, delta);
  return FDirect(TwoColumn(a, 1 - a, v / 2, v));
}

inline Real LevelZeroF(Real a, int v) { return FDirect(TwoColumn(a, 0, 1, v)); }

// Threshold on eps where the two-level and level-zero candidates cross,
// by bisection.
inline Real ZetaByBisection(int v, Real delta) {
  const Real target = LevelZeroF(delta, v);
  Real lo = 0, hi = 20;
  if (BestTwoLevelF(lo, delta, v) >= target) return 0;
  for (int i = 0; i < 200; ++i) {
    const Real mid = (lo + hi) / 2;
    (BestTwoLevelF(mid, delta, v) < target ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

inline Real ZetaFormula(int v, Real delta) {
  const Real vs = 2 * ((v + 1) / 2);
  return std::log(1 + 2 * (std::sqrt(delta * (vs - 1) * (vs - delta)) - delta) /
                          vs);
}

inline Real PutLdp(int v, Real eps, Real delta) {
  const Real vv = v;
  const Real e = std::exp(eps);
  if (eps < ZetaFormula(v, delta)) return (vv - 1) * (vv - delta) / (vv * delta);
  const Real lead = (vv - 1) * (vv - 1) / vv;
  const Real den = (e + 2 * delta - 1) * (e + 2 * delta - 1);
  if (v % 2 == 0) return lead * (e + 1) * (e + 1) / den;
  return lead *
         ((e + 1) * (e + 1) + 4 / (vv * vv - 1) * (e + delta) * (1 - delta)) /
         den;
}

inline Real PutMl(int v, Real gamma) {
  const Real vv = v;
  const Real e = std::exp(gamma);
  return (vv - 1) * (vv - e + 1) / (vv * (e - 1));
}

inline Real LowerBound(int v, Real sup_f) {
  return (Real(v) - 1) * (Real(v) - 1) / (Real(v) * (sup_f - 1));
}

struct Calib {
  Real c1, c2;
};

inline Calib EvenCalibration(int v, Real c, Real d) {
  const Real s = (c + d) * (c + d);
  return {(c - d) * (c - d) / ((v - 1) * s),
          (v * s - 2 * (c * c + d * d)) / (v * (v - 1) * s)};
}

inline Calib OddCalibration(int v, Real c, Real d) {
  const Real a = (v - 1) / 2;
  const Real g = ((a + 1) * c + a * d) * (a * c + (a + 1) * d);
  const Real c1 = (c - d) * (c - d) * (a + 1) / (2 * g);
  const Real c2 = ((2 * a + 1) * ((c + d) * (c + d) * a + 2 * c * d) -
                   (c - d) * (c - d)) /
                  (2 * (2 * a + 1) * g);
  return {c1, c2};
}

inline Calib DiagonalCalibration(int v, Real c) {
  return {c / (v - c), (v - 2 * c) / (v * (v - c))};
}

// Per-coordinate variance of eta at the uniform input.
inline Real EvenVarianceAtUniform(int v, Real c, Real d) {
  return (c - d) * (c - d) / (Real(v) * v * (c + d) * (c + d));
}
inline Real DiagonalVarianceAtUniform(int v, Real c) {
  return c * (v - 1) / (Real(v) * v * (v - c));
}

}  // namespace onebit::oracle

#endif  // ONEBIT_TESTS_ORACLES_H_
