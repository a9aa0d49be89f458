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

#include "onebit/bounds.h"

#include <cmath>

namespace onebit {
namespace {

void RequireAlphabet(int v) {
  if (v < 2) throw ValidationError("alphabet size must be at least 2");
}

}  // namespace

int EvenCeiling(int v) { return 2 * ((v + 1) / 2); }

double Zeta(int v, double delta) {
  RequireAlphabet(v);
  if (!(delta >= 0 && delta <= 1)) {
    throw ValidationError("delta must lie in [0, 1]");
  }
  const double vs = EvenCeiling(v);
  const double root = std::sqrt(delta * (vs - 1.0) * (vs - delta));
  return std::log1p(2.0 * (root - delta) / vs);
}

double PutLdp(int v, double epsilon, double delta) {
  RequireAlphabet(v);
  if (!(epsilon > 0)) throw ValidationError("epsilon must be positive");
  const double vd = v;
  const double base = (vd - 1.0) * (vd - 1.0) / vd;
  if (epsilon < Zeta(v, delta)) {
    return (vd - 1.0) * (vd - delta) / (vd * delta);
  }
  // e^eps + 2 delta - 1 written as expm1(eps) + 2 delta to keep small eps
  // accurate.
  const double gap = std::expm1(epsilon) + 2.0 * delta;
  const double e_plus_1 = std::expm1(epsilon) + 2.0;
  if (v % 2 == 0) {
    const double ratio = e_plus_1 / gap;
    return base * ratio * ratio;
  }
  const double e = std::exp(epsilon);
  const double num =
      e_plus_1 * e_plus_1 + 4.0 / (vd * vd - 1.0) * (e + delta) * (1.0 - delta);
  return base * num / (gap * gap);
}

double PutMl(int v, double gamma) {
  RequireAlphabet(v);
  if (!(gamma > 0) || gamma > std::log(2.0)) {
    throw DomainError("gamma must lie in (0, log 2]");
  }
  const double vd = v;
  const double level = std::expm1(gamma);
  return (vd - 1.0) * (vd - level) / (vd * level);
}

double Put(int v, const PrivacyConstraint& c) {
  return c.is_ldp() ? PutLdp(v, c.epsilon(), c.delta()) : PutMl(v, c.gamma());
}

double LanLowerBound(int v, double sup_f_value) {
  return LanLowerBoundFromExcess(v, sup_f_value - 1.0);
}

double LanLowerBoundFromExcess(int v, double sup_f_excess) {
  RequireAlphabet(v);
  if (!(sup_f_excess > 0)) {
    throw DomainError("lower bound needs sup F > 1");
  }
  const double vd = v;
  return (vd - 1.0) * (vd - 1.0) / (vd * sup_f_excess);
}

}  // namespace onebit
