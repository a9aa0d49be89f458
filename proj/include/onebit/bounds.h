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

// Closed-form first-order privacy-utility trade-offs (the limit of n times
// the minimax squared error) for one-bit estimation of a v-ary
// distribution, and the lower bound they are derived from.

#ifndef ONEBIT_BOUNDS_H_
#define ONEBIT_BOUNDS_H_

#include "onebit/mechanism.h"

namespace onebit {

// 2 * ceil(v / 2).
int EvenCeiling(int v);

// The LDP parameter below which the diagonal mechanism beats the
// block-design ones:
//   log(1 + 2 (sqrt(delta (v* - 1)(v* - delta)) - delta) / v*),  v* = 2 ceil(v/2).
// zeta(v, 0) = 0.
double Zeta(int v, double delta);

// Piecewise in the parity of v and in eps versus Zeta(v, delta); the branch
// eps >= zeta is taken at equality.
double PutLdp(int v, double epsilon, double delta);

// (v - 1)(v - e^gamma + 1) / (v (e^gamma - 1)); gamma in (0, log 2].
double PutMl(int v, double gamma);

double Put(int v, const PrivacyConstraint& c);

// (v - 1)^2 / (v (sup_f - 1)); sup_f > 1.
double LanLowerBound(int v, double sup_f_value);
// Same bound from sup_f - 1 directly, for callers that hold it exactly.
double LanLowerBoundFromExcess(int v, double sup_f_excess);

}  // namespace onebit

#endif  // ONEBIT_BOUNDS_H_
