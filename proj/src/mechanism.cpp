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

#include "onebit/mechanism.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>

namespace onebit {
namespace {

const Rational& Slack() {
  static const Rational kSlack = ToRational(kConstraintSlack);
  return kSlack;
}

std::string Shape(int v, int m) {
  return std::to_string(v) + "x" + std::to_string(m);
}

}  // namespace

Mechanism::Mechanism(int num_inputs, int num_outputs,
                     std::vector<Rational> entries)
    : Mechanism(num_inputs, num_outputs, std::move(entries), Options{}) {}

Mechanism::Mechanism(int num_inputs, int num_outputs,
                     std::vector<Rational> entries, Options options)
    : num_inputs_(num_inputs),
      num_outputs_(num_outputs),
      entries_(std::move(entries)) {
  if (num_inputs_ < 2 || num_outputs_ < 1) {
    throw ValidationError("mechanism needs at least 2 inputs and 1 output, got " +
                          Shape(num_inputs_, num_outputs_));
  }
  if (entries_.size() != static_cast<size_t>(num_inputs_) * num_outputs_) {
    throw ValidationError("entry count does not match shape " +
                          Shape(num_inputs_, num_outputs_));
  }
  for (int x = 0; x < num_inputs_; ++x) {
    Rational row_sum = 0;
    for (int y = 0; y < num_outputs_; ++y) {
      const Rational& e = at(x, y);
      if (e < 0 || e > 1) {
        throw ValidationError("entry (" + std::to_string(x) + ", " +
                              std::to_string(y) + ") = " +
                              ToFractionString(e) + " is outside [0, 1]");
      }
      row_sum += e;
    }
    if (row_sum != 1) {
      throw ValidationError("row " + std::to_string(x) + " sums to " +
                            ToFractionString(row_sum) + ", not 1");
    }
  }
  for (int y = 0; y < num_outputs_; ++y) {
    if (IsZeroColumn(y)) {
      if (!options.allow_zero_columns) {
        throw ValidationError("output column " + std::to_string(y) +
                              " is identically zero");
      }
      has_zero_column_ = true;
    }
  }
}

Mechanism Mechanism::FromRows(const std::vector<std::vector<Rational>>& rows) {
  return FromRows(rows, Options{});
}

Mechanism Mechanism::FromRows(const std::vector<std::vector<Rational>>& rows,
                              Options options) {
  if (rows.empty()) throw ValidationError("mechanism has no rows");
  const int m = static_cast<int>(rows.front().size());
  std::vector<Rational> entries;
  entries.reserve(rows.size() * m);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != m) {
      throw ValidationError("ragged mechanism rows");
    }
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return Mechanism(static_cast<int>(rows.size()), m, std::move(entries),
                   options);
}

std::vector<Rational> Mechanism::Column(int y) const {
  std::vector<Rational> col;
  col.reserve(num_inputs_);
  for (int x = 0; x < num_inputs_; ++x) col.push_back(at(x, y));
  return col;
}

Rational Mechanism::ColumnSum(int y) const {
  Rational s = 0;
  for (int x = 0; x < num_inputs_; ++x) s += at(x, y);
  return s;
}

bool Mechanism::IsZeroColumn(int y) const {
  for (int x = 0; x < num_inputs_; ++x) {
    if (sgn(at(x, y)) != 0) return false;
  }
  return true;
}

std::vector<double> Mechanism::ToDoubles() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const Rational& e : entries_) out.push_back(e.get_d());
  return out;
}

PrivacyConstraint PrivacyConstraint::Ldp(double epsilon, double delta) {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    throw ValidationError("LDP epsilon must be a finite positive number");
  }
  if (!(delta >= 0 && delta <= 1)) {
    throw ValidationError("LDP delta must lie in [0, 1]");
  }
  return PrivacyConstraint(Kind::kLdp, epsilon, delta, 0.0);
}

PrivacyConstraint PrivacyConstraint::Ml(double gamma) {
  if (!(gamma > 0) || gamma > std::log(2.0)) {
    throw DomainError("maximal-leakage gamma must lie in (0, log 2]");
  }
  return PrivacyConstraint(Kind::kMl, 0.0, 0.0, gamma);
}

std::string PrivacyConstraint::ToString() const {
  std::ostringstream os;
  os.precision(12);
  if (is_ldp()) {
    os << "LDP(eps=" << epsilon_ << ", delta=" << delta_ << ")";
  } else {
    os << "ML(gamma=" << gamma_ << ")";
  }
  return os.str();
}

bool CheckLdp(const Mechanism& q, double epsilon, double delta) {
  if (!(epsilon > 0) || !(delta >= 0 && delta <= 1)) {
    throw ValidationError("CheckLdp needs eps > 0 and delta in [0, 1]");
  }
  const Rational factor = ToRational(std::exp(epsilon));
  const Rational add = ToRational(delta) + Slack();
  // Over all ordered pairs the binding one is (argmax, argmin) of a column.
  for (int y = 0; y < q.num_outputs(); ++y) {
    Rational lo = q.at(0, y);
    Rational hi = q.at(0, y);
    for (int x = 1; x < q.num_inputs(); ++x) {
      if (q.at(x, y) < lo) lo = q.at(x, y);
      if (q.at(x, y) > hi) hi = q.at(x, y);
    }
    if (hi > factor * lo + add) return false;
  }
  return true;
}

bool CheckMl(const Mechanism& q, double gamma) {
  if (!(gamma > 0)) throw ValidationError("CheckMl needs gamma > 0");
  Rational leakage = 0;
  for (int y = 0; y < q.num_outputs(); ++y) {
    Rational hi = q.at(0, y);
    for (int x = 1; x < q.num_inputs(); ++x) {
      if (q.at(x, y) > hi) hi = q.at(x, y);
    }
    leakage += hi;
  }
  return leakage <= ToRational(std::exp(gamma)) + Slack();
}

bool CheckOneBit(const Mechanism& q) { return q.num_outputs() <= 2; }

bool CheckConstraint(const Mechanism& q, const PrivacyConstraint& c) {
  return c.is_ldp() ? CheckLdp(q, c.epsilon(), c.delta())
                    : CheckMl(q, c.gamma());
}

Rational FValueExact(const Mechanism& q) {
  Rational total = 0;
  for (int y = 0; y < q.num_outputs(); ++y) {
    Rational sum = 0;
    Rational sum_sq = 0;
    for (int x = 0; x < q.num_inputs(); ++x) {
      sum += q.at(x, y);
      sum_sq += q.at(x, y) * q.at(x, y);
    }
    if (sgn(sum) != 0) total += sum_sq / sum;
  }
  return total;
}

double FValue(const Mechanism& q) { return FValueExact(q).get_d(); }

double FExcess(const Mechanism& q) {
  Rational excess = FValueExact(q) - 1;
  return excess.get_d();
}

double FTwoLevel(double a, int t, int v) {
  if (!(a >= 0 && a <= 1)) throw DomainError("FTwoLevel: a must lie in [0, 1]");
  if (v < 2 || t < 1 || t > v - 1) {
    throw DomainError("FTwoLevel: need 1 <= t <= v - 1");
  }
  const double b = 1.0 - a;
  const double mix = (static_cast<double>(t) * t +
                      static_cast<double>(v - t) * (v - t)) /
                     (static_cast<double>(t) * (v - t));
  const double num = (2.0 * a - 1.0) * (2.0 * a - 1.0);
  return 1.0 + num / (a * a + mix * a * b + b * b);
}

double FLevelZero(double a, int t, int v) {
  if (!(a >= 0 && a <= 1)) throw DomainError("FLevelZero: a must lie in [0, 1]");
  if (v < 2 || t < 1 || t > v) {
    throw DomainError("FLevelZero: need 1 <= t <= v");
  }
  const double den = v - a * t;
  if (den == 0) throw DomainError("FLevelZero: v - a t vanishes");
  return 2.0 - (1.0 - a) * v / den;
}

double LdpHighLevel(double epsilon, double delta) {
  const double e = std::exp(epsilon);
  return std::min(1.0, (e + delta) / (e + 1.0));
}

double MlLevel(double gamma) { return std::min(1.0, std::expm1(gamma)); }

std::string ToString(ExtremeFamily::Kind kind) {
  switch (kind) {
    case ExtremeFamily::Kind::kTwoLevel:
      return "TwoLevel";
    case ExtremeFamily::Kind::kLevelZero:
      return "LevelZero";
    case ExtremeFamily::Kind::kZeroColumn:
      return "ZeroColumn";
  }
  return "?";
}

std::vector<ExtremeFamily> ExtremeColumnFamilies(const PrivacyConstraint& c,
                                                 int v) {
  if (v < 2) throw ValidationError("alphabet size must be at least 2");
  using Kind = ExtremeFamily::Kind;
  std::vector<ExtremeFamily> out;
  if (c.is_ldp()) {
    const double high = LdpHighLevel(c.epsilon(), c.delta());
    out.push_back({Kind::kTwoLevel, high, 1.0 - high, 1, v - 1});
    out.push_back({Kind::kLevelZero, c.delta(), 0.0, 1, v});
  } else {
    out.push_back({Kind::kLevelZero, MlLevel(c.gamma()), 0.0, 1, v});
  }
  out.push_back({Kind::kZeroColumn, 0.0, std::nullopt, 0, 0});
  return out;
}

Mechanism MaterializeExtreme(const ExtremeFamily& family, int t, int v) {
  if (t < family.t_min || t > family.t_max) {
    throw ValidationError("t outside the family's admissible range");
  }
  const Rational high = ToRational(family.high);
  Rational low = 0;
  switch (family.kind) {
    case ExtremeFamily::Kind::kTwoLevel:
      low = 1 - high;
      break;
    case ExtremeFamily::Kind::kLevelZero:
      low = 0;
      break;
    case ExtremeFamily::Kind::kZeroColumn:
      t = 0;
      break;
  }
  std::vector<Rational> entries;
  entries.reserve(2 * static_cast<size_t>(v));
  for (int x = 0; x < v; ++x) {
    Rational first = 0;
    if (family.kind != ExtremeFamily::Kind::kZeroColumn) {
      first = x < t ? high : low;
    }
    entries.push_back(first);
    entries.push_back(1 - first);
  }
  return Mechanism(v, 2, std::move(entries), {.allow_zero_columns = true});
}

SupFResult SupF(const PrivacyConstraint& c, int v) {
  std::optional<SupFResult> best;
  Rational best_f;
  for (const ExtremeFamily& family : ExtremeColumnFamilies(c, v)) {
    for (int t = family.t_min; t <= family.t_max; ++t) {
      const Rational f = FValueExact(MaterializeExtreme(family, t, v));
      if (!best || f > best_f) {
        best_f = f;
        const Rational excess = f - 1;
        best = SupFResult{f.get_d(), excess.get_d(), family, t};
      }
    }
  }
  return *best;
}

}  // namespace onebit
