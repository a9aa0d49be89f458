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

// Row-stochastic privacy mechanisms, the LDP / maximal-leakage / one-bit
// admissibility checks, the Fisher-type functional
//
//   F(Q) = sum_w (sum_x Q(w|x)^2) / (sum_x Q(w|x)),
//
// and the extreme points of the one-bit mechanism polytope over which F is
// maximized.

#ifndef ONEBIT_MECHANISM_H_
#define ONEBIT_MECHANISM_H_

#include <optional>
#include <string>
#include <vector>

#include "onebit/rational.h"

namespace onebit {

// A v x m row-stochastic matrix Q(y|x) with exact rational entries. Rows are
// inputs, columns are released symbols. Immutable.
class Mechanism {
 public:
  struct Options {
    // Output columns that are identically zero are rejected unless set.
    bool allow_zero_columns = false;
  };

  // Validates shape (v >= 2, m >= 1), entries in [0, 1] and exact row sums.
  Mechanism(int num_inputs, int num_outputs, std::vector<Rational> entries);
  Mechanism(int num_inputs, int num_outputs, std::vector<Rational> entries,
            Options options);

  static Mechanism FromRows(const std::vector<std::vector<Rational>>& rows);
  static Mechanism FromRows(const std::vector<std::vector<Rational>>& rows,
                            Options options);

  int num_inputs() const { return num_inputs_; }
  int num_outputs() const { return num_outputs_; }
  const Rational& at(int x, int y) const {
    return entries_[static_cast<size_t>(x) * num_outputs_ + y];
  }
  const std::vector<Rational>& entries() const { return entries_; }

  std::vector<Rational> Column(int y) const;
  Rational ColumnSum(int y) const;
  bool IsZeroColumn(int y) const;
  bool has_zero_column() const { return has_zero_column_; }

  // Row-major double view for samplers.
  std::vector<double> ToDoubles() const;

  friend bool operator==(const Mechanism& a, const Mechanism& b) {
    return a.num_inputs_ == b.num_inputs_ && a.num_outputs_ == b.num_outputs_ &&
           a.entries_ == b.entries_;
  }

 private:
  int num_inputs_;
  int num_outputs_;
  std::vector<Rational> entries_;
  bool has_zero_column_ = false;
};

class PrivacyConstraint {
 public:
  enum class Kind { kLdp, kMl };

  // eps > 0, delta in [0, 1].
  static PrivacyConstraint Ldp(double epsilon, double delta);
  // gamma in (0, log 2]; larger values make the one-bit constraint vacuous.
  static PrivacyConstraint Ml(double gamma);

  Kind kind() const { return kind_; }
  bool is_ldp() const { return kind_ == Kind::kLdp; }
  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }
  double gamma() const { return gamma_; }

  std::string ToString() const;

 private:
  PrivacyConstraint(Kind kind, double epsilon, double delta, double gamma)
      : kind_(kind), epsilon_(epsilon), delta_(delta), gamma_(gamma) {}

  Kind kind_;
  double epsilon_ = 0.0;
  double delta_ = 0.0;
  double gamma_ = 0.0;
};

// Slack allowed on constraint checks. The constraint parameters e^eps and
// e^gamma are real numbers rounded to doubles, so a mechanism that meets a
// constraint with equality may miss it by a rounding error.
inline constexpr double kConstraintSlack = 1e-12;

// Q(y|x) <= e^eps Q(y|x') + delta for all y, x, x'. Evaluated exactly on the
// rational entries.
bool CheckLdp(const Mechanism& q, double epsilon, double delta);

// sum_y max_x Q(y|x) <= e^gamma. Any gamma > 0 is accepted here.
bool CheckMl(const Mechanism& q, double gamma);

bool CheckOneBit(const Mechanism& q);

// Dispatches on the constraint kind; does not include the one-bit check.
bool CheckConstraint(const Mechanism& q, const PrivacyConstraint& c);

// Exact F(Q). All-zero columns contribute 0.
Rational FValueExact(const Mechanism& q);
double FValue(const Mechanism& q);
// F(Q) - 1 without the cancellation of forming F first.
double FExcess(const Mechanism& q);

// F of a v x 2 mechanism whose first column takes value `a` on t inputs and
// 1 - a elsewhere. Requires 1 <= t <= v - 1.
double FTwoLevel(double a, int t, int v);

// F of a v x 2 mechanism whose first column takes value `a` on t >= 1 inputs
// and 0 elsewhere. Requires v - a t != 0.
double FLevelZero(double a, int t, int v);

// (e^eps + delta) / (e^eps + 1), the larger value of the LDP two-level
// column. The smaller one is taken as exactly 1 minus this.
double LdpHighLevel(double epsilon, double delta);

// e^gamma - 1, clamped to 1 so that gamma = log 2 yields a valid column.
double MlLevel(double gamma);

struct ExtremeFamily {
  enum class Kind { kTwoLevel, kLevelZero, kZeroColumn };

  Kind kind;
  double high = 0.0;
  // 1 - high for kTwoLevel, 0 for kLevelZero, absent for kZeroColumn.
  std::optional<double> low;
  // Admissible counts of `high` in the first column, inclusive.
  int t_min = 0;
  int t_max = 0;
};

std::string ToString(ExtremeFamily::Kind kind);

// The column-value families that generate every extreme point of the set of
// one-bit mechanisms meeting `c`, in the order TwoLevel, LevelZero,
// ZeroColumn (LDP) or LevelZero, ZeroColumn (ML).
std::vector<ExtremeFamily> ExtremeColumnFamilies(const PrivacyConstraint& c,
                                                 int v);

// The v x 2 mechanism whose first column has `t` copies of the family's high
// value followed by v - t copies of its low value.
Mechanism MaterializeExtreme(const ExtremeFamily& family, int t, int v);

struct SupFResult {
  double value;
  double excess;  // value - 1, computed exactly before rounding
  ExtremeFamily family;
  int t;
};

// Maximizes F over every extreme family and every admissible t by explicit
// construction. Ties go to the earlier family, then the smaller t.
SupFResult SupF(const PrivacyConstraint& c, int v);

}  // namespace onebit

#endif  // ONEBIT_MECHANISM_H_
