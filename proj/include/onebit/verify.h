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

// Self-check suite run by `onebit verify`: every invariant of the library
// evaluated over a parameter grid, each reported with its worst deviation.

#ifndef ONEBIT_VERIFY_H_
#define ONEBIT_VERIFY_H_

#include <string>
#include <vector>

namespace onebit {

struct ParameterGrid {
  std::vector<int> v;
  std::vector<double> eps;
  std::vector<double> delta;
  std::vector<double> gamma;
};

// v = 2..8; eps {0.1, 0.25, 0.5, 1, 2, 4}; delta {0, 0.05, 0.2, 0.5, 0.9, 1};
// gamma {0.05, 0.2, 0.4, log 2}.
ParameterGrid FullGrid();
// A subset of FullGrid with v <= 5.
ParameterGrid SmallGrid();

struct CheckResult {
  std::string name;
  bool passed = true;
  double worst_deviation = 0.0;
  int cases = 0;
  std::string detail;  // first failing case, if any
};

// Formats "PASS|FAIL  name  cases=..  worst=..  detail".
std::string FormatCheck(const CheckResult& r);

CheckResult CheckSupFClosedForm(const ParameterGrid& grid);
CheckResult CheckLowerBoundMatchesPut(const ParameterGrid& grid);
CheckResult CheckExtremeFamiliesAdmissible(const ParameterGrid& grid);
CheckResult CheckAttainment(const ParameterGrid& grid);
CheckResult CheckUnbiasedness(const ParameterGrid& grid);
CheckResult CheckConcavityAndWorstCase(const ParameterGrid& grid);
CheckResult CheckResolutionIdentity(const ParameterGrid& grid);
CheckResult CheckCalibration(const ParameterGrid& grid);
CheckResult CheckThresholdContinuity(const ParameterGrid& grid);
// The (4,2) complete block design walk-through: incidence matrix, valued
// matrix, normalized mechanism, dual pairs and resolution, in exact
// arithmetic.
CheckResult CheckExampleDesign();

// Every grid check followed by the example check.
std::vector<CheckResult> RunAllChecks(const ParameterGrid& grid);

}  // namespace onebit

#endif  // ONEBIT_VERIFY_H_
