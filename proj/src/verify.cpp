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

#include "onebit/verify.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <sstream>

#include "onebit/bounds.h"
#include "onebit/design.h"
#include "onebit/io.h"
#include "onebit/mechanism.h"
#include "onebit/scheme.h"
#include "onebit/sim.h"

namespace onebit {
namespace {

// n used wherever a sample size is needed; SR results do not depend on it.
constexpr std::int64_t kN = 1000;

double RelDiff(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

// Records `deviation` against `tolerance`; keeps the first failing label.
void Track(CheckResult& r, double deviation, double tolerance,
           const std::string& label) {
  ++r.cases;
  if (!(deviation <= tolerance)) {
    if (r.passed) r.detail = label;
    r.passed = false;
  }
  if (std::isnan(deviation) || deviation > r.worst_deviation) {
    r.worst_deviation = deviation;
  }
}

CheckResult Named(std::string name) {
  CheckResult r;
  r.name = std::move(name);
  return r;
}

void Fail(CheckResult& r, const std::string& label) {
  Track(r, INFINITY, 0.0, label);
}

std::vector<PrivacyConstraint> Constraints(const ParameterGrid& grid) {
  std::vector<PrivacyConstraint> out;
  for (double eps : grid.eps) {
    for (double delta : grid.delta) {
      out.push_back(PrivacyConstraint::Ldp(eps, delta));
    }
  }
  for (double gamma : grid.gamma) out.push_back(PrivacyConstraint::Ml(gamma));
  return out;
}

std::string Label(const PrivacyConstraint& c, int v) {
  return "v=" + std::to_string(v) + " " + c.ToString();
}

void ForEachPoint(const ParameterGrid& grid,
                  const std::function<void(const PrivacyConstraint&, int)>& fn) {
  for (int v : grid.v) {
    for (const PrivacyConstraint& c : Constraints(grid)) fn(c, v);
  }
}

// Builds the scheme or records the construction failure.
std::shared_ptr<const SrScheme> TryBuild(CheckResult& r,
                                         const PrivacyConstraint& c, int v) {
  try {
    return std::make_shared<const SrScheme>(BuildOptimalSrScheme(c, v));
  } catch (const std::exception& e) {
    Fail(r, Label(c, v) + ": " + e.what());
    return nullptr;
  }
}

double MaxAbsDiff(const std::vector<Rational>& a,
                  const std::vector<Rational>& b) {
  Rational worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Rational d = abs(a[i] - b[i]);
    if (d > worst) worst = d;
  }
  return worst.get_d();
}

std::vector<double> Basis(int v, int x) {
  std::vector<double> e(v, 0.0);
  e[x] = 1.0;
  return e;
}

// f(a) - 2 f((a + b) / 2) + f(b) for the SR mean squared error.
double SecondDifference(const SrScheme& s, const std::vector<double>& a,
                        const std::vector<double>& b) {
  std::vector<double> mid(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) mid[i] = 0.5 * (a[i] + b[i]);
  return ExactMse(s, a, kN, SimMode::kSr) -
         2.0 * ExactMse(s, mid, kN, SimMode::kSr) +
         ExactMse(s, b, kN, SimMode::kSr);
}

}  // namespace

ParameterGrid FullGrid() {
  return {{2, 3, 4, 5, 6, 7, 8},
          {0.1, 0.25, 0.5, 1.0, 2.0, 4.0},
          {0.0, 0.05, 0.2, 0.5, 0.9, 1.0},
          {0.05, 0.2, 0.4, std::log(2.0)}};
}

ParameterGrid SmallGrid() {
  return {{2, 3, 4, 5}, {0.1, 1.0, 4.0}, {0.0, 0.2, 1.0}, {0.2, std::log(2.0)}};
}

std::string FormatCheck(const CheckResult& r) {
  std::ostringstream out;
  out << (r.passed ? "PASS" : "FAIL") << "  " << r.name
      << "  cases=" << r.cases
      << "  worst=" << FormatNumber(r.worst_deviation);
  if (!r.detail.empty()) out << "  first failure: " << r.detail;
  return out.str();
}

CheckResult CheckSupFClosedForm(const ParameterGrid& grid) {
  CheckResult r = Named("sup_f brute force = closed-form candidates");
  ForEachPoint(grid, [&](const PrivacyConstraint& c, int v) {
    double closed;
    if (c.is_ldp()) {
      closed = std::max(
          FTwoLevel(LdpHighLevel(c.epsilon(), c.delta()), v / 2, v),
          FLevelZero(c.delta(), 1, v));
    } else {
      closed = FLevelZero(MlLevel(c.gamma()), 1, v);
    }
    Track(r, std::abs(SupF(c, v).value - closed), 1e-12, Label(c, v));
  });
  return r;
}

CheckResult CheckLowerBoundMatchesPut(const ParameterGrid& grid) {
  CheckResult r = Named("lower bound from sup_f = PUT");
  ForEachPoint(grid, [&](const PrivacyConstraint& c, int v) {
    const double bound = LanLowerBoundFromExcess(v, SupF(c, v).excess);
    Track(r, RelDiff(bound, Put(v, c)), 1e-10, Label(c, v));
  });
  return r;
}

CheckResult CheckExtremeFamiliesAdmissible(const ParameterGrid& grid) {
  CheckResult r = Named("extreme mechanisms meet their constraint");
  ForEachPoint(grid, [&](const PrivacyConstraint& c, int v) {
    for (const ExtremeFamily& family : ExtremeColumnFamilies(c, v)) {
      for (int t = family.t_min; t <= family.t_max; ++t) {
        const Mechanism q = MaterializeExtreme(family, t, v);
        const bool ok = CheckOneBit(q) && CheckConstraint(q, c);
        Track(r, ok ? 0.0 : 1.0, 0.0,
              Label(c, v) + " " + ToString(family.kind) +
                  " t=" + std::to_string(t));
      }
    }
  });
  return r;
}

CheckResult CheckAttainment(const ParameterGrid& grid) {
  CheckResult r = Named("n * exact MSE at uniform = PUT");
  ForEachPoint(grid, [&](const PrivacyConstraint& c, int v) {
    const auto s = TryBuild(r, c, v);
    if (!s) return;
    const Rational mse =
        ExactMseRational(*s, UniformThetaExact(v), kN, SimMode::kSr);
    const double n_mse = Rational(mse * kN).get_d();
    Track(r, RelDiff(n_mse, Put(v, c)), 1e-10,
          Label(c, v) + " " + ToString(s->scheme_case()));
  });
  return r;
}

CheckResult CheckUnbiasedness(const ParameterGrid& grid) {
  CheckResult r = Named("estimators unbiased at vertices and uniform");
  ForEachPoint(grid, [&](const PrivacyConstraint& c, int v) {
    const auto s = TryBuild(r, c, v);
    if (!s) return;
    const PlainScheme plain(s, 2 * static_cast<std::int64_t>(s->num_u()) + 1);
    std::vector<std::vector<Rational>> probes;
    for (int x = 0; x < v; ++x) {
      std::vector<Rational> e(v, Rational(0));
      e[x] = 1;
      probes.push_back(std::move(e));
    }
    probes.push_back(UniformThetaExact(v));
    for (const auto& theta : probes) {
      Track(r, MaxAbsDiff(ExpectedEstimateSr(*s, theta), theta), 1e-12,
            Label(c, v) + " sr");
      Track(r, MaxAbsDiff(ExpectedEstimatePlain(plain, theta), theta), 1e-12,
            Label(c, v) + " plain");
    }
  });
  return r;
}

CheckResult CheckConcavityAndWorstCase(const ParameterGrid& grid) {
  CheckResult r = Named("MSE concave, worst case at uniform");
  ForEachPoint(grid, [&](const PrivacyConstraint& c, int v) {
    const auto s = TryBuild(r, c, v);
    if (!s) return;
    const std::vector<double> uniform = UniformTheta(v);
    const double scale = ExactMse(*s, uniform, kN, SimMode::kSr);
    // Segments from the uniform point to each vertex and between vertices.
    for (int x = 0; x < v; ++x) {
      Track(r, SecondDifference(*s, uniform, Basis(v, x)) / scale, 1e-12,
            Label(c, v) + " uniform->e" + std::to_string(x));
      for (int y = x + 1; y < v; ++y) {
        Track(r, SecondDifference(*s, Basis(v, x), Basis(v, y)) / scale,
              1e-12,
              Label(c, v) + " e" + std::to_string(x) + "->e" +
                  std::to_string(y));
      }
    }
    const WorstCase worst = WorstCaseScan(*s, kN, 64, 12345);
    Track(r, worst.is_uniform ? 0.0 : RelDiff(worst.n_mse, kN * scale), 0.0,
          Label(c, v) + " worst case not uniform");
  });
  return r;
}

CheckResult CheckResolutionIdentity(const ParameterGrid& grid) {
  CheckResult r = Named("resolution reproduces the designed mechanism");
  ForEachPoint(grid, [&](const PrivacyConstraint& c, int v) {
    const auto s = TryBuild(r, c, v);
    if (!s) return;
    const Resolution res{s->num_u(), s->per_u()};
    const bool ok = ResolutionReproduces(s->predesigned(), s->partition(), res);
    Track(r, ok ? 0.0 : 1.0, 0.0, Label(c, v));
  });
  return r;
}

CheckResult CheckCalibration(const ParameterGrid& grid) {
  CheckResult r = Named("closed-form calibration = numeric calibration");
  ForEachPoint(grid, [&](const PrivacyConstraint& c, int v) {
    const auto s = TryBuild(r, c, v);
    if (!s) return;
    const Calibration closed =
        CalibrationClosedForm(s->scheme_case(), v, s->design_c().get_d(),
                              s->design_d().get_d());
    const double dev = std::max(RelDiff(closed.c1, s->c1().get_d()),
                                RelDiff(closed.c2, s->c2().get_d()));
    Track(r, dev, 1e-12, Label(c, v) + " " + ToString(s->scheme_case()));
  });
  return r;
}

CheckResult CheckThresholdContinuity(const ParameterGrid& grid) {
  CheckResult r = Named("LDP trade-off continuous at zeta");
  for (int v : grid.v) {
    for (double delta : grid.delta) {
      if (delta <= 0) continue;
      const double zeta = Zeta(v, delta);
      // zeta(2, 1) = 0: no eps > 0 lies below the threshold.
      if (zeta <= 1e-9) continue;
      const double at = PutLdp(v, zeta, delta);
      for (double eps : {zeta - 1e-9, zeta + 1e-9}) {
        Track(r, std::abs(PutLdp(v, eps, delta) - at), 1e-6,
              "v=" + std::to_string(v) + " delta=" + FormatNumber(delta));
      }
    }
  }
  return r;
}

CheckResult CheckExampleDesign() {
  CheckResult r = Named("(4,2) block design walk-through");
  const std::vector<std::vector<int>> expected_a = {{1, 1, 1, 0, 0, 0},
                                                    {1, 0, 0, 1, 1, 0},
                                                    {0, 1, 0, 1, 0, 1},
                                                    {0, 0, 1, 0, 1, 1}};
  const std::vector<std::pair<int, int>> expected_pairs = {
      {0, 5}, {1, 4}, {2, 3}};
  const BlockDesign g = CompleteBlockDesign(4, 2);
  const DesignReport report = VerifyDesign(g);
  Track(r,
        report.ok() && *report.params == DesignParams{4, 6, 3, 2, 1} ? 0 : 1,
        0, "design parameters");
  const IncidenceMatrix a = Incidence(g);
  bool a_ok = a.rows == 4 && a.cols == 6;
  for (int i = 0; a_ok && i < 4; ++i) {
    for (int j = 0; j < 6; ++j) a_ok = a_ok && a.at(i, j) == expected_a[i][j];
  }
  Track(r, a_ok ? 0 : 1, 0, "incidence matrix");

  // Two symbolic (c, d) instantiations: a generic rational pair and the LDP
  // levels for eps = 1, delta = 0.1.
  const double high = LdpHighLevel(1.0, 0.1);
  const std::vector<std::pair<Rational, Rational>> levels = {
      {ToRational(3, 4), ToRational(1, 4)},
      {ToRational(high), 1 - ToRational(high)}};
  for (const auto& [c, d] : levels) {
    const std::string tag = " (c=" + ToFractionString(c) + ")";
    const Mechanism q = BdMechanism(g, c, d);
    const Rational norm = 3 * (c + d);
    bool q_ok = true;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 6; ++j) {
        const Rational b = expected_a[i][j] ? c : d;
        q_ok = q_ok && q.at(i, j) == b / norm;
      }
    }
    Track(r, q_ok ? 0 : 1, 0, "Q = B / (3 (c + d))" + tag);
    const DualPairPartition found = FindDualPairs(q);
    const DualPairPartition complements = ComplementPairs(g, q);
    Track(r,
          found.pairs == expected_pairs && complements.pairs == expected_pairs
              ? 0
              : 1,
          0, "dual pairs" + tag);
    const Resolution res = Resolve(q, found);
    bool res_ok = res.num_u == 3;
    for (int u = 0; res_ok && u < 3; ++u) {
      const auto [i, j] = expected_pairs[u];
      for (int x = 0; x < 4; ++x) {
        res_ok = res_ok && res.per_u[u].at(x, 0) == 3 * q.at(x, i) &&
                 res.per_u[u].at(x, 1) == 3 * q.at(x, j);
      }
    }
    res_ok = res_ok && ResolutionReproduces(q, found, res);
    Track(r, res_ok ? 0 : 1, 0, "Q_u = 3 C_u" + tag);
  }
  return r;
}

std::vector<CheckResult> RunAllChecks(const ParameterGrid& grid) {
  return {CheckSupFClosedForm(grid),
          CheckLowerBoundMatchesPut(grid),
          CheckExtremeFamiliesAdmissible(grid),
          CheckAttainment(grid),
          CheckUnbiasedness(grid),
          CheckConcavityAndWorstCase(grid),
          CheckResolutionIdentity(grid),
          CheckCalibration(grid),
          CheckThresholdContinuity(grid),
          CheckExampleDesign()};
}

}  // namespace onebit
