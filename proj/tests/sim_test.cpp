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

#include "onebit/sim.h"

#include <cmath>
#include <memory>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "onebit/bounds.h"

namespace onebit {
namespace {

std::shared_ptr<const SrScheme> Build(const PrivacyConstraint& c, int v) {
  return std::make_shared<const SrScheme>(BuildOptimalSrScheme(c, v));
}

SimConfig Config(std::shared_ptr<const SrScheme> s, std::int64_t n, int trials,
                 SimMode mode = SimMode::kSr) {
  SimConfig cfg;
  cfg.theta = UniformTheta(s->v());
  cfg.scheme = std::move(s);
  cfg.n = n;
  cfg.trials = trials;
  cfg.master_seed = 2024;
  cfg.mode = mode;
  return cfg;
}

TEST(ValidateConfigTest, RejectsBadConfigs) {
  const auto s = Build(PrivacyConstraint::Ldp(1.0, 0.1), 4);
  SimConfig cfg = Config(s, 100, 10);
  EXPECT_NO_THROW(ValidateConfig(cfg));
  cfg.theta = {0.5, 0.5, 0.1, -0.1};
  EXPECT_THROW(ValidateConfig(cfg), ValidationError);
  cfg.theta = {0.5, 0.5, 0.1, 0.0};
  EXPECT_THROW(ValidateConfig(cfg), ValidationError);
  cfg.theta = {0.5, 0.5};
  EXPECT_THROW(ValidateConfig(cfg), ValidationError);
  cfg = Config(s, 3, 10, SimMode::kPlain);
  EXPECT_THROW(ValidateConfig(cfg), ValidationError);
  cfg = Config(s, 0, 10);
  EXPECT_THROW(ValidateConfig(cfg), ValidationError);
  cfg = Config(s, 10, 0);
  EXPECT_THROW(ValidateConfig(cfg), ValidationError);
}

TEST(RunTrialTest, DeterministicPerTrialIndex) {
  const SimConfig cfg = Config(Build(PrivacyConstraint::Ldp(1.0, 0.1), 4), 5000, 4);
  EXPECT_EQ(RunTrial(cfg, 3), RunTrial(cfg, 3));
  EXPECT_NE(RunTrial(cfg, 3), RunTrial(cfg, 4));
  EXPECT_NE(TrialSeed(1, 0), TrialSeed(1, 1));
  EXPECT_NE(TrialSeed(1, 0), TrialSeed(2, 0));
}

TEST(McMseTest, IndependentOfThreadCount) {
  SimConfig cfg = Config(Build(PrivacyConstraint::Ldp(0.5, 0.2), 5), 3000, 24);
  cfg.keep_per_trial = true;
  cfg.threads = 1;
  const SimReport one = McMse(cfg);
  cfg.threads = 4;
  const SimReport four = McMse(cfg);
  EXPECT_EQ(one.per_trial_mse, four.per_trial_mse);
  EXPECT_EQ(one.mean_n_mse, four.mean_n_mse);
  EXPECT_EQ(one.stderr_n_mse, four.stderr_n_mse);
}

TEST(McMseTest, TwoTrialsGiveFiniteStderr) {
  const SimReport r =
      McMse(Config(Build(PrivacyConstraint::Ldp(1.0, 0.1), 4), 500, 2));
  EXPECT_TRUE(std::isfinite(r.stderr_n_mse));
  EXPECT_GT(r.stderr_n_mse, 0.0);
  EXPECT_TRUE(r.per_trial_mse.empty());
}

TEST(McMseTest, StderrIsSampleStdevOverRootTrials) {
  SimConfig cfg = Config(Build(PrivacyConstraint::Ml(0.3), 3), 800, 30);
  cfg.keep_per_trial = true;
  const SimReport r = McMse(cfg);
  ASSERT_EQ(r.per_trial_mse.size(), 30u);
  double mean = 0.0;
  for (double m : r.per_trial_mse) mean += 800 * m;
  mean /= 30;
  double ss = 0.0;
  for (double m : r.per_trial_mse) ss += (800 * m - mean) * (800 * m - mean);
  EXPECT_NEAR(r.mean_n_mse, mean, 1e-12 * mean);
  EXPECT_NEAR(r.stderr_n_mse, std::sqrt(ss / 29 / 30), 1e-12 * mean);
}

TEST(McMseTest, MaximalLeakageUniformMatchesTradeoff) {
  const auto s = Build(PrivacyConstraint::Ml(std::log(2.0)), 2);
  const SimReport r = McMse(Config(s, 20000, 500));
  EXPECT_LE(std::abs(r.mean_n_mse - 0.5), 3 * r.stderr_n_mse);
}

TEST(McMseTest, DegenerateVertexHasZeroError) {
  const auto s = Build(PrivacyConstraint::Ml(std::log(2.0)), 2);
  SimConfig cfg = Config(s, 100000, 20);
  cfg.theta = {1.0, 0.0};
  const SimReport r = McMse(cfg);
  const double exact = ExactMse(*s, cfg.theta, cfg.n, SimMode::kSr);
  EXPECT_LE(std::abs(r.mean_n_mse - cfg.n * exact), 4 * r.stderr_n_mse + 1e-12);
}

TEST(McMseTest, AgreesWithExactMse) {
  struct Case {
    PrivacyConstraint c;
    int v;
    SimMode mode;
    std::vector<double> theta;
  };
  const std::vector<Case> cases = {
      {PrivacyConstraint::Ldp(1.0, 0.1), 4, SimMode::kSr, {}},
      {PrivacyConstraint::Ldp(2.0, 0.05), 5, SimMode::kSr, {0.1, 0.2, 0.3, 0.4, 0.0}},
      {PrivacyConstraint::Ldp(0.1, 0.5), 3, SimMode::kSr, {}},
      {PrivacyConstraint::Ml(0.4), 4, SimMode::kSr, {0.7, 0.1, 0.1, 0.1}},
      {PrivacyConstraint::Ldp(1.0, 0.1), 4, SimMode::kPlain, {}},
      {PrivacyConstraint::Ml(0.2), 3, SimMode::kPlain, {0.2, 0.3, 0.5}},
  };
  for (const Case& k : cases) {
    SimConfig cfg = Config(Build(k.c, k.v), 2000, 300, k.mode);
    if (!k.theta.empty()) cfg.theta = k.theta;
    const SimReport r = McMse(cfg);
    const double exact = cfg.n * ExactMse(*cfg.scheme, cfg.theta, cfg.n, k.mode);
    EXPECT_LE(std::abs(r.mean_n_mse - exact), 4 * r.stderr_n_mse)
        << k.c.ToString() << " v=" << k.v << " " << ToString(k.mode);
  }
}

TEST(McMseTest, ProjectionNeverIncreasesError) {
  SimConfig cfg = Config(Build(PrivacyConstraint::Ldp(0.25, 0.05), 6), 300, 40);
  cfg.keep_per_trial = true;
  const SimReport raw = McMse(cfg);
  cfg.project_estimates = true;
  const SimReport projected = McMse(cfg);
  for (int t = 0; t < cfg.trials; ++t) {
    EXPECT_LE(projected.per_trial_mse[t], raw.per_trial_mse[t] + 1e-15);
  }
}

TEST(ExactMseTest, EvenDesignAtUniform) {
  for (int v : {2, 4, 6, 8}) {
    const auto s = Build(PrivacyConstraint::Ldp(1.5, 0.2), v);
    ASSERT_EQ(s->scheme_case(), SchemeCase::kEvenCbd);
    const double c = s->design_c().get_d(), d = s->design_d().get_d();
    const double want = (v - 1.0) * (v - 1.0) * (c + d) * (c + d) /
                        (v * (c - d) * (c - d));
    EXPECT_NEAR(1000 * ExactMse(*s, UniformTheta(v), 1000, SimMode::kSr), want,
                1e-10 * want);
  }
}

TEST(ExactMseTest, DiagonalAtUniform) {
  for (int v : {2, 3, 5}) {
    const double delta = 0.5;
    const auto s = Build(PrivacyConstraint::Ldp(0.05, delta), v);
    ASSERT_EQ(s->scheme_case(), SchemeCase::kDiagLdp);
    const double want = (v - 1.0) * (v - delta) / (v * delta);
    EXPECT_NEAR(77 * ExactMse(*s, UniformTheta(v), 77, SimMode::kSr), want,
                1e-10 * want);
  }
}

TEST(ExactMseTest, RationalAgreesWithDouble) {
  const auto s = Build(PrivacyConstraint::Ldp(1.0, 0.2), 7);
  const std::vector<Rational> theta = {ToRational(1, 10), ToRational(1, 5),
                                       ToRational(1, 10), ToRational(1, 5),
                                       ToRational(1, 10), ToRational(1, 5),
                                       ToRational(1, 10)};
  std::vector<double> theta_d;
  for (const auto& t : theta) theta_d.push_back(t.get_d());
  for (SimMode mode : {SimMode::kSr, SimMode::kPlain}) {
    const double exact = ExactMseRational(*s, theta, 500, mode).get_d();
    EXPECT_NEAR(ExactMse(*s, theta_d, 500, mode), exact, 1e-12 * exact);
  }
}

TEST(ExactMseTest, PlainIsSandwichedAtUniform) {
  const auto s = Build(PrivacyConstraint::Ldp(1.0, 0.1), 4);
  const int c = s->num_u();
  for (std::int64_t n : {2 * c, 10 * c + 1, 100 * c + 3}) {
    const double sr = ExactMse(*s, UniformTheta(4), n, SimMode::kSr);
    const double plain = ExactMse(*s, UniformTheta(4), n, SimMode::kPlain);
    EXPECT_LE(plain, static_cast<double>(n) / (n - c) * sr * (1 + 1e-12));
    EXPECT_LE(sr, plain * (1 + 1e-12));
  }
}

TEST(ExactMseTest, PlainUpperBoundHoldsEverywhere) {
  const auto s = Build(PrivacyConstraint::Ldp(1.0, 0.1), 4);
  const int c = s->num_u();
  const std::vector<double> theta = {0.4, 0.3, 0.2, 0.1};
  for (std::int64_t n : {2 * c, 10 * c, 100 * c}) {
    const double sr = ExactMse(*s, theta, n, SimMode::kSr);
    const double plain = ExactMse(*s, theta, n, SimMode::kPlain);
    EXPECT_LE(plain, static_cast<double>(n) / (n - c) * sr * (1 + 1e-12));
  }
}

TEST(ExactMseTest, PlainWorstCaseDominatesSr) {
  // Off uniform the fixed assignment removes the between-mechanism variance,
  // so plain can beat SR pointwise; the worst case is still at uniform.
  const auto s = Build(PrivacyConstraint::Ldp(1.0, 0.1), 4);
  const int c = s->num_u();
  const std::int64_t n = 10 * c;
  const double plain_uniform = ExactMse(*s, UniformTheta(4), n, SimMode::kPlain);
  const std::vector<double> theta = {0.4, 0.3, 0.2, 0.1};
  EXPECT_LT(ExactMse(*s, theta, n, SimMode::kPlain), plain_uniform);
  EXPECT_GE(plain_uniform, ExactMse(*s, UniformTheta(4), n, SimMode::kSr));
}

TEST(VarianceTest, UniformClosedForms) {
  const auto even = Build(PrivacyConstraint::Ldp(1.0, 0.1), 6);
  const double c = even->design_c().get_d(), d = even->design_d().get_d();
  for (double var : CoordinateVariances(*even, UniformTheta(6))) {
    EXPECT_NEAR(var, static_cast<double>(oracle::EvenVarianceAtUniform(6, c, d)),
                1e-12);
  }
  for (const auto& s : {Build(PrivacyConstraint::Ldp(0.1, 0.3), 5),
                        Build(PrivacyConstraint::Ml(0.4), 4)}) {
    const double level = s->design_c().get_d();
    for (double var : CoordinateVariances(*s, UniformTheta(s->v()))) {
      EXPECT_NEAR(var,
                  static_cast<double>(
                      oracle::DiagonalVarianceAtUniform(s->v(), level)),
                  1e-12);
    }
  }
}

TEST(VarianceTest, EachCoordinateIsConcaveQuadratic) {
  for (const auto& s : {Build(PrivacyConstraint::Ldp(1.0, 0.1), 4),
                        Build(PrivacyConstraint::Ldp(2.0, 0.0), 5),
                        Build(PrivacyConstraint::Ldp(0.1, 0.5), 3),
                        Build(PrivacyConstraint::Ml(0.2), 6)}) {
    const int v = s->v();
    for (int x = 0; x < v; ++x) {
      // theta_x in {0, 1/2, 1}, the rest spread evenly.
      std::vector<double> values;
      for (double tx : {0.0, 0.5, 1.0}) {
        std::vector<double> theta(v, (1.0 - tx) / (v - 1));
        theta[x] = tx;
        values.push_back(CoordinateVariances(*s, theta)[x]);
      }
      const double leading = 2.0 * (values[0] - 2.0 * values[1] + values[2]);
      EXPECT_LT(leading, 0.0) << ToString(s->scheme_case()) << " x=" << x;
    }
  }
}

TEST(WorstCaseTest, UniformIsWorst) {
  for (const auto& s : {Build(PrivacyConstraint::Ldp(1.0, 0.1), 4),
                        Build(PrivacyConstraint::Ldp(2.0, 0.0), 7),
                        Build(PrivacyConstraint::Ldp(0.1, 0.5), 2),
                        Build(PrivacyConstraint::Ml(0.4), 5)}) {
    for (int samples : {0, 200}) {
      const WorstCase w = WorstCaseScan(*s, 1000, samples, 9);
      EXPECT_TRUE(w.is_uniform) << ToString(s->scheme_case());
      EXPECT_EQ(w.theta, UniformTheta(s->v()));
    }
  }
}

TEST(WorstCaseTest, VertexIsStrictlyBetterForDiagonal) {
  const auto s = Build(PrivacyConstraint::Ldp(0.1, 0.5), 2);
  ASSERT_EQ(s->scheme_case(), SchemeCase::kDiagLdp);
  const double vertex = ExactMse(*s, std::vector<double>{1.0, 0.0}, 10, SimMode::kSr);
  const double uniform = ExactMse(*s, UniformTheta(2), 10, SimMode::kSr);
  EXPECT_LT(vertex, uniform);
}

TEST(ProjectTest, SimplexProjection) {
  EXPECT_EQ(ProjectToSimplex(std::vector<double>{0.2, 0.8}),
            (std::vector<double>{0.2, 0.8}));
  EXPECT_EQ(ProjectToSimplex(std::vector<double>{1.5, -0.5}),
            (std::vector<double>{1.0, 0.0}));
  const auto p = ProjectToSimplex(std::vector<double>{0.5, 0.5, 0.5});
  for (double e : p) EXPECT_NEAR(e, 1.0 / 3.0, 1e-15);
  const auto q = ProjectToSimplex(std::vector<double>{0.9, 0.4, -0.6});
  EXPECT_NEAR(q[0], 0.75, 1e-15);
  EXPECT_NEAR(q[1], 0.25, 1e-15);
  EXPECT_EQ(q[2], 0.0);
}

}  // namespace
}  // namespace onebit
