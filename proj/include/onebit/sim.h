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

// Exact and Monte Carlo mean squared error of the one-bit schemes.
//
// Because the estimators are unbiased, E||theta - theta_hat||^2 is the sum of
// per-coordinate variances, which is a finite sum over the 2C released
// symbols. ExactMse evaluates it in doubles through the kernel layer and
// ExactMseRational evaluates it with no rounding at all. McMse simulates n
// clients per trial with per-trial random streams derived from the master
// seed, so its output does not depend on thread count or scheduling.

#ifndef ONEBIT_SIM_H_
#define ONEBIT_SIM_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "onebit/rational.h"
#include "onebit/scheme.h"

namespace onebit {

enum class SimMode { kSr, kPlain };

std::string ToString(SimMode mode);

struct SimConfig {
  std::shared_ptr<const SrScheme> scheme;
  std::vector<double> theta;
  std::int64_t n = 0;
  int trials = 0;
  std::uint64_t master_seed = 0;
  SimMode mode = SimMode::kSr;
  // Worker threads for McMse; 0 means hardware concurrency.
  int threads = 0;
  bool keep_per_trial = false;
  // Euclidean projection of each estimate onto the simplex. Changes the
  // estimator; off for every attainment check.
  bool project_estimates = false;
};

// Throws ValidationError on a bad theta, n or trial count.
void ValidateConfig(const SimConfig& cfg);

struct SimReport {
  double mean_n_mse = 0.0;
  double stderr_n_mse = 0.0;  // sample stdev / sqrt(trials)
  std::vector<double> per_trial_mse;
  double elapsed_s = 0.0;
};

// Seed of trial `trial_index`'s random stream.
std::uint64_t TrialSeed(std::uint64_t master_seed, std::uint64_t trial_index);

// ||theta - estimate||^2 for one simulated population of n clients.
double RunTrial(const SimConfig& cfg, std::int64_t trial_index);

SimReport McMse(const SimConfig& cfg);

// Var(eta_x(W)) for every x under input distribution theta.
std::vector<double> CoordinateVariances(const SrScheme& s,
                                        std::span<const double> theta);

double ExactMse(const SrScheme& s, std::span<const double> theta,
                std::int64_t n, SimMode mode);
Rational ExactMseRational(const SrScheme& s, std::span<const Rational> theta,
                          std::int64_t n, SimMode mode);

std::vector<double> UniformTheta(int v);
std::vector<Rational> UniformThetaExact(int v);

// Euclidean projection onto the probability simplex.
std::vector<double> ProjectToSimplex(std::span<const double> point);

struct WorstCase {
  std::vector<double> theta;
  double n_mse = 0.0;
  bool is_uniform = false;
};

// Evaluates n * ExactMse on the uniform distribution, every vertex, every
// edge midpoint and `samples` uniform draws from the simplex. The uniform
// probe is evaluated first and is only displaced by a value larger by more
// than 1e-10 (relative).
WorstCase WorstCaseScan(const SrScheme& s, std::int64_t n, int samples,
                        std::uint64_t seed);

}  // namespace onebit

#endif  // ONEBIT_SIM_H_
