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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "onebit/kernels.h"

namespace onebit {
namespace {

constexpr std::size_t kBatch = 1024;

double ToUnit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

void FillUniform(std::mt19937_64& gen, std::span<double> out) {
  for (double& u : out) u = ToUnit(gen());
}

std::vector<double> PrefixThresholds(std::span<const double> pmf) {
  std::vector<double> thresholds;
  thresholds.reserve(pmf.size());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < pmf.size(); ++i) {
    acc += pmf[i];
    thresholds.push_back(acc);
  }
  return thresholds;
}

// Var(eta_x | U = j) summed over j, for the plain estimator.
std::vector<double> PlainVarianceSums(const SrScheme& s,
                                      std::span<const double> theta) {
  const int v = s.v();
  const int symbols = 2 * s.num_u();
  std::vector<double> p(symbols);
  kernels::ActiveKernels().weighted_row_sum(theta, s.symbol_table(), symbols,
                                            p);
  std::vector<double> sums(v, 0.0);
  const auto eta = s.eta_table();
  for (int j = 0; j < s.num_u(); ++j) {
    const double p0 = p[2 * j] * s.num_u();
    const double p1 = p[2 * j + 1] * s.num_u();
    for (int x = 0; x < v; ++x) {
      const double e0 = eta[(2 * j) * v + x];
      const double e1 = eta[(2 * j + 1) * v + x];
      const double mu = p0 * e0 + p1 * e1;
      sums[x] += p0 * (e0 - mu) * (e0 - mu) + p1 * (e1 - mu) * (e1 - mu);
    }
  }
  return sums;
}

}  // namespace

std::string ToString(SimMode mode) {
  return mode == SimMode::kSr ? "sr" : "plain";
}

void ValidateConfig(const SimConfig& cfg) {
  if (!cfg.scheme) throw ValidationError("simulation needs a scheme");
  if (static_cast<int>(cfg.theta.size()) != cfg.scheme->v()) {
    throw ValidationError("theta has " + std::to_string(cfg.theta.size()) +
                          " entries, scheme expects " +
                          std::to_string(cfg.scheme->v()));
  }
  double total = 0.0;
  for (double t : cfg.theta) {
    if (!(t >= 0)) throw ValidationError("theta entries must be >= 0");
    total += t;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ValidationError("theta must sum to 1");
  }
  if (cfg.n < 1) throw ValidationError("n must be at least 1");
  if (cfg.mode == SimMode::kPlain && cfg.n <= cfg.scheme->num_u()) {
    throw ValidationError("n must exceed C (n = " + std::to_string(cfg.n) +
                          ", C = " + std::to_string(cfg.scheme->num_u()) +
                          ")");
  }
  if (cfg.trials < 1) throw ValidationError("trials must be at least 1");
}

std::uint64_t TrialSeed(std::uint64_t master_seed, std::uint64_t trial_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(trial_index),
                    static_cast<std::uint32_t>(trial_index >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

double RunTrial(const SimConfig& cfg, std::int64_t trial_index) {
  const SrScheme& s = *cfg.scheme;
  const kernels::KernelSet& k = kernels::ActiveKernels();
  const int v = s.v();
  const int num_u = s.num_u();
  std::mt19937_64 gen(TrialSeed(cfg.master_seed,
                                static_cast<std::uint64_t>(trial_index)));

  const std::vector<double> x_thresholds = PrefixThresholds(cfg.theta);
  std::vector<double> u_thresholds;
  for (int j = 1; j < num_u; ++j) {
    u_thresholds.push_back(static_cast<double>(j) / num_u);
  }
  const auto zero_prob = s.zero_prob_table();

  std::int64_t clients = cfg.n;
  if (cfg.mode == SimMode::kPlain) clients = (cfg.n / num_u) * num_u;

  std::vector<double> counts(2 * static_cast<std::size_t>(num_u), 0.0);
  std::vector<double> ux(kBatch), uu(kBatch), uz(kBatch), probs(kBatch);
  std::vector<std::uint32_t> xs(kBatch), us(kBatch);
  std::vector<std::uint8_t> zs(kBatch);
  for (std::int64_t start = 0; start < clients;
       start += static_cast<std::int64_t>(kBatch)) {
    const std::size_t len = static_cast<std::size_t>(
        std::min<std::int64_t>(kBatch, clients - start));
    const std::span<double> bx(ux.data(), len), bz(uz.data(), len);
    FillUniform(gen, bx);
    k.count_below(bx, x_thresholds, std::span(xs.data(), len));
    if (cfg.mode == SimMode::kSr) {
      const std::span<double> bu(uu.data(), len);
      FillUniform(gen, bu);
      k.count_below(bu, u_thresholds, std::span(us.data(), len));
    } else {
      for (std::size_t i = 0; i < len; ++i) {
        us[i] = static_cast<std::uint32_t>((start + i) % num_u);
      }
    }
    for (std::size_t i = 0; i < len; ++i) {
      probs[i] = zero_prob[us[i] * v + xs[i]];
    }
    FillUniform(gen, bz);
    k.bernoulli(bz, std::span<const double>(probs.data(), len),
                std::span(zs.data(), len));
    for (std::size_t i = 0; i < len; ++i) counts[2 * us[i] + zs[i]] += 1.0;
  }

  std::vector<double> estimate(v);
  k.weighted_row_sum(counts, s.eta_table(), v, estimate);
  const double inv_c1 = 1.0 / s.c1_double();
  for (double& e : estimate) {
    e = (e / static_cast<double>(clients) - s.c2_double()) * inv_c1;
  }
  if (cfg.project_estimates) estimate = ProjectToSimplex(estimate);
  double mse = 0.0;
  for (int x = 0; x < v; ++x) {
    const double diff = cfg.theta[x] - estimate[x];
    mse += diff * diff;
  }
  return mse;
}

SimReport McMse(const SimConfig& cfg) {
  ValidateConfig(cfg);
  const auto started = std::chrono::steady_clock::now();
  std::vector<double> mse(cfg.trials);
  int threads = cfg.threads > 0
                    ? cfg.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, cfg.trials);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next++; t < cfg.trials; t = next++) mse[t] = RunTrial(cfg, t);
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  SimReport report;
  const double n = static_cast<double>(cfg.n);
  double sum = 0.0;
  for (double m : mse) sum += n * m;
  report.mean_n_mse = sum / cfg.trials;
  if (cfg.trials > 1) {
    double ss = 0.0;
    for (double m : mse) {
      const double d = n * m - report.mean_n_mse;
      ss += d * d;
    }
    report.stderr_n_mse = std::sqrt(ss / (cfg.trials - 1) / cfg.trials);
  }
  if (cfg.keep_per_trial) report.per_trial_mse = std::move(mse);
  report.elapsed_s = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - started)
                         .count();
  return report;
}

std::vector<double> CoordinateVariances(const SrScheme& s,
                                        std::span<const double> theta) {
  const int v = s.v();
  if (static_cast<int>(theta.size()) != v) {
    throw ValidationError("theta has the wrong dimension");
  }
  const kernels::KernelSet& k = kernels::ActiveKernels();
  const int symbols = 2 * s.num_u();
  std::vector<double> p(symbols);
  k.weighted_row_sum(theta, s.symbol_table(), symbols, p);
  std::vector<double> mean(v);
  k.weighted_row_sum(p, s.eta_table(), v, mean);
  // Two-pass variance: weight the squared deviations from the mean.
  std::vector<double> centered(s.eta_table().begin(), s.eta_table().end());
  for (int w = 0; w < symbols; ++w) {
    for (int x = 0; x < v; ++x) {
      const double d = centered[w * v + x] - mean[x];
      centered[w * v + x] = d * d;
    }
  }
  std::vector<double> var(v);
  k.weighted_row_sum(p, centered, v, var);
  return var;
}

double ExactMse(const SrScheme& s, std::span<const double> theta,
                std::int64_t n, SimMode mode) {
  if (n < 1) throw ValidationError("n must be at least 1");
  const double c1 = s.c1_double();
  double total = 0.0;
  if (mode == SimMode::kSr) {
    for (double var : CoordinateVariances(s, theta)) total += var;
    return total / (static_cast<double>(n) * c1 * c1);
  }
  if (n <= s.num_u()) throw ValidationError("n must exceed C");
  for (double var : PlainVarianceSums(s, theta)) total += var;
  const double rounds = static_cast<double>(n / s.num_u());
  const double num_u = s.num_u();
  return total / (c1 * c1 * rounds * num_u * num_u);
}

Rational ExactMseRational(const SrScheme& s, std::span<const Rational> theta,
                          std::int64_t n, SimMode mode) {
  const int v = s.v();
  if (static_cast<int>(theta.size()) != v) {
    throw ValidationError("theta has the wrong dimension");
  }
  if (n < 1) throw ValidationError("n must be at least 1");
  if (mode == SimMode::kPlain && n <= s.num_u()) {
    throw ValidationError("n must exceed C");
  }
  const Rational inv_c = ToRational(1, s.num_u());
  // Per-mechanism law of Z: pz[j][z] = sum_x theta_x Q_j(z|x).
  std::vector<Rational> pz(2 * static_cast<std::size_t>(s.num_u()));
  for (int j = 0; j < s.num_u(); ++j) {
    for (int z = 0; z < 2; ++z) {
      for (int x = 0; x < v; ++x) pz[2 * j + z] += theta[x] * s.per_u()[j].at(x, z);
    }
  }
  Rational total = 0;
  if (mode == SimMode::kSr) {
    std::vector<Rational> mean(v);
    for (int w = 0; w < 2 * s.num_u(); ++w) {
      if (sgn(pz[w]) == 0) continue;
      const auto& eta = s.EtaExact(w / 2, w % 2);
      for (int x = 0; x < v; ++x) mean[x] += pz[w] * inv_c * eta[x];
    }
    for (int w = 0; w < 2 * s.num_u(); ++w) {
      if (sgn(pz[w]) == 0) continue;
      const auto& eta = s.EtaExact(w / 2, w % 2);
      for (int x = 0; x < v; ++x) {
        const Rational d = eta[x] - mean[x];
        total += pz[w] * inv_c * d * d;
      }
    }
    return total / (Rational(n) * s.c1() * s.c1());
  }
  for (int j = 0; j < s.num_u(); ++j) {
    const auto& e0 = s.EtaExact(j, 0);
    const auto& e1 = s.EtaExact(j, 1);
    for (int x = 0; x < v; ++x) {
      const Rational mu = pz[2 * j] * e0[x] + pz[2 * j + 1] * e1[x];
      const Rational d0 = e0[x] - mu;
      const Rational d1 = e1[x] - mu;
      total += pz[2 * j] * d0 * d0 + pz[2 * j + 1] * d1 * d1;
    }
  }
  const Rational rounds(static_cast<long>(n / s.num_u()));
  return total / (s.c1() * s.c1() * rounds * s.num_u() * s.num_u());
}

std::vector<double> UniformTheta(int v) {
  return std::vector<double>(v, 1.0 / v);
}

std::vector<Rational> UniformThetaExact(int v) {
  return std::vector<Rational>(v, ToRational(1, v));
}

std::vector<double> ProjectToSimplex(std::span<const double> point) {
  std::vector<double> sorted(point.begin(), point.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double running = 0.0;
  double shift = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    running += sorted[i];
    const double candidate = (running - 1.0) / static_cast<double>(i + 1);
    if (sorted[i] - candidate > 0) shift = candidate;
  }
  std::vector<double> out(point.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::max(point[i] - shift, 0.0);
  }
  return out;
}

WorstCase WorstCaseScan(const SrScheme& s, std::int64_t n, int samples,
                        std::uint64_t seed) {
  if (samples < 0) throw ValidationError("samples must be >= 0");
  const int v = s.v();
  const double scale = static_cast<double>(n);
  WorstCase best;
  best.theta = UniformTheta(v);
  best.n_mse = scale * ExactMse(s, best.theta, n, SimMode::kSr);
  best.is_uniform = true;
  auto probe = [&](std::vector<double> theta) {
    const double value = scale * ExactMse(s, theta, n, SimMode::kSr);
    if (value > best.n_mse + 1e-10 * std::max(1.0, std::abs(best.n_mse))) {
      best = {std::move(theta), value, false};
    }
  };
  for (int x = 0; x < v; ++x) {
    std::vector<double> vertex(v, 0.0);
    vertex[x] = 1.0;
    probe(std::move(vertex));
  }
  for (int a = 0; a < v; ++a) {
    for (int b = a + 1; b < v; ++b) {
      std::vector<double> mid(v, 0.0);
      mid[a] = mid[b] = 0.5;
      probe(std::move(mid));
    }
  }
  std::mt19937_64 gen(seed);
  for (int i = 0; i < samples; ++i) {
    // Normalized exponentials are uniform on the simplex.
    std::vector<double> draw(v);
    double total = 0.0;
    for (double& d : draw) {
      d = -std::log1p(-ToUnit(gen()));
      total += d;
    }
    for (double& d : draw) d /= total;
    probe(std::move(draw));
  }
  return best;
}

}  // namespace onebit
