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

#include "onebit/scheme.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "onebit/bounds.h"
#include "onebit/kernels.h"

namespace onebit {
namespace {

// Q((u,z)|x) = Q_u(z|x) / C, columns ordered 2u + z.
Mechanism Recombine(std::span<const Mechanism> per_u) {
  const int v = per_u.front().num_inputs();
  const int m = 2 * static_cast<int>(per_u.size());
  const Rational weight(1, static_cast<long>(per_u.size()));
  std::vector<Rational> entries(static_cast<size_t>(v) * m);
  for (size_t u = 0; u < per_u.size(); ++u) {
    for (int x = 0; x < v; ++x) {
      entries[x * m + 2 * u] = per_u[u].at(x, 0) * weight;
      entries[x * m + 2 * u + 1] = per_u[u].at(x, 1) * weight;
    }
  }
  return Mechanism(v, m, std::move(entries));
}

// (1/v)(level I | 1 - level I).
Mechanism DiagonalMechanism(int v, const Rational& level) {
  const int m = 2 * v;
  const Rational inv_v(1, v);
  std::vector<Rational> entries(static_cast<size_t>(v) * m);
  for (int x = 0; x < v; ++x) {
    for (int i = 0; i < v; ++i) {
      const Rational diag = (x == i) ? level : Rational(0);
      entries[x * m + i] = diag * inv_v;
      entries[x * m + v + i] = (1 - diag) * inv_v;
    }
  }
  return Mechanism(v, m, std::move(entries));
}

std::vector<double> Centered(const std::vector<double>& mean_eta, double c1,
                             double c2) {
  std::vector<double> out(mean_eta.size());
  for (size_t x = 0; x < out.size(); ++x) out[x] = (mean_eta[x] - c2) / c1;
  return out;
}

std::vector<Rational> CenteredExact(std::vector<Rational> mean_eta,
                                    const SrScheme& s) {
  for (Rational& m : mean_eta) m = (m - s.c2()) / s.c1();
  return mean_eta;
}

}  // namespace

std::string ToString(SchemeCase c) {
  switch (c) {
    case SchemeCase::kEvenCbd:
      return "EvenCBD";
    case SchemeCase::kOddRpbd:
      return "OddRPBD";
    case SchemeCase::kDiagLdp:
      return "DiagLDP";
    case SchemeCase::kDiagMl:
      return "DiagML";
  }
  return "?";
}

SchemeCase SelectCase(const PrivacyConstraint& c, int v) {
  if (v < 2) throw ValidationError("alphabet size must be at least 2");
  if (!c.is_ldp()) return SchemeCase::kDiagMl;
  if (c.epsilon() < Zeta(v, c.delta())) return SchemeCase::kDiagLdp;
  return v % 2 == 0 ? SchemeCase::kEvenCbd : SchemeCase::kOddRpbd;
}

Calibration CalibrationClosedForm(SchemeCase scheme_case, int v, double c,
                                  double d) {
  const double vd = v;
  switch (scheme_case) {
    case SchemeCase::kEvenCbd: {
      if (c == d) throw DomainError("c = d makes the estimator undefined");
      const double s = (c + d) * (c + d);
      return {(c - d) * (c - d) / ((vd - 1.0) * s),
              (vd * s - 2.0 * (c * c + d * d)) / (vd * (vd - 1.0) * s)};
    }
    case SchemeCase::kOddRpbd: {
      if (c == d) throw DomainError("c = d makes the estimator undefined");
      const double a = (v - 1) / 2;
      const double g = ((a + 1.0) * c + a * d) * (a * c + (a + 1.0) * d);
      const double diff2 = (c - d) * (c - d);
      return {diff2 * (a + 1.0) / (2.0 * g),
              ((2.0 * a + 1.0) * ((c + d) * (c + d) * a + 2.0 * c * d) - diff2) /
                  (2.0 * (2.0 * a + 1.0) * g)};
    }
    case SchemeCase::kDiagLdp:
    case SchemeCase::kDiagMl: {
      if (!(c > 0)) throw DomainError("diagonal level must be positive");
      return {c / (vd - c), (vd - 2.0 * c) / (vd * (vd - c))};
    }
  }
  throw std::logic_error("unknown scheme case");
}

std::vector<Rational> Eta(const Mechanism& q, int w) {
  const Rational total = q.ColumnSum(w);
  if (sgn(total) == 0) {
    throw ValidationError("eta undefined on all-zero column " +
                          std::to_string(w));
  }
  std::vector<Rational> eta = q.Column(w);
  for (Rational& e : eta) e /= total;
  return eta;
}

ExactCalibration CalibrationNumeric(std::span<const Mechanism> per_u) {
  if (per_u.empty()) throw ValidationError("scheme has no mechanisms");
  const Mechanism q = Recombine(per_u);
  const int v = q.num_inputs();
  std::vector<std::vector<Rational>> etas;
  etas.reserve(q.num_outputs());
  for (int w = 0; w < q.num_outputs(); ++w) etas.push_back(Eta(q, w));

  // mean[x][x'] = E[eta_x'(W)] when the input is x.
  std::vector<std::vector<Rational>> mean(v, std::vector<Rational>(v));
  for (int x = 0; x < v; ++x) {
    for (int w = 0; w < q.num_outputs(); ++w) {
      if (sgn(q.at(x, w)) == 0) continue;
      for (int k = 0; k < v; ++k) mean[x][k] += q.at(x, w) * etas[w][k];
    }
  }
  ExactCalibration cal;
  cal.c2 = mean[0][1];
  cal.c1 = mean[0][0] - cal.c2;
  if (sgn(cal.c1) == 0) {
    throw DomainError("c1 = 0: the mechanism carries no information about "
                      "the input and cannot be unbiased");
  }
  for (int x = 0; x < v; ++x) {
    for (int k = 0; k < v; ++k) {
      const Rational expected = (x == k ? cal.c1 : Rational(0)) + cal.c2;
      const Rational diff = abs(mean[x][k] - expected);
      cal.max_deviation = std::max(cal.max_deviation, diff.get_d());
    }
  }
  if (cal.max_deviation > 1e-9) {
    throw std::logic_error("E[eta(W)] is not affine in theta (deviation " +
                           std::to_string(cal.max_deviation) + ")");
  }
  return cal;
}

SrScheme::SrScheme(int v, PrivacyConstraint constraint, SchemeCase scheme_case,
                   Mechanism predesigned, DualPairPartition partition,
                   std::vector<Mechanism> per_u, Rational design_c,
                   Rational design_d, std::optional<BlockDesign> design)
    : v_(v),
      constraint_(constraint),
      case_(scheme_case),
      predesigned_(std::move(predesigned)),
      partition_(std::move(partition)),
      per_u_(std::move(per_u)),
      design_c_(std::move(design_c)),
      design_d_(std::move(design_d)),
      design_(std::move(design)) {
  calibration_ = CalibrationNumeric(per_u_);
  c1_ = calibration_.c1.get_d();
  c2_ = calibration_.c2.get_d();
  const Mechanism q = Recombine(per_u_);
  eta_exact_.reserve(q.num_outputs());
  eta_table_.reserve(static_cast<size_t>(q.num_outputs()) * v_);
  for (int w = 0; w < q.num_outputs(); ++w) {
    eta_exact_.push_back(Eta(q, w));
    for (const Rational& e : eta_exact_.back()) eta_table_.push_back(e.get_d());
  }
  symbol_table_ = q.ToDoubles();
  zero_prob_.reserve(per_u_.size() * v_);
  for (const Mechanism& local : per_u_) {
    for (int x = 0; x < v_; ++x) zero_prob_.push_back(local.at(x, 0).get_d());
  }
}

SrScheme BuildOptimalSrScheme(const PrivacyConstraint& c, int v,
                              std::int64_t edge_cap) {
  const SchemeCase scheme_case = SelectCase(c, v);
  Rational high;
  Rational low;
  std::optional<BlockDesign> design;
  std::optional<Mechanism> q;
  DualPairPartition partition;
  switch (scheme_case) {
    case SchemeCase::kEvenCbd:
    case SchemeCase::kOddRpbd: {
      high = ToRational(LdpHighLevel(c.epsilon(), c.delta()));
      low = 1 - high;
      if (high == low) {
        throw DomainError("c = d: the design mechanism is uninformative");
      }
      if (scheme_case == SchemeCase::kEvenCbd) {
        design = CompleteBlockDesign(v, v / 2, edge_cap);
      } else {
        const int alpha = (v - 1) / 2;
        design = ConcatDesigns(CompleteBlockDesign(v, alpha, edge_cap),
                               CompleteBlockDesign(v, alpha + 1, edge_cap));
      }
      q = BdMechanism(*design, high, low);
      partition = ComplementPairs(*design, *q);
      break;
    }
    case SchemeCase::kDiagLdp:
    case SchemeCase::kDiagMl: {
      high = ToRational(scheme_case == SchemeCase::kDiagLdp
                            ? c.delta()
                            : MlLevel(c.gamma()));
      low = 0;
      if (sgn(high) <= 0) {
        throw DomainError("diagonal mechanism needs a positive level");
      }
      q = DiagonalMechanism(v, high);
      partition = FindDualPairs(*q);
      break;
    }
  }
  Resolution res = Resolve(*q, partition);
  for (const Mechanism& local : res.per_u) {
    if (!CheckOneBit(local) || !CheckConstraint(local, c)) {
      throw std::logic_error("resolved mechanism violates " + c.ToString());
    }
  }
  return SrScheme(v, c, scheme_case, std::move(*q), std::move(partition),
                  std::move(res.per_u), std::move(high), std::move(low),
                  std::move(design));
}

std::vector<double> EstimateSr(const SrScheme& s, std::span<const int> u_list,
                               std::span<const int> z_list) {
  if (u_list.size() != z_list.size()) {
    throw ValidationError("u and z lists differ in length");
  }
  if (u_list.empty()) throw ValidationError("no observations");
  std::vector<double> counts(2 * static_cast<size_t>(s.num_u()), 0.0);
  for (size_t i = 0; i < u_list.size(); ++i) {
    const int u = u_list[i];
    const int z = z_list[i];
    if (u < 0 || u >= s.num_u() || (z != 0 && z != 1)) {
      throw ValidationError("observation " + std::to_string(i) +
                            " is outside the scheme's alphabet");
    }
    counts[2 * u + z] += 1.0;
  }
  std::vector<double> mean(s.v());
  kernels::ActiveKernels().weighted_row_sum(counts, s.eta_table(), s.v(), mean);
  const double n = static_cast<double>(u_list.size());
  for (double& m : mean) m /= n;
  return Centered(mean, s.c1_double(), s.c2_double());
}

std::vector<Rational> ExpectedEstimateSr(const SrScheme& s,
                                         std::span<const Rational> theta) {
  if (static_cast<int>(theta.size()) != s.v()) {
    throw ValidationError("theta has the wrong dimension");
  }
  const Rational weight(1, s.num_u());
  std::vector<Rational> mean(s.v());
  for (int u = 0; u < s.num_u(); ++u) {
    for (int z = 0; z < 2; ++z) {
      Rational p = 0;
      for (int x = 0; x < s.v(); ++x) p += theta[x] * s.per_u()[u].at(x, z);
      p *= weight;
      if (sgn(p) == 0) continue;
      const std::vector<Rational>& eta = s.EtaExact(u, z);
      for (int k = 0; k < s.v(); ++k) mean[k] += p * eta[k];
    }
  }
  return CenteredExact(std::move(mean), s);
}

PlainScheme::PlainScheme(std::shared_ptr<const SrScheme> base, std::int64_t n)
    : base_(std::move(base)), n_(n) {
  if (!base_) throw ValidationError("plain scheme needs a base scheme");
  if (n_ <= base_->num_u()) {
    throw ValidationError("n must exceed C (n = " + std::to_string(n_) +
                          ", C = " + std::to_string(base_->num_u()) + ")");
  }
}

PlainScheme ToPlainScheme(std::shared_ptr<const SrScheme> s, std::int64_t n) {
  return PlainScheme(std::move(s), n);
}

std::vector<double> EstimatePlain(const PlainScheme& p,
                                  std::span<const int> y_list) {
  const SrScheme& s = p.base();
  if (static_cast<std::int64_t>(y_list.size()) != p.n()) {
    throw ValidationError("expected " + std::to_string(p.n()) +
                          " observations, got " +
                          std::to_string(y_list.size()));
  }
  const std::int64_t used = p.rounds() * s.num_u();
  std::vector<double> counts(2 * static_cast<size_t>(s.num_u()), 0.0);
  for (std::int64_t i = 0; i < used; ++i) {
    const int y = y_list[i];
    if (y != 0 && y != 1) throw ValidationError("observations must be bits");
    counts[2 * p.Assignment(i) + y] += 1.0;
  }
  std::vector<double> mean(s.v());
  kernels::ActiveKernels().weighted_row_sum(counts, s.eta_table(), s.v(), mean);
  for (double& m : mean) m /= static_cast<double>(used);
  return Centered(mean, s.c1_double(), s.c2_double());
}

std::vector<Rational> ExpectedEstimatePlain(const PlainScheme& p,
                                            std::span<const Rational> theta) {
  const SrScheme& s = p.base();
  if (static_cast<int>(theta.size()) != s.v()) {
    throw ValidationError("theta has the wrong dimension");
  }
  // E[eta(j, Y)] for client mechanism j; clients sharing j share it.
  std::vector<std::vector<Rational>> per_mechanism(s.num_u());
  for (int j = 0; j < s.num_u(); ++j) {
    std::vector<Rational> m(s.v());
    for (int z = 0; z < 2; ++z) {
      Rational prob = 0;
      for (int x = 0; x < s.v(); ++x) prob += theta[x] * s.per_u()[j].at(x, z);
      if (sgn(prob) == 0) continue;
      const std::vector<Rational>& eta = s.EtaExact(j, z);
      for (int k = 0; k < s.v(); ++k) m[k] += prob * eta[k];
    }
    per_mechanism[j] = std::move(m);
  }
  const std::int64_t used = p.rounds() * s.num_u();
  std::vector<Rational> total(s.v());
  for (std::int64_t i = 0; i < used; ++i) {
    const std::vector<Rational>& m = per_mechanism[p.Assignment(i)];
    for (int k = 0; k < s.v(); ++k) total[k] += m[k];
  }
  const Rational inv_used(1, static_cast<long>(used));
  for (Rational& t : total) t *= inv_used;
  return CenteredExact(std::move(total), s);
}

}  // namespace onebit
