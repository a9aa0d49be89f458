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

// Optimal one-bit estimation schemes.
//
// A shared-randomness scheme draws U uniformly from [C], lets the client
// release one bit Z through the U-th two-output mechanism, and estimates
// theta with the unbiased affine correction of the average normalized
// likelihood,
//
//   theta_hat = ((1/n) sum_i eta(U_i, Z_i) - c2 * 1) / c1,
//   eta_x(w) = Q(w|x) / sum_x' Q(w|x'),
//
// where Q is the v x 2C mechanism with Q((u,z)|x) = Q_u(z|x) / C. Four
// constructions cover every parameter regime: a complete-block-design
// mechanism for even v, the union of two complete block designs for odd v,
// and a diagonal mechanism for small eps under LDP and for maximal leakage.
//
// The plain variant removes shared randomness by assigning client i the
// mechanism ((i - 1) mod C) + 1 and averaging over complete rounds.

#ifndef ONEBIT_SCHEME_H_
#define ONEBIT_SCHEME_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "onebit/design.h"
#include "onebit/mechanism.h"
#include "onebit/rational.h"

namespace onebit {

enum class SchemeCase { kEvenCbd, kOddRpbd, kDiagLdp, kDiagMl };

std::string ToString(SchemeCase c);

// Which construction is optimal for (c, v).
SchemeCase SelectCase(const PrivacyConstraint& c, int v);

struct Calibration {
  double c1 = 0.0;
  double c2 = 0.0;
};

struct ExactCalibration {
  Rational c1;
  Rational c2;
  // Largest |E[eta_x'(W)] - (c1 [x = x'] + c2)| over basis inputs e_x.
  double max_deviation = 0.0;
};

// Closed forms of (c1, c2). For kEvenCbd and kOddRpbd, `c` and `d` are the
// design values; for the diagonal cases `c` is the diagonal level (delta or
// e^gamma - 1) and `d` is ignored. Throws DomainError when c1 would be 0.
Calibration CalibrationClosedForm(SchemeCase scheme_case, int v, double c,
                                  double d);

// Solves E[eta(W)] = c1 theta + c2 1 by exact summation over (u, z) at every
// basis input. Throws DomainError if c1 = 0 and std::logic_error if the
// relation is not affine beyond 1e-9.
ExactCalibration CalibrationNumeric(std::span<const Mechanism> per_u);

// Normalized likelihood vector of output column w. Throws ValidationError
// on an all-zero column.
std::vector<Rational> Eta(const Mechanism& q, int w);

class SrScheme {
 public:
  int v() const { return v_; }
  const PrivacyConstraint& constraint() const { return constraint_; }
  SchemeCase scheme_case() const { return case_; }
  // |U|; P_U is uniform on [C].
  int num_u() const { return static_cast<int>(per_u_.size()); }
  const std::vector<Mechanism>& per_u() const { return per_u_; }
  // The mechanism before resolution, in its construction's column order;
  // partition() maps pair u to its columns (z = 0, z = 1).
  const Mechanism& predesigned() const { return predesigned_; }
  // (c, d) for the design cases, (level, 0) for the diagonal ones.
  const Rational& design_c() const { return design_c_; }
  const Rational& design_d() const { return design_d_; }
  const std::optional<BlockDesign>& design() const { return design_; }
  const DualPairPartition& partition() const { return partition_; }

  const Rational& c1() const { return calibration_.c1; }
  const Rational& c2() const { return calibration_.c2; }
  double c1_double() const { return c1_; }
  double c2_double() const { return c2_; }
  double calibration_deviation() const { return calibration_.max_deviation; }

  // eta(u, z) as exact rationals, row 2u + z.
  const std::vector<Rational>& EtaExact(int u, int z) const {
    return eta_exact_[2 * u + z];
  }
  // Row-major (2C) x v float table of eta, row 2u + z.
  std::span<const double> eta_table() const { return eta_table_; }
  // Row-major C x v table of Q_u(0 | x).
  std::span<const double> zero_prob_table() const { return zero_prob_; }
  // Row-major v x 2C table of Q((u, z) | x) = Q_u(z | x) / C.
  std::span<const double> symbol_table() const { return symbol_table_; }

 private:
  friend SrScheme BuildOptimalSrScheme(const PrivacyConstraint&, int,
                                       std::int64_t);
  SrScheme(int v, PrivacyConstraint constraint, SchemeCase scheme_case,
           Mechanism predesigned, DualPairPartition partition,
           std::vector<Mechanism> per_u, Rational design_c, Rational design_d,
           std::optional<BlockDesign> design);

  int v_;
  PrivacyConstraint constraint_;
  SchemeCase case_;
  Mechanism predesigned_;
  DualPairPartition partition_;
  std::vector<Mechanism> per_u_;
  Rational design_c_;
  Rational design_d_;
  std::optional<BlockDesign> design_;
  ExactCalibration calibration_;
  double c1_ = 0.0;
  double c2_ = 0.0;
  std::vector<std::vector<Rational>> eta_exact_;
  std::vector<double> eta_table_;
  std::vector<double> zero_prob_;
  std::vector<double> symbol_table_;
};

// Builds, resolves and calibrates the optimal scheme for (c, v). Throws
// ResourceError if a design exceeds `edge_cap` edges.
SrScheme BuildOptimalSrScheme(const PrivacyConstraint& c, int v,
                              std::int64_t edge_cap = kDefaultEdgeCap);

// Estimate from n observations (u_i in [0, C), z_i in {0, 1}). Not projected
// onto the simplex; components may be negative.
std::vector<double> EstimateSr(const SrScheme& s, std::span<const int> u_list,
                               std::span<const int> z_list);

// Exact E[theta_hat] under input distribution theta (independent of n).
std::vector<Rational> ExpectedEstimateSr(const SrScheme& s,
                                         std::span<const Rational> theta);

class PlainScheme {
 public:
  // Requires n > C.
  PlainScheme(std::shared_ptr<const SrScheme> base, std::int64_t n);

  const SrScheme& base() const { return *base_; }
  std::shared_ptr<const SrScheme> shared_base() const { return base_; }
  std::int64_t n() const { return n_; }
  // Number of complete rounds of C clients, floor(n / C).
  std::int64_t rounds() const { return n_ / base_->num_u(); }

  // 0-based client i -> 0-based mechanism index i mod C.
  int Assignment(std::int64_t i) const {
    return static_cast<int>(i % base_->num_u());
  }
  const Mechanism& ClientMechanism(std::int64_t i) const {
    return base_->per_u()[Assignment(i)];
  }

 private:
  std::shared_ptr<const SrScheme> base_;
  std::int64_t n_;
};

PlainScheme ToPlainScheme(std::shared_ptr<const SrScheme> s, std::int64_t n);

// y_list holds all n released bits in client order; the trailing n mod C are
// ignored.
std::vector<double> EstimatePlain(const PlainScheme& p,
                                  std::span<const int> y_list);

// Exact E[theta_hat] for the plain scheme, summed client by client over the
// complete rounds.
std::vector<Rational> ExpectedEstimatePlain(const PlainScheme& p,
                                            std::span<const Rational> theta);

}  // namespace onebit

#endif  // ONEBIT_SCHEME_H_
