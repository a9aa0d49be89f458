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

// onebit: trade-off tables, scheme export, simulation and self-verification
// for one-bit private distribution estimation.
//
// Exit codes: 0 success, 1 verification or simulation failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "onebit/bounds.h"
#include "onebit/io.h"
#include "onebit/mechanism.h"
#include "onebit/scheme.h"
#include "onebit/sim.h"
#include "onebit/verify.h"

namespace {

using namespace onebit;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

// A usage problem detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConstraintFlags {
  bool ldp = false;
  bool ml = false;
  std::string eps;
  std::string delta;
  std::string gamma;

  void Add(CLI::App* app, bool grids) {
    const char* kind = grids ? "grid" : "value";
    auto* ldp_flag = app->add_flag("--ldp", ldp, "(eps, delta)-LDP constraint");
    auto* ml_flag = app->add_flag("--ml", ml, "gamma maximal-leakage constraint");
    ldp_flag->excludes(ml_flag);
    auto* eps_opt =
        app->add_option("--eps", eps, std::string("LDP eps ") + kind);
    auto* delta_opt =
        app->add_option("--delta", delta, std::string("LDP delta ") + kind);
    auto* gamma_opt =
        app->add_option("--gamma", gamma, std::string("ML gamma ") + kind);
    gamma_opt->excludes(eps_opt)->excludes(delta_opt);
    ml_flag->excludes(eps_opt)->excludes(delta_opt);
    ldp_flag->excludes(gamma_opt);
  }

  void Require() const {
    if (!ldp && !ml) throw UsageError("one of --ldp or --ml is required");
    if (ldp && (eps.empty() || delta.empty())) {
      throw UsageError("--ldp needs --eps and --delta");
    }
    if (ml && gamma.empty()) throw UsageError("--ml needs --gamma");
  }

  PrivacyConstraint Single() const {
    Require();
    if (ldp) {
      return PrivacyConstraint::Ldp(ParseNumber(eps), ParseNumber(delta));
    }
    return PrivacyConstraint::Ml(ParseNumber(gamma));
  }
};

std::vector<double> ParseTheta(const std::string& spec, int v) {
  if (spec == "uniform") return UniformTheta(v);
  if (spec.rfind("vertex:", 0) == 0) {
    const std::vector<int> index = ParseIntList(spec.substr(7));
    if (index.size() != 1 || index[0] < 1 || index[0] > v) {
      throw UsageError("vertex index must be in 1.." + std::to_string(v));
    }
    std::vector<double> theta(v, 0.0);
    theta[index[0] - 1] = 1.0;
    return theta;
  }
  std::vector<double> theta = ParseGrid(spec);
  if (static_cast<int>(theta.size()) != v) {
    throw UsageError("theta has " + std::to_string(theta.size()) +
                     " entries, expected " + std::to_string(v));
  }
  return theta;
}

// Writes `text` to `path`, or to stdout when `path` is empty or "-".
void Emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
}

struct TableCmd {
  ConstraintFlags constraint;
  std::string v = "2";
  std::string output;

  void Add(CLI::App* app) {
    auto* cmd = app->add_subcommand("table", "PUT table as CSV");
    constraint.Add(cmd, true);
    cmd->add_option("--v", v, "alphabet sizes, e.g. 2,4 or 2:8")
        ->capture_default_str();
    cmd->add_option("-o,--output", output, "CSV path (default stdout)");
  }

  int Run() {
    constraint.Require();
    const std::vector<int> v_list = ParseIntList(v);
    std::vector<TableRow> rows;
    try {
      rows = constraint.ldp
                 ? LdpTable(v_list, ParseGrid(constraint.eps),
                            ParseGrid(constraint.delta))
                 : MlTable(v_list, ParseGrid(constraint.gamma));
    } catch (const std::logic_error& e) {
      // Every table error is a bad grid value.
      throw UsageError(e.what());
    }
    std::ostringstream csv;
    WriteTableCsv(csv, rows);
    Emit(output, csv.str());
    return kOk;
  }
};

struct SimulateCmd {
  ConstraintFlags constraint;
  int v = 0;
  std::string theta = "uniform";
  std::int64_t n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string mode = "sr";
  int threads = 0;
  bool project = false;
  std::string output;
  std::string per_trial;

  void Add(CLI::App* app) {
    auto* cmd = app->add_subcommand("simulate", "Monte Carlo n * MSE");
    constraint.Add(cmd, false);
    cmd->add_option("--v", v, "alphabet size")->required();
    cmd->add_option("--theta", theta, "uniform, vertex:<x> (1-based) or a list")
        ->capture_default_str();
    cmd->add_option("--n", n, "clients per trial")->required();
    cmd->add_option("--trials", trials, "number of trials")->required();
    cmd->add_option("--seed", seed, "master seed")->capture_default_str();
    cmd->add_option("--mode", mode, "sr or plain")
        ->check(CLI::IsMember({"sr", "plain"}))
        ->capture_default_str();
    cmd->add_option("--threads", threads, "worker cap (0 = all cores)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_flag("--project", project,
                  "project each estimate onto the simplex");
    cmd->add_option("-o,--output", output, "JSON report path (default stdout)");
    cmd->add_option("--per-trial", per_trial, "per-trial CSV path");
  }

  int Run() {
    if (trials < 2) throw UsageError("--trials must be at least 2");
    SimConfig cfg;
    try {
      cfg.theta = ParseTheta(theta, v);
    } catch (const ValidationError& e) {
      throw UsageError(e.what());
    }
    const PrivacyConstraint c = constraint.Single();
    cfg.scheme = std::make_shared<const SrScheme>(BuildOptimalSrScheme(c, v));
    cfg.n = n;
    cfg.trials = trials;
    cfg.master_seed = seed;
    cfg.mode = mode == "plain" ? SimMode::kPlain : SimMode::kSr;
    cfg.threads = threads;
    cfg.project_estimates = project;
    cfg.keep_per_trial = !per_trial.empty();
    try {
      ValidateConfig(cfg);
    } catch (const ValidationError& e) {
      throw UsageError(e.what());
    }

    const SimReport report = McMse(cfg);
    const double put = Put(v, c);
    Emit(output, SimReportJson(cfg, report, put).dump(2) + "\n");
    if (!per_trial.empty()) {
      std::ostringstream csv;
      WritePerTrialCsv(csv, report, n);
      Emit(per_trial, csv.str());
    }
    // The summary goes to stderr when stdout carries the JSON.
    std::ostream& log = (output.empty() || output == "-") ? std::cerr : std::cout;
    log << ToString(cfg.scheme->scheme_case()) << " C=" << cfg.scheme->num_u()
        << "  mean n*MSE=" << FormatNumber(report.mean_n_mse)
        << "  stderr=" << FormatNumber(report.stderr_n_mse)
        << "  PUT=" << FormatNumber(put)
        << "  ratio=" << FormatNumber(report.mean_n_mse / put) << "\n";
    return kOk;
  }
};

struct SchemeExportCmd {
  ConstraintFlags constraint;
  int v = 0;
  std::string dir = ".";

  void Add(CLI::App* app) {
    auto* scheme = app->add_subcommand("scheme", "optimal scheme tools");
    scheme->require_subcommand(1);
    auto* cmd = scheme->add_subcommand(
        "export", "write scheme.json and mechanism_u<k>.csv files");
    constraint.Add(cmd, false);
    cmd->add_option("--v", v, "alphabet size")->required();
    cmd->add_option("-o,--out", dir, "output directory")->capture_default_str();
  }

  int Run() {
    const SrScheme s = BuildOptimalSrScheme(constraint.Single(), v);
    for (const auto& path : ExportScheme(s, dir)) {
      std::cout << path.string() << "\n";
    }
    return kOk;
  }
};

struct VerifyCmd {
  std::string grid = "full";
  bool example1 = false;

  void Add(CLI::App* app) {
    auto* cmd = app->add_subcommand("verify", "run the invariant suite");
    cmd->add_option("--grid", grid, "small or full")
        ->check(CLI::IsMember({"small", "full"}))
        ->capture_default_str();
    cmd->add_flag("--example1", example1,
                  "only the (4,2) block design walk-through");
  }

  int Run() {
    std::vector<CheckResult> results;
    if (example1) {
      results.push_back(CheckExampleDesign());
    } else {
      results = RunAllChecks(grid == "small" ? SmallGrid() : FullGrid());
    }
    bool ok = true;
    for (const CheckResult& r : results) {
      std::cout << FormatCheck(r) << "\n";
      ok = ok && r.passed;
    }
    std::cout << (ok ? "all checks passed" : "some checks FAILED") << "\n";
    return ok ? kOk : kFailure;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-bit private distribution estimation toolkit", "onebit"};
  app.require_subcommand(1);
  TableCmd table;
  SimulateCmd simulate;
  SchemeExportCmd scheme;
  VerifyCmd verify;
  table.Add(&app);
  simulate.Add(&app);
  scheme.Add(&app);
  verify.Add(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (app.got_subcommand("table")) return table.Run();
    if (app.got_subcommand("simulate")) return simulate.Run();
    if (app.got_subcommand("scheme")) return scheme.Run();
    return verify.Run();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
