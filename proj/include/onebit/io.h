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

// Parsing of numeric grids and the CSV / JSON formats the command-line tool
// reads and writes.
//
// Grids are comma-separated items. An item is a number, `log<x>` for the
// natural logarithm of x, or `start:stop:step`, which expands to
// start, start + step, ... up to and including stop (within 1e-12).
//
// Table CSV header: v,eps,delta,gamma,zeta,put. Fields that do not apply to
// a row's constraint are left empty. Numbers use 12 significant digits.

#ifndef ONEBIT_IO_H_
#define ONEBIT_IO_H_

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "onebit/mechanism.h"
#include "onebit/scheme.h"
#include "onebit/sim.h"

namespace onebit {

// A number or `log<x>`. Throws ValidationError.
double ParseNumber(std::string_view token);

// Throws ValidationError on empty items, malformed numbers, a step <= 0, a
// stop below start, or more than `max_points` values.
std::vector<double> ParseGrid(std::string_view spec,
                              std::size_t max_points = 1000000);

// Comma-separated positive integers, with `a:b` for an inclusive range.
std::vector<int> ParseIntList(std::string_view spec);

// printf("%.12g").
std::string FormatNumber(double value);

struct TableRow {
  int v = 0;
  std::optional<double> eps;
  std::optional<double> delta;
  std::optional<double> gamma;
  std::optional<double> zeta;
  double put = 0.0;
};

// Rows ordered by v, then eps, then delta.
std::vector<TableRow> LdpTable(const std::vector<int>& v_list,
                               const std::vector<double>& eps_list,
                               const std::vector<double>& delta_list);
// Rows ordered by v, then gamma.
std::vector<TableRow> MlTable(const std::vector<int>& v_list,
                              const std::vector<double>& gamma_list);

void WriteTableCsv(std::ostream& out, const std::vector<TableRow>& rows);

// Entries as "p/q" strings, one mechanism row per line, no header.
std::string MechanismCsv(const Mechanism& q);

// Case, v, constraint, C, c1, c2 (as numbers and exact "p/q" strings).
nlohmann::json SchemeJson(const SrScheme& s);

// Writes scheme.json, mechanism_u<k>.csv for k = 1..C and, for the design
// cases, design.txt (one edge per line, 1-based vertices). Returns the paths
// written.
std::vector<std::filesystem::path> ExportScheme(
    const SrScheme& s, const std::filesystem::path& dir);

// Keys: config, mean_n_mse, stderr_n_mse, put_reference, ratio, elapsed_s.
nlohmann::json SimReportJson(const SimConfig& cfg, const SimReport& report,
                             double put_reference);

// Columns: trial, mse, n_mse.
void WritePerTrialCsv(std::ostream& out, const SimReport& report,
                      std::int64_t n);

}  // namespace onebit

#endif  // ONEBIT_IO_H_
