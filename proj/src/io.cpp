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

#include "onebit/io.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "onebit/bounds.h"
#include "onebit/design.h"

namespace onebit {
namespace {

constexpr double kGridSlack = 1e-12;

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(Trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double ParsePlainNumber(std::string_view token) {
  double value = 0.0;
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end ||
      !std::isfinite(value)) {
    throw ValidationError("not a number: '" + std::string(token) + "'");
  }
  return value;
}

// Rounds to 12 significant digits so JSON output matches the CSV precision.
nlohmann::json Num(double value) {
  if (!std::isfinite(value)) return nullptr;
  return std::stod(FormatNumber(value));
}

std::string CsvField(const std::optional<double>& value) {
  return value ? FormatNumber(*value) : std::string();
}

nlohmann::json ConstraintJson(const PrivacyConstraint& c) {
  if (c.is_ldp()) {
    return {{"kind", "ldp"}, {"eps", Num(c.epsilon())},
            {"delta", Num(c.delta())}};
  }
  return {{"kind", "ml"}, {"gamma", Num(c.gamma())}};
}

}  // namespace

double ParseNumber(std::string_view token) {
  token = Trim(token);
  if (token.substr(0, 3) == "log") {
    const double arg = ParsePlainNumber(token.substr(3));
    if (arg <= 0) {
      throw ValidationError("log argument must be positive: '" +
                            std::string(token) + "'");
    }
    return std::log(arg);
  }
  return ParsePlainNumber(token);
}

std::vector<double> ParseGrid(std::string_view spec, std::size_t max_points) {
  std::vector<double> values;
  for (std::string_view item : Split(spec, ',')) {
    if (item.empty()) throw ValidationError("empty grid item in '" +
                                            std::string(spec) + "'");
    const std::vector<std::string_view> parts = Split(item, ':');
    if (parts.size() == 1) {
      values.push_back(ParseNumber(item));
    } else if (parts.size() == 3) {
      const double start = ParseNumber(parts[0]);
      const double stop = ParseNumber(parts[1]);
      const double step = ParseNumber(parts[2]);
      if (!(step > 0)) throw ValidationError("grid step must be positive");
      if (stop < start) throw ValidationError("grid stop is below start");
      const double limit = stop + kGridSlack * std::max(1.0, std::abs(stop));
      for (std::size_t i = 0;; ++i) {
        const double value = start + static_cast<double>(i) * step;
        if (value > limit) break;
        if (values.size() >= max_points) {
          throw ValidationError("grid has more than " +
                                std::to_string(max_points) + " points");
        }
        values.push_back(value);
      }
    } else {
      throw ValidationError("grid range must be start:stop:step, got '" +
                            std::string(item) + "'");
    }
    if (values.size() > max_points) {
      throw ValidationError("grid has more than " +
                            std::to_string(max_points) + " points");
    }
  }
  return values;
}

std::vector<int> ParseIntList(std::string_view spec) {
  auto parse_int = [](std::string_view token) {
    int value = 0;
    const char* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (token.empty() || ec != std::errc() || ptr != end) {
      throw ValidationError("not an integer: '" + std::string(token) + "'");
    }
    return value;
  };
  std::vector<int> values;
  for (std::string_view item : Split(spec, ',')) {
    const std::vector<std::string_view> parts = Split(item, ':');
    if (parts.size() == 1) {
      values.push_back(parse_int(item));
    } else if (parts.size() == 2) {
      const int lo = parse_int(parts[0]);
      const int hi = parse_int(parts[1]);
      if (hi < lo) throw ValidationError("integer range is empty");
      for (int i = lo; i <= hi; ++i) values.push_back(i);
    } else {
      throw ValidationError("integer range must be a:b, got '" +
                            std::string(item) + "'");
    }
  }
  return values;
}

std::string FormatNumber(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::vector<TableRow> LdpTable(const std::vector<int>& v_list,
                               const std::vector<double>& eps_list,
                               const std::vector<double>& delta_list) {
  std::vector<TableRow> rows;
  for (int v : v_list) {
    for (double eps : eps_list) {
      for (double delta : delta_list) {
        // Validates eps and delta.
        PrivacyConstraint::Ldp(eps, delta);
        rows.push_back({v, eps, delta, std::nullopt, Zeta(v, delta),
                        PutLdp(v, eps, delta)});
      }
    }
  }
  return rows;
}

std::vector<TableRow> MlTable(const std::vector<int>& v_list,
                              const std::vector<double>& gamma_list) {
  std::vector<TableRow> rows;
  for (int v : v_list) {
    for (double gamma : gamma_list) {
      PrivacyConstraint::Ml(gamma);
      rows.push_back({v, std::nullopt, std::nullopt, gamma, std::nullopt,
                      PutMl(v, gamma)});
    }
  }
  return rows;
}

void WriteTableCsv(std::ostream& out, const std::vector<TableRow>& rows) {
  out << "v,eps,delta,gamma,zeta,put\n";
  for (const TableRow& row : rows) {
    out << row.v << ',' << CsvField(row.eps) << ',' << CsvField(row.delta)
        << ',' << CsvField(row.gamma) << ',' << CsvField(row.zeta) << ','
        << FormatNumber(row.put) << '\n';
  }
}

std::string MechanismCsv(const Mechanism& q) {
  std::string out;
  for (int x = 0; x < q.num_inputs(); ++x) {
    for (int y = 0; y < q.num_outputs(); ++y) {
      if (y > 0) out += ',';
      out += ToFractionString(q.at(x, y));
    }
    out += '\n';
  }
  return out;
}

nlohmann::json SchemeJson(const SrScheme& s) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [i, j] : s.partition().pairs) pairs.push_back({i + 1, j + 1});
  return {
      {"case", ToString(s.scheme_case())},
      {"v", s.v()},
      {"constraint", ConstraintJson(s.constraint())},
      {"C", s.num_u()},
      {"c1", Num(s.c1_double())},
      {"c2", Num(s.c2_double())},
      {"c1_exact", ToFractionString(s.c1())},
      {"c2_exact", ToFractionString(s.c2())},
      {"design_c", ToFractionString(s.design_c())},
      {"design_d", ToFractionString(s.design_d())},
      {"pair_scale", ToFractionString(s.partition().pair_scale)},
      {"pairs", pairs},
  };
}

std::vector<std::filesystem::path> ExportScheme(
    const SrScheme& s, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto write = [&](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + path.string());
    written.push_back(path);
  };
  write(dir / "scheme.json", SchemeJson(s).dump(2) + "\n");
  for (int u = 0; u < s.num_u(); ++u) {
    write(dir / ("mechanism_u" + std::to_string(u + 1) + ".csv"),
          MechanismCsv(s.per_u()[u]));
  }
  if (s.design()) write(dir / "design.txt", WriteEdgeList(*s.design()));
  return written;
}

nlohmann::json SimReportJson(const SimConfig& cfg, const SimReport& report,
                             double put_reference) {
  nlohmann::json theta = nlohmann::json::array();
  for (double t : cfg.theta) theta.push_back(Num(t));
  const SrScheme& s = *cfg.scheme;
  nlohmann::json config = {
      {"case", ToString(s.scheme_case())},
      {"v", s.v()},
      {"constraint", ConstraintJson(s.constraint())},
      {"C", s.num_u()},
      {"theta", theta},
      {"n", cfg.n},
      {"trials", cfg.trials},
      {"seed", cfg.master_seed},
      {"mode", ToString(cfg.mode)},
      {"project", cfg.project_estimates},
  };
  return {
      {"config", config},
      {"mean_n_mse", Num(report.mean_n_mse)},
      {"stderr_n_mse", Num(report.stderr_n_mse)},
      {"put_reference", Num(put_reference)},
      {"ratio", Num(report.mean_n_mse / put_reference)},
      {"elapsed_s", Num(report.elapsed_s)},
  };
}

void WritePerTrialCsv(std::ostream& out, const SimReport& report,
                      std::int64_t n) {
  out << "trial,mse,n_mse\n";
  for (std::size_t t = 0; t < report.per_trial_mse.size(); ++t) {
    const double mse = report.per_trial_mse[t];
    out << t << ',' << FormatNumber(mse) << ','
        << FormatNumber(static_cast<double>(n) * mse) << '\n';
  }
}

}  // namespace onebit
