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

#include "onebit/design.h"

#include <algorithm>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>

namespace onebit {
namespace {

std::uint64_t EdgeMask(const Edge& edge) {
  std::uint64_t mask = 0;
  for (int vertex : edge) mask |= std::uint64_t{1} << vertex;
  return mask;
}

std::string EdgeString(const Edge& edge) {
  std::string out = "{";
  for (size_t i = 0; i < edge.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(edge[i] + 1);
  }
  return out + "}";
}

// True iff column i + column j of q is a constant vector; writes the value.
bool SumIsConstant(const Mechanism& q, int i, int j, Rational* value) {
  const Rational first = q.at(0, i) + q.at(0, j);
  for (int x = 1; x < q.num_inputs(); ++x) {
    if (q.at(x, i) + q.at(x, j) != first) return false;
  }
  *value = first;
  return true;
}

}  // namespace

BlockDesign::BlockDesign(int num_vertices, std::vector<Edge> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)) {
  if (num_vertices_ < 1 || num_vertices_ > 63) {
    throw ValidationError("designs support 1 to 63 vertices");
  }
  for (Edge& edge : edges_) {
    std::sort(edge.begin(), edge.end());
    if (std::adjacent_find(edge.begin(), edge.end()) != edge.end()) {
      throw ValidationError("edge " + EdgeString(edge) +
                            " repeats a vertex");
    }
    for (int vertex : edge) {
      if (vertex < 0 || vertex >= num_vertices_) {
        throw ValidationError("edge " + EdgeString(edge) +
                              " names a vertex outside the design");
      }
    }
  }
}

BlockDesign CompleteBlockDesign(int v, int k, std::int64_t edge_cap) {
  if (v < 2 || k < 1 || k > v - 1) {
    throw ValidationError("complete block design needs 1 <= k <= v - 1, got v=" +
                          std::to_string(v) + ", k=" + std::to_string(k));
  }
  const std::int64_t count = Binomial(v, k);
  if (count > edge_cap) {
    throw ResourceError("C(" + std::to_string(v) + ", " + std::to_string(k) +
                        ") = " + std::to_string(count) +
                        " edges exceeds the cap of " +
                        std::to_string(edge_cap));
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(count));
  Edge current(k);
  for (int i = 0; i < k; ++i) current[i] = i;
  while (true) {
    edges.push_back(current);
    int pos = k - 1;
    while (pos >= 0 && current[pos] == v - k + pos) --pos;
    if (pos < 0) break;
    ++current[pos];
    for (int i = pos + 1; i < k; ++i) current[i] = current[i - 1] + 1;
  }
  return BlockDesign(v, std::move(edges));
}

DesignReport VerifyDesign(const BlockDesign& design) {
  const int v = design.num_vertices();
  std::vector<std::int64_t> degree(v, 0);
  std::vector<std::int64_t> pair_count(static_cast<size_t>(v) * v, 0);
  for (const Edge& edge : design.edges()) {
    for (size_t a = 0; a < edge.size(); ++a) {
      ++degree[edge[a]];
      for (size_t b = a + 1; b < edge.size(); ++b) {
        ++pair_count[static_cast<size_t>(edge[a]) * v + edge[b]];
      }
    }
  }
  DesignReport report;
  for (int x = 1; x < v; ++x) {
    if (degree[x] != degree[0]) {
      report.failure = "not regular: vertex 1 has degree " +
                       std::to_string(degree[0]) + " but vertex " +
                       std::to_string(x + 1) + " has degree " +
                       std::to_string(degree[x]);
      return report;
    }
  }
  std::optional<int> k;
  if (!design.edges().empty()) {
    k = static_cast<int>(design.edges().front().size());
    for (const Edge& edge : design.edges()) {
      if (static_cast<int>(edge.size()) != *k) {
        k.reset();
        break;
      }
    }
  }
  const std::int64_t lambda = v >= 2 ? pair_count[1] : 0;
  for (int a = 0; a < v; ++a) {
    for (int b = a + 1; b < v; ++b) {
      const std::int64_t count = pair_count[static_cast<size_t>(a) * v + b];
      if (count != lambda) {
        report.failure = "not pairwise balanced: pair {1,2} lies in " +
                         std::to_string(lambda) + " edges but pair {" +
                         std::to_string(a + 1) + "," + std::to_string(b + 1) +
                         "} lies in " + std::to_string(count);
        return report;
      }
    }
  }
  report.params = DesignParams{v, design.num_edges(), degree[0], k, lambda};
  return report;
}

IncidenceMatrix Incidence(const BlockDesign& design) {
  IncidenceMatrix a;
  a.rows = design.num_vertices();
  a.cols = design.num_edges();
  a.cells.assign(static_cast<size_t>(a.rows * a.cols), 0);
  for (std::int64_t j = 0; j < a.cols; ++j) {
    for (int vertex : design.edges()[j]) a.cells[vertex * a.cols + j] = 1;
  }
  return a;
}

Mechanism BdMechanism(const BlockDesign& design, const Rational& c,
                      const Rational& d) {
  if (c < 0 || d < 0) throw ValidationError("design values must be >= 0");
  const DesignReport report = VerifyDesign(design);
  if (!report.ok()) {
    throw ValidationError("design mechanism needs a verified design: " +
                          report.failure);
  }
  const std::int64_t b = report.params->b;
  const std::int64_t r = report.params->r;
  const Rational normalizer = c * r + d * (b - r);
  if (sgn(normalizer) == 0) {
    throw ValidationError("design mechanism normalizer c r + d (b - r) is 0");
  }
  const Rational high = c / normalizer;
  const Rational low = d / normalizer;
  const IncidenceMatrix a = Incidence(design);
  std::vector<Rational> entries;
  entries.reserve(a.cells.size());
  for (std::uint8_t cell : a.cells) entries.push_back(cell ? high : low);
  return Mechanism(design.num_vertices(), static_cast<int>(b),
                   std::move(entries));
}

BlockDesign ConcatDesigns(const BlockDesign& first, const BlockDesign& second) {
  if (first.num_vertices() != second.num_vertices()) {
    throw ValidationError("cannot concatenate designs on " +
                          std::to_string(first.num_vertices()) + " and " +
                          std::to_string(second.num_vertices()) + " vertices");
  }
  std::vector<Edge> edges = first.edges();
  edges.insert(edges.end(), second.edges().begin(), second.edges().end());
  return BlockDesign(first.num_vertices(), std::move(edges));
}

DualPairPartition FindDualPairs(const Mechanism& q) {
  const int m = q.num_outputs();
  if (m % 2 != 0) {
    throw ValidationError("dual-pair partition needs an even number of columns");
  }
  // Rows sum to 1, so m/2 pairs of scale s force s = 2/m. With the scale
  // fixed, a column's partner is a unique vector and greedy matching is exact.
  DualPairPartition partition;
  partition.pair_scale = ToRational(2, m);
  std::vector<bool> used(m, false);
  for (int i = 0; i < m; ++i) {
    if (used[i]) continue;
    int partner = -1;
    Rational scale;
    for (int j = i + 1; j < m && partner < 0; ++j) {
      if (!used[j] && SumIsConstant(q, i, j, &scale) &&
          scale == partition.pair_scale) {
        partner = j;
      }
    }
    if (partner < 0) {
      throw ValidationError("column " + std::to_string(i + 1) +
                            " has no dual partner; mechanism is not resolvable");
    }
    used[i] = used[partner] = true;
    partition.pairs.emplace_back(i, partner);
  }
  return partition;
}

DualPairPartition ComplementPairs(const BlockDesign& design,
                                  const Mechanism& q) {
  if (q.num_inputs() != design.num_vertices() ||
      q.num_outputs() != design.num_edges()) {
    throw ValidationError("mechanism shape does not match the design");
  }
  const int v = design.num_vertices();
  const std::uint64_t full =
      v == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << v) - 1;
  std::unordered_map<std::uint64_t, int> index_of;
  index_of.reserve(design.edges().size());
  for (size_t j = 0; j < design.edges().size(); ++j) {
    if (!index_of.emplace(EdgeMask(design.edges()[j]), static_cast<int>(j))
             .second) {
      throw ValidationError("repeated edge " +
                            EdgeString(design.edges()[j]) +
                            "; complement pairing is ambiguous");
    }
  }
  DualPairPartition partition;
  std::vector<bool> used(design.edges().size(), false);
  for (size_t i = 0; i < design.edges().size(); ++i) {
    if (used[i]) continue;
    const auto it = index_of.find(full & ~EdgeMask(design.edges()[i]));
    if (it == index_of.end() || used[it->second]) {
      throw ValidationError("edge " + EdgeString(design.edges()[i]) +
                            " has no complementary edge");
    }
    const int j = it->second;
    used[i] = used[j] = true;
    partition.pairs.emplace_back(static_cast<int>(i), j);
  }
  std::sort(partition.pairs.begin(), partition.pairs.end());
  for (size_t p = 0; p < partition.pairs.size(); ++p) {
    const auto [i, j] = partition.pairs[p];
    Rational scale;
    if (!SumIsConstant(q, i, j, &scale) ||
        (p > 0 && scale != partition.pair_scale)) {
      throw ValidationError("complementary columns do not form dual pairs "
                            "with a common scale");
    }
    partition.pair_scale = scale;
  }
  return partition;
}

Resolution Resolve(const Mechanism& q, const DualPairPartition& partition) {
  const int m = q.num_outputs();
  std::vector<int> seen(m, 0);
  for (const auto& [i, j] : partition.pairs) {
    if (i < 0 || j < 0 || i >= m || j >= m || i == j) {
      throw ValidationError("partition names a column outside the mechanism");
    }
    ++seen[i];
    ++seen[j];
  }
  if (std::any_of(seen.begin(), seen.end(), [](int s) { return s != 1; })) {
    throw ValidationError("partition does not cover every column exactly once");
  }
  if (sgn(partition.pair_scale) <= 0) {
    throw ValidationError("partition has a non-positive pair scale");
  }
  Resolution res;
  res.num_u = static_cast<int>(partition.pairs.size());
  res.per_u.reserve(partition.pairs.size());
  for (const auto& [i, j] : partition.pairs) {
    std::vector<Rational> entries;
    entries.reserve(2 * static_cast<size_t>(q.num_inputs()));
    for (int x = 0; x < q.num_inputs(); ++x) {
      if (q.at(x, i) + q.at(x, j) != partition.pair_scale) {
        throw ValidationError("partition is inconsistent with the mechanism");
      }
      entries.push_back(q.at(x, i) / partition.pair_scale);
      entries.push_back(q.at(x, j) / partition.pair_scale);
    }
    res.per_u.emplace_back(q.num_inputs(), 2, std::move(entries));
  }
  return res;
}

bool ResolutionReproduces(const Mechanism& q, const DualPairPartition& partition,
                          const Resolution& resolution) {
  if (resolution.num_u != static_cast<int>(partition.pairs.size())) return false;
  const Rational weight(1, resolution.num_u);
  for (int u = 0; u < resolution.num_u; ++u) {
    const auto [i, j] = partition.pairs[u];
    const Mechanism& local = resolution.per_u[u];
    for (int x = 0; x < q.num_inputs(); ++x) {
      if (weight * local.at(x, 0) != q.at(x, i)) return false;
      if (weight * local.at(x, 1) != q.at(x, j)) return false;
    }
  }
  return true;
}

std::string WriteEdgeList(const BlockDesign& design) {
  std::string out;
  for (const Edge& edge : design.edges()) {
    for (size_t i = 0; i < edge.size(); ++i) {
      if (i > 0) out += ' ';
      out += std::to_string(edge[i] + 1);
    }
    out += '\n';
  }
  return out;
}

BlockDesign ParseEdgeList(std::string_view text, int num_vertices) {
  std::vector<Edge> edges;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    Edge edge;
    int vertex = 0;
    while (fields >> vertex) edge.push_back(vertex - 1);
    if (!fields.eof()) throw ValidationError("bad edge-list line: " + line);
    edges.push_back(std::move(edge));
  }
  return BlockDesign(num_vertices, std::move(edges));
}

}  // namespace onebit
