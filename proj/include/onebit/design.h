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

// Hypergraph block designs and the mechanisms built from them.
//
// A (v, b, r, k, lambda) block design has v vertices and b edges, every
// vertex in r edges, every edge of size k, and every vertex pair in lambda
// edges. Dropping the uniform edge size gives a regular pairwise-balanced
// design (RPBD). Mapping the incidence matrix 1 -> c, 0 -> d and normalizing
// rows yields a (c, d)-valued design mechanism; pairing its columns into
// "dual pairs" (two columns summing to a constant vector) splits it into a
// uniform shared-randomness index plus one two-output mechanism per pair.

#ifndef ONEBIT_DESIGN_H_
#define ONEBIT_DESIGN_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "onebit/mechanism.h"
#include "onebit/rational.h"

namespace onebit {

inline constexpr std::int64_t kDefaultEdgeCap = 200000;

// Edges are sorted lists of 0-based vertex indices.
using Edge = std::vector<int>;

class BlockDesign {
 public:
  // Validates vertex indices and sorts each edge; edge order is kept.
  BlockDesign(int num_vertices, std::vector<Edge> edges);

  int num_vertices() const { return num_vertices_; }
  std::int64_t num_edges() const {
    return static_cast<std::int64_t>(edges_.size());
  }
  const std::vector<Edge>& edges() const { return edges_; }

  friend bool operator==(const BlockDesign&, const BlockDesign&) = default;

 private:
  int num_vertices_;
  std::vector<Edge> edges_;
};

struct DesignParams {
  int v = 0;
  std::int64_t b = 0;
  std::int64_t r = 0;
  std::optional<int> k;  // absent for a non-uniform RPBD
  std::int64_t lambda = 0;

  friend bool operator==(const DesignParams&, const DesignParams&) = default;
};

struct DesignReport {
  std::optional<DesignParams> params;  // set iff the design verified
  std::string failure;                 // first violated symmetry otherwise

  bool ok() const { return params.has_value(); }
};

// All k-subsets of [v] in lexicographic order. Throws ResourceError if
// C(v, k) exceeds `edge_cap`.
BlockDesign CompleteBlockDesign(int v, int k,
                                std::int64_t edge_cap = kDefaultEdgeCap);

// Recounts degrees, edge sizes and pair multiplicities exhaustively.
// Regularity and pairwise balance are required; uniformity only decides
// whether k is reported.
DesignReport VerifyDesign(const BlockDesign& design);

// v x b 0/1 matrix, row-major.
struct IncidenceMatrix {
  int rows = 0;
  std::int64_t cols = 0;
  std::vector<std::uint8_t> cells;

  int at(int i, std::int64_t j) const { return cells[i * cols + j]; }
};

IncidenceMatrix Incidence(const BlockDesign& design);

// Q = B / (c r + d (b - r)) where B maps incidence 1 -> c and 0 -> d.
Mechanism BdMechanism(const BlockDesign& design, const Rational& c,
                      const Rational& d);

// Edges of `first` followed by edges of `second` on the same vertex set.
BlockDesign ConcatDesigns(const BlockDesign& first, const BlockDesign& second);

// A perfect matching of mechanism columns into dual pairs with a common
// scale s: Q^i + Q^j = s * 1 for every pair. Pairs are (smaller, larger)
// and sorted by their first index.
struct DualPairPartition {
  std::vector<std::pair<int, int>> pairs;
  Rational pair_scale;
};

// Exact column matching; each column is paired with the first later column
// that completes it to the constant vector (2/m) * 1, the only common scale
// possible for an m-column mechanism. Throws ValidationError if some column
// has no such partner.
DualPairPartition FindDualPairs(const Mechanism& q);

// Pairs each edge of `design` with its vertex complement using a hash of
// edge sets, then confirms the pairing on `q`, a (c, d)-valued mechanism of
// that design. Throws ValidationError if some edge has no complement.
DualPairPartition ComplementPairs(const BlockDesign& design, const Mechanism& q);

// Uniform shared randomness over pairs plus one v x 2 mechanism per pair.
struct Resolution {
  int num_u = 0;
  std::vector<Mechanism> per_u;
};

// Column i of each pair becomes output 0, column j output 1, both divided by
// the pair scale. Throws ValidationError if `partition` is not a dual-pair
// partition of `q`.
Resolution Resolve(const Mechanism& q, const DualPairPartition& partition);

// True iff (1/C) * per_u[u](z | x) equals the original column entry of `q`
// for every pair u, side z and input x.
bool ResolutionReproduces(const Mechanism& q, const DualPairPartition& partition,
                          const Resolution& resolution);

// One edge per line, space-separated 1-based vertex indices.
std::string WriteEdgeList(const BlockDesign& design);
BlockDesign ParseEdgeList(std::string_view text, int num_vertices);

}  // namespace onebit

#endif  // ONEBIT_DESIGN_H_
