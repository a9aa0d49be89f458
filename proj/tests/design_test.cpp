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

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include <gtest/gtest.h>

namespace onebit {
namespace {

// Degree, edge-size and pair counts recomputed by brute force.
struct Counts {
  std::vector<std::int64_t> degree;
  std::set<std::size_t> sizes;
  std::map<std::pair<int, int>, std::int64_t> pairs;
};

Counts CountByHand(const BlockDesign& g) {
  Counts c;
  c.degree.assign(g.num_vertices(), 0);
  for (int a = 0; a < g.num_vertices(); ++a) {
    for (int b = a + 1; b < g.num_vertices(); ++b) c.pairs[{a, b}] = 0;
  }
  for (const Edge& e : g.edges()) {
    c.sizes.insert(e.size());
    for (int a = 0; a < g.num_vertices(); ++a) {
      const bool has_a = std::count(e.begin(), e.end(), a) > 0;
      c.degree[a] += has_a;
      for (int b = a + 1; b < g.num_vertices(); ++b) {
        c.pairs[{a, b}] += has_a && std::count(e.begin(), e.end(), b) > 0;
      }
    }
  }
  return c;
}

TEST(DesignTest, CompleteDesignParameters) {
  struct Case {
    int v, k;
    DesignParams expected;
  };
  for (const Case& c : {Case{4, 2, {4, 6, 3, 2, 1}},
                        Case{2, 1, {2, 2, 1, 1, 0}},
                        Case{5, 2, {5, 10, 4, 2, 1}}}) {
    const DesignReport r = VerifyDesign(CompleteBlockDesign(c.v, c.k));
    ASSERT_TRUE(r.ok()) << r.failure;
    EXPECT_EQ(*r.params, c.expected) << c.v << "," << c.k;
  }
}

TEST(DesignTest, CompleteDesignsMatchBinomialsAndCounts) {
  for (int v = 2; v <= 12; ++v) {
    for (int k = 1; k < v; ++k) {
      const BlockDesign g = CompleteBlockDesign(v, k);
      const DesignReport r = VerifyDesign(g);
      ASSERT_TRUE(r.ok()) << r.failure;
      EXPECT_EQ(r.params->b, Binomial(v, k));
      EXPECT_EQ(r.params->r, Binomial(v - 1, k - 1));
      EXPECT_EQ(r.params->k, k);
      EXPECT_EQ(r.params->lambda, Binomial(v - 2, k - 2));
      const Counts c = CountByHand(g);
      for (auto d : c.degree) EXPECT_EQ(d, r.params->r);
      for (const auto& [pair, n] : c.pairs) EXPECT_EQ(n, r.params->lambda);
    }
  }
}

TEST(DesignTest, CompleteDesignIsLexicographic) {
  const BlockDesign g = CompleteBlockDesign(4, 2);
  const std::vector<Edge> expected = {{0, 1}, {0, 2}, {0, 3},
                                      {1, 2}, {1, 3}, {2, 3}};
  EXPECT_EQ(g.edges(), expected);
}

TEST(DesignTest, CompleteDesignRejectsBadInputs) {
  EXPECT_THROW(CompleteBlockDesign(4, 0), ValidationError);
  EXPECT_THROW(CompleteBlockDesign(4, 4), ValidationError);
  try {
    CompleteBlockDesign(30, 15);
    FAIL() << "expected a resource error";
  } catch (const ResourceError& e) {
    EXPECT_NE(std::string(e.what()).find("C(30, 15)"), std::string::npos);
  }
  EXPECT_THROW(CompleteBlockDesign(6, 3, 10), ResourceError);
  EXPECT_NO_THROW(CompleteBlockDesign(6, 3, 20));
}

TEST(DesignTest, UnionOfAdjacentCompleteDesignsIsRpbd) {
  for (int alpha = 1; alpha <= 4; ++alpha) {
    const int v = 2 * alpha + 1;
    const BlockDesign g = ConcatDesigns(CompleteBlockDesign(v, alpha),
                                        CompleteBlockDesign(v, alpha + 1));
    const DesignReport r = VerifyDesign(g);
    ASSERT_TRUE(r.ok()) << r.failure;
    EXPECT_EQ(r.params->b, 2 * Binomial(v, alpha));
    EXPECT_EQ(r.params->r, Binomial(v, alpha));
    EXPECT_EQ(r.params->lambda, Binomial(v - 1, alpha - 1));
    EXPECT_FALSE(r.params->k.has_value());
  }
  const DesignReport five = VerifyDesign(ConcatDesigns(
      CompleteBlockDesign(5, 2), CompleteBlockDesign(5, 3)));
  EXPECT_EQ(five.params->b, 20);
  EXPECT_EQ(five.params->r, 10);
  EXPECT_EQ(five.params->lambda, 4);
  EXPECT_THROW(
      ConcatDesigns(CompleteBlockDesign(4, 2), CompleteBlockDesign(5, 2)),
      ValidationError);
}

TEST(DesignTest, VerifyReportsFirstViolation) {
  std::vector<Edge> edges = CompleteBlockDesign(4, 2).edges();
  edges.pop_back();
  const DesignReport r = VerifyDesign(BlockDesign(4, edges));
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.failure.rfind("not regular", 0), 0u) << r.failure;

  // Regular but not pairwise balanced: a 4-cycle.
  const DesignReport cycle =
      VerifyDesign(BlockDesign(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}));
  EXPECT_FALSE(cycle.ok());
  EXPECT_EQ(cycle.failure.rfind("not pairwise balanced", 0), 0u)
      << cycle.failure;
}

TEST(DesignTest, BlockDesignValidatesEdges) {
  EXPECT_THROW(BlockDesign(3, {{0, 3}}), ValidationError);
  EXPECT_THROW(BlockDesign(3, {{1, 1}}), ValidationError);
  EXPECT_EQ(BlockDesign(3, {{2, 0}}).edges()[0], (Edge{0, 2}));
}

TEST(DesignTest, IncidenceMatrix) {
  const IncidenceMatrix a = Incidence(CompleteBlockDesign(4, 2));
  const int expected[4][6] = {{1, 1, 1, 0, 0, 0},
                              {1, 0, 0, 1, 1, 0},
                              {0, 1, 0, 1, 0, 1},
                              {0, 0, 1, 0, 1, 1}};
  for (int i = 0; i < 4; ++i) {
    int row_sum = 0;
    for (int j = 0; j < 6; ++j) {
      EXPECT_EQ(a.at(i, j), expected[i][j]);
      row_sum += a.at(i, j);
    }
    EXPECT_EQ(row_sum, 3);
  }
  const IncidenceMatrix id = Incidence(CompleteBlockDesign(2, 1));
  EXPECT_EQ(id.cells, (std::vector<std::uint8_t>{1, 0, 0, 1}));
}

TEST(DesignTest, BdMechanismNormalization) {
  const BlockDesign g = CompleteBlockDesign(4, 2);
  const Mechanism q = BdMechanism(g, Rational(2), Rational(1));
  for (int x = 0; x < 4; ++x) {
    Rational sum = 0;
    for (int y = 0; y < 6; ++y) {
      sum += q.at(x, y);
      EXPECT_TRUE(q.at(x, y) == ToRational(2, 9) || q.at(x, y) == ToRational(1, 9));
    }
    EXPECT_EQ(sum, 1);
  }
  const Mechanism uniform = BdMechanism(g, Rational(5), Rational(5));
  for (const Rational& e : uniform.entries()) EXPECT_EQ(e, ToRational(1, 6));
  EXPECT_THROW(BdMechanism(g, Rational(0), Rational(0)), ValidationError);
  EXPECT_THROW(BdMechanism(BlockDesign(4, {{0, 1}}), Rational(1), Rational(0)),
               ValidationError);
}

TEST(DualPairTest, ExampleDesignPairs) {
  const BlockDesign g = CompleteBlockDesign(4, 2);
  const Mechanism q = BdMechanism(g, ToRational(3, 4), ToRational(1, 4));
  const std::vector<std::pair<int, int>> expected = {{0, 5}, {1, 4}, {2, 3}};
  const DualPairPartition found = FindDualPairs(q);
  EXPECT_EQ(found.pairs, expected);
  EXPECT_EQ(found.pair_scale, ToRational(1, 3));
  const DualPairPartition comp = ComplementPairs(g, q);
  EXPECT_EQ(comp.pairs, expected);
  EXPECT_EQ(comp.pair_scale, ToRational(1, 3));
}

TEST(DualPairTest, DiagonalPairsColumnWithItsShift) {
  for (int v = 2; v <= 6; ++v) {
    const Rational c = ToRational(3, 10);
    std::vector<std::vector<Rational>> rows(v, std::vector<Rational>(2 * v));
    for (int x = 0; x < v; ++x) {
      for (int i = 0; i < v; ++i) {
        const Rational diag = x == i ? c : Rational(0);
        rows[x][i] = diag / v;
        rows[x][v + i] = (1 - diag) / v;
      }
    }
    const DualPairPartition p = FindDualPairs(Mechanism::FromRows(rows));
    ASSERT_EQ(static_cast<int>(p.pairs.size()), v);
    for (int i = 0; i < v; ++i) EXPECT_EQ(p.pairs[i], std::make_pair(i, i + v));
  }
}

TEST(DualPairTest, TwoColumnMechanismIsOnePair) {
  const Mechanism q = Mechanism::FromRows(
      {{ToRational(1, 3), ToRational(2, 3)}, {ToRational(1, 2), ToRational(1, 2)}});
  const DualPairPartition p = FindDualPairs(q);
  EXPECT_EQ(p.pairs, (std::vector<std::pair<int, int>>{{0, 1}}));
  EXPECT_EQ(p.pair_scale, 1);
}

TEST(DualPairTest, PartitionIsStableUnderRepetition) {
  const Mechanism q =
      BdMechanism(CompleteBlockDesign(6, 3), ToRational(7, 10), ToRational(1, 5));
  const DualPairPartition first = FindDualPairs(q);
  const DualPairPartition second = FindDualPairs(q);
  EXPECT_EQ(first.pairs, second.pairs);
  const Resolution res = Resolve(q, first);
  EXPECT_EQ(res.num_u, 10);
  EXPECT_TRUE(ResolutionReproduces(q, first, res));
}

TEST(DualPairTest, UnresolvableMechanismsAreRejected) {
  const Mechanism odd = Mechanism::FromRows(
      {{ToRational(1, 3), ToRational(1, 3), ToRational(1, 3)},
       {ToRational(1, 2), ToRational(1, 4), ToRational(1, 4)}});
  EXPECT_THROW(FindDualPairs(odd), ValidationError);
  const Mechanism skewed = Mechanism::FromRows(
      {{ToRational(1, 2), ToRational(1, 4), ToRational(1, 8), ToRational(1, 8)},
       {ToRational(1, 4), ToRational(1, 2), ToRational(1, 8), ToRational(1, 8)}});
  EXPECT_THROW(FindDualPairs(skewed), ValidationError);
}

TEST(ResolutionTest, ExampleResolutionIsThreeTimesPairs) {
  const Rational c = ToRational(3, 4), d = ToRational(1, 4);
  const Mechanism q = BdMechanism(CompleteBlockDesign(4, 2), c, d);
  const DualPairPartition p = FindDualPairs(q);
  const Resolution res = Resolve(q, p);
  ASSERT_EQ(res.num_u, 3);
  for (int u = 0; u < 3; ++u) {
    for (int x = 0; x < 4; ++x) {
      EXPECT_EQ(res.per_u[u].at(x, 0), 3 * q.at(x, p.pairs[u].first));
      EXPECT_EQ(res.per_u[u].at(x, 1), 3 * q.at(x, p.pairs[u].second));
    }
  }
  EXPECT_TRUE(ResolutionReproduces(q, p, res));
}

TEST(ResolutionTest, CompleteDesignResolutionMeetsLdp) {
  const double eps = 1.0;
  const double e = std::exp(eps);
  const Rational c = ToRational(e / (e + 1)), d = 1 - c;
  const Mechanism q = BdMechanism(CompleteBlockDesign(4, 2), c, d);
  const Resolution res = Resolve(q, FindDualPairs(q));
  ASSERT_EQ(res.num_u, 3);
  for (const Mechanism& local : res.per_u) {
    EXPECT_EQ(local.num_outputs(), 2);
    EXPECT_TRUE(CheckLdp(local, eps, 0.0));
  }
}

TEST(ResolutionTest, InconsistentPartitionIsRejected) {
  const Mechanism q = BdMechanism(CompleteBlockDesign(4, 2), Rational(3), Rational(1));
  DualPairPartition bad{{{0, 1}, {2, 3}, {4, 5}}, ToRational(1, 3)};
  EXPECT_THROW(Resolve(q, bad), ValidationError);
  DualPairPartition missing{{{0, 5}, {1, 4}}, ToRational(1, 3)};
  EXPECT_THROW(Resolve(q, missing), ValidationError);
}

TEST(EdgeListTest, RoundTrip) {
  const BlockDesign g = ConcatDesigns(CompleteBlockDesign(5, 2),
                                      CompleteBlockDesign(5, 3));
  const std::string text = WriteEdgeList(g);
  EXPECT_EQ(text.substr(0, 8), "1 2\n1 3\n");
  EXPECT_EQ(ParseEdgeList(text, 5), g);
  EXPECT_THROW(ParseEdgeList("1 x\n", 3), ValidationError);
  EXPECT_THROW(ParseEdgeList("1 4\n", 3), ValidationError);
}

}  // namespace
}  // namespace onebit
