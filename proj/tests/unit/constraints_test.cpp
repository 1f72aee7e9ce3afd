// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <bit>
#include <functional>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "submod/matroid.hpp"
#include "submod/random.hpp"
#include "submod/verify.hpp"

namespace submod {
namespace {

std::vector<std::pair<int, int>> RandomGraph(int v, double density, uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < v; ++a) {
    for (int b = a + 1; b < v; ++b) {
      if (rng.Bernoulli(density)) edges.emplace_back(a, b);
    }
  }
  return edges;
}

// Cycle test by depth-first search, independent of union-find.
bool HasCycle(int v, const std::vector<std::pair<int, int>>& edges, const Subset& s) {
  std::vector<std::vector<std::pair<int, int>>> adj(v);
  s.ForEach([&](int e) {
    adj[edges[e].first].push_back({edges[e].second, e});
    adj[edges[e].second].push_back({edges[e].first, e});
  });
  std::vector<int> seen(v, 0);
  bool cycle = false;
  std::function<void(int, int)> dfs = [&](int u, int via) {
    seen[u] = 1;
    for (auto [w, e] : adj[u]) {
      if (e == via) continue;
      if (seen[w]) {
        cycle = true;
        continue;
      }
      dfs(w, e);
    }
  };
  for (int u = 0; u < v; ++u) {
    if (!seen[u]) dfs(u, -1);
  }
  return cycle;
}

SetFunctionOracle RankOracle(const Matroid& m) {
  return SetFunctionOracle(m.size(), [&m](const Subset& s) { return double(m.Rank(s)); });
}

TEST(MatroidTest, EmptySetIsIndependent) {
  EXPECT_TRUE(Matroid::Uniform(4, 0).IsIndependent(Subset(4)));
  EXPECT_TRUE(Matroid::Partition(4, {{0, 1}}, {0}).IsIndependent(Subset(4)));
  EXPECT_TRUE(Matroid::Graphic(3, {{0, 1}, {1, 2}, {0, 2}}).IsIndependent(Subset(3)));
}

TEST(MatroidTest, TriangleIsDependent) {
  const Matroid m = Matroid::Graphic(3, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_FALSE(m.IsIndependent(Subset::Full(3)));
  EXPECT_TRUE(m.IsIndependent(Subset::FromElements(3, {0, 1})));
}

TEST(MatroidTest, PulseReceiverPartition) {
  // Elements 0..3 are pulses, 4..6 receivers.
  const Matroid m = Matroid::Partition(7, {{0, 1, 2, 3}, {4, 5, 6}}, {2, 1});
  EXPECT_TRUE(m.IsIndependent(Subset::FromElements(7, {0, 2, 5})));
  EXPECT_FALSE(m.IsIndependent(Subset::FromElements(7, {0, 1, 2})));
  EXPECT_FALSE(m.IsIndependent(Subset::FromElements(7, {0, 4, 5})));
  EXPECT_EQ(m.BlockOf(5), 1);
}

TEST(MatroidTest, PartitionValidation) {
  EXPECT_THROW(Matroid::Partition(4, {{0, 1}, {1, 2}}, {1, 1}), Error);
  EXPECT_THROW(Matroid::Partition(4, {{0, 1}}, {3}), Error);
  EXPECT_THROW(Matroid::Partition(4, {{0, 5}}, {1}), Error);
  EXPECT_THROW(Matroid::Partition(4, {{0, 1}}, {1, 1}), Error);
}

TEST(MatroidTest, WrongUniverse) {
  EXPECT_THROW(Matroid::Uniform(4, 2).IsIndependent(Subset(5)), Error);
  EXPECT_THROW(Matroid::Uniform(4, 2).Rank(Subset(3)), Error);
}

TEST(MatroidAxiomsTest, UniformRank3) {
  EXPECT_TRUE(VerifyMatroidAxioms(Matroid::Uniform(6, 3)).valid);
}

TEST(MatroidAxiomsTest, MissingSingletonBreaksClosure) {
  const Matroid m = Matroid::Explicit(2, {Subset(2), Subset::Full(2)});
  const auto r = VerifyMatroidAxioms(m);
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.violation, MatroidAxiomReport::Violation::kDownwardClosure);
  EXPECT_EQ(*r.larger, Subset::Full(2));
  EXPECT_FALSE(m.IsIndependent(*r.smaller));
  EXPECT_EQ(r.smaller->Count(), 1);
}

TEST(MatroidAxiomsTest, ExchangeViolation) {
  // {0}, {1, 2} and all their subsets: {0} cannot be extended from {1, 2}.
  const int n = 3;
  std::vector<Subset> fam = {Subset(n), Subset::FromElements(n, {0}), Subset::FromElements(n, {1}),
                             Subset::FromElements(n, {2}), Subset::FromElements(n, {1, 2})};
  const auto r = VerifyMatroidAxioms(Matroid::Explicit(n, fam));
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.violation, MatroidAxiomReport::Violation::kExchange);
}

TEST(MatroidAxiomsTest, EmptySetMissing) {
  const auto r = VerifyMatroidAxioms(Matroid::Explicit(2, {Subset::Full(2)}));
  EXPECT_EQ(r.violation, MatroidAxiomReport::Violation::kEmptySetDependent);
}

TEST(MatroidAxiomsTest, RandomGraphicSeed4) {
  const auto edges = RandomGraph(6, 0.5, 4);
  ASSERT_LE(edges.size(), 14u);
  EXPECT_TRUE(VerifyMatroidAxioms(Matroid::Graphic(6, edges)).valid);
}

TEST(MatroidAxiomsTest, TooLarge) {
  EXPECT_THROW(VerifyMatroidAxioms(Matroid::Uniform(15, 2)), Error);
}

TEST(GraphicTest, AgreesWithDepthFirstSearch) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const auto edges = RandomGraph(6, 0.6, seed);
    const int n = static_cast<int>(edges.size());
    if (n == 0 || n > 12) continue;
    const Matroid m = Matroid::Graphic(6, edges);
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
      const Subset s = Subset::FromMask(n, mask);
      EXPECT_EQ(m.IsIndependent(s), !HasCycle(6, edges, s));
    }
  }
}

TEST(RankTest, UniformSaturates) {
  const Matroid m = Matroid::Uniform(6, 3);
  EXPECT_EQ(m.Rank(Subset::Full(6)), 3);
  EXPECT_EQ(m.Rank(Subset::FromElements(6, {1, 2})), 2);
}

TEST(RankTest, SpanningTree) {
  // Path 0-1-2-3 plus chord 0-2; the first three edges span 4 vertices.
  const Matroid m = Matroid::Graphic(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}});
  EXPECT_EQ(m.Rank(Subset::FromElements(4, {0, 1, 2})), 3);
  EXPECT_EQ(m.Rank(Subset::Full(4)), 3);
}

TEST(RankTest, RandomPartitionRankIsSubmodular) {
  Rng rng(9);
  const int n = 9;
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  rng.Shuffle(order);
  std::vector<std::vector<int>> blocks = {{order[0], order[1], order[2]},
                                          {order[3], order[4]},
                                          {order[5], order[6], order[7]}};
  std::vector<int> caps = {1 + int(rng.UniformInt(3)), 1, 2};
  const Matroid m = Matroid::Partition(n, blocks, caps);
  const auto r = VerifySetFunction(RankOracle(m));
  EXPECT_TRUE(r.normalized && r.monotone && r.submodular);
}

// Rank is integer valued with unit marginals, and independence coincides
// with rank = |S|, for each shipped kind.
TEST(RankTest, RankInvariantsAllKinds) {
  const auto edges = RandomGraph(5, 0.7, 2);
  std::vector<Matroid> ms = {Matroid::Uniform(8, 3),
                             Matroid::Partition(8, {{0, 1, 2}, {3, 4}, {7}}, {2, 1, 0}),
                             Matroid::Graphic(5, edges)};
  for (const Matroid& m : ms) {
    const int n = m.size();
    const auto f = RankOracle(m);
    const auto r = VerifySetFunction(f);
    EXPECT_TRUE(r.normalized && r.monotone && r.submodular);
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
      const Subset s = Subset::FromMask(n, mask);
      EXPECT_EQ(m.IsIndependent(s), m.Rank(s) == s.Count());
      for (int e = 0; e < n; ++e) {
        if (s.Contains(e)) continue;
        const int d = m.Rank(s.With(e)) - m.Rank(s);
        EXPECT_TRUE(d == 0 || d == 1);
      }
    }
    EXPECT_TRUE(VerifyMatroidAxioms(m).valid);
  }
}

TEST(KnapsackTest, FeasibilityAndValidation) {
  const Knapsack ks({1.0, 2.0, 3.0}, 4.0);
  EXPECT_TRUE(ks.Feasible(Subset::FromElements(3, {0, 2})));
  EXPECT_FALSE(ks.Feasible(Subset::FromElements(3, {1, 2})));
  EXPECT_TRUE(ks.Fits(1.0, 2));
  EXPECT_FALSE(ks.Fits(2.0, 2));
  EXPECT_THROW(Knapsack({1.0, 0.0}, 1.0), Error);
  EXPECT_THROW(Knapsack({1.0}, 0.0), Error);
}

}  // namespace
}  // namespace submod
