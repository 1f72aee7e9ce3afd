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
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "submod/objectives.hpp"
#include "submod/oracle.hpp"
#include "submod/random.hpp"
#include "submod/subset.hpp"
#include "submod/verify.hpp"

namespace submod {
namespace {

SetFunctionOracle Cardinality(int n) {
  return SetFunctionOracle(n, [](const Subset& s) { return static_cast<double>(s.Count()); });
}

SetFunctionOracle SquaredCardinality(int n) {
  return SetFunctionOracle(n, [](const Subset& s) {
    const double c = s.Count();
    return c * c;
  });
}

// Three collinear points; sensor 0 covers {p0, p1}, sensor 1 covers {p1, p2}.
CoverageInstance TwoSensorLine() {
  std::vector<Sensor> sensors = {{{1.5, 0.0}, 0.6}, {{2.5, 0.0}, 0.6}};
  std::vector<Point2> points = {{1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}};
  return CoverageInstance(std::move(sensors), std::move(points));
}

// Coverage computed directly from geometry, independent of the precomputed
// bitsets inside CoverageInstance.
double CoverageByGeometry(const CoverageInstance& inst, const Subset& s) {
  int covered = 0;
  for (const Point2& p : inst.points()) {
    bool hit = false;
    s.ForEach([&](int i) {
      const Sensor& q = inst.sensors()[i];
      const double dx = p.x - q.center.x;
      const double dy = p.y - q.center.y;
      if (dx * dx + dy * dy <= q.radius * q.radius) hit = true;
    });
    covered += hit ? 1 : 0;
  }
  return covered;
}

// Recursive enumeration of all subsets of size <= k. Used as a second
// brute-force implementation.
void EnumerateUpTo(int n, int k, int start, Subset& cur, const SetFunctionOracle& f,
                   double& best) {
  best = std::max(best, f(cur));
  if (cur.Count() == k) return;
  for (int e = start; e < n; ++e) {
    cur.Insert(e);
    EnumerateUpTo(n, k, e + 1, cur, f, best);
    cur.Erase(e);
  }
}

TEST(SubsetTest, BasicOperations) {
  Subset s = Subset::FromElements(70, {0, 3, 65});
  EXPECT_EQ(s.Count(), 3);
  EXPECT_TRUE(s.Contains(65));
  EXPECT_FALSE(s.Contains(64));
  EXPECT_EQ(s.ToString(), "{0,3,65}");
  EXPECT_EQ(s.With(64).Count(), 4);
  EXPECT_EQ(s.Without(0).Elements(), (std::vector<int>{3, 65}));
  EXPECT_EQ(s.Complement().Count(), 67);
  EXPECT_TRUE(s.IsSubsetOf(Subset::Full(70)));
  EXPECT_THROW(s.Insert(70), Error);
  EXPECT_THROW(Subset::FromElements(4, {4}), Error);
}

TEST(SubsetTest, MaskRoundTrip) {
  for (uint64_t mask = 0; mask < 64; ++mask) {
    const Subset s = Subset::FromMask(6, mask);
    EXPECT_EQ(s.Mask(), mask);
    EXPECT_EQ(s.Count(), std::popcount(mask));
  }
}

TEST(SubsetTest, SetAlgebra) {
  const Subset a = Subset::FromElements(8, {1, 2, 3});
  const Subset b = Subset::FromElements(8, {3, 4});
  EXPECT_EQ(a.Union(b), Subset::FromElements(8, {1, 2, 3, 4}));
  EXPECT_EQ(a.Intersection(b), Subset::FromElements(8, {3}));
  EXPECT_EQ(a.Difference(b), Subset::FromElements(8, {1, 2}));
  EXPECT_TRUE(a.Intersects(b));
  EXPECT_FALSE(a.Difference(b).Intersects(b));
}

TEST(GroundSetTest, RejectsBadInput) {
  EXPECT_THROW(GroundSet(0), Error);
  EXPECT_THROW(GroundSet(2, {"a", "a"}), Error);
  EXPECT_THROW(GroundSet(2, {"a"}), Error);
  EXPECT_NO_THROW(GroundSet(2, {"a", "b"}));
}

TEST(MarginalGainTest, CardinalityGainIsOne) {
  const auto f = Cardinality(3);
  EXPECT_DOUBLE_EQ(MarginalGain(f, 2, Subset::FromElements(3, {0, 1})), 1.0);
}

TEST(MarginalGainTest, CoverageSharedPoint) {
  const CoverageInstance inst = TwoSensorLine();
  const auto f = inst.MakeOracle();
  EXPECT_DOUBLE_EQ(f(Subset::FromElements(2, {0})), 2.0);
  EXPECT_DOUBLE_EQ(MarginalGain(f, 1, Subset::FromElements(2, {0})), 1.0);
}

TEST(MarginalGainTest, ErrorPaths) {
  const auto f = Cardinality(3);
  try {
    MarginalGain(f, 1, Subset::FromElements(3, {1}));
    FAIL() << "expected ElementInSet";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kElementInSet);
  }
  try {
    MarginalGain(f, 3, Subset(3));
    FAIL() << "expected OutOfRange";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
  EXPECT_THROW(MarginalGain(f, -1, Subset(3)), Error);
}

TEST(OracleTest, MemoizationIsBitIdenticalAndCounted) {
  const CoverageInstance inst = GenerateCoverage({.n = 10}, 7);
  const auto f = inst.MakeOracle();
  const Subset s = Subset::FromElements(10, {1, 4, 7});
  const double first = f(s);
  const double second = f(s);
  EXPECT_EQ(std::memcmp(&first, &second, sizeof(double)), 0);
  EXPECT_EQ(f.calls(), 1);
}

TEST(OracleTest, UnmemoizedCountsEveryCall) {
  SetFunctionOracle f(4, [](const Subset& s) { return s.Count() * 0.5; }, false);
  const Subset s = Subset::FromElements(4, {0});
  f(s);
  f(s);
  EXPECT_EQ(f.calls(), 2);
}

TEST(OracleTest, ForkHasFreshCounter) {
  const auto f = Cardinality(5);
  f(Subset::Full(5));
  const auto g = f.Fork();
  EXPECT_EQ(g.calls(), 0);
  EXPECT_DOUBLE_EQ(g(Subset::Full(5)), 5.0);
  EXPECT_EQ(g.calls(), 1);
  EXPECT_EQ(f.calls(), 1);
}

TEST(OracleTest, ConcurrentEvaluationIsConsistent) {
  const CoverageInstance inst = GenerateCoverage({.n = 12}, 11);
  const auto f = inst.MakeOracle();
  std::vector<std::thread> threads;
  std::vector<double> sums(4, 0.0);
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (uint64_t m = 0; m < 256; ++m) sums[t] += f(Subset::FromMask(12, m * 13 % 4096));
    });
  }
  for (auto& th : threads) th.join();
  for (int t = 1; t < 4; ++t) EXPECT_EQ(sums[t], sums[0]);
  EXPECT_LE(f.calls(), 4 * 256);
  EXPECT_GE(f.calls(), 256);
}

TEST(OracleTest, RejectsWrongUniverse) {
  const auto f = Cardinality(3);
  EXPECT_THROW(f(Subset(4)), Error);
}

TEST(CoverageTest, MatchesGeometry) {
  const CoverageInstance inst = GenerateCoverage({.n = 8}, 1);
  const auto f = inst.MakeOracle();
  Rng rng(5);
  for (int trial = 0; trial < 64; ++trial) {
    const Subset s = Subset::FromMask(8, rng.UniformInt(256));
    EXPECT_DOUBLE_EQ(f(s), CoverageByGeometry(inst, s)) << s;
  }
}

TEST(VerifyTest, CoverageIsMonotoneSubmodular) {
  const CoverageInstance inst = GenerateCoverage({.n = 6}, 3);
  const PropertyReport r = VerifySetFunction(inst.MakeOracle());
  EXPECT_TRUE(r.normalized);
  EXPECT_TRUE(r.monotone);
  EXPECT_TRUE(r.submodular);
  EXPECT_FALSE(r.submodular_witness.has_value());
}

TEST(VerifyTest, SquaredCardinalityWitness) {
  const PropertyReport r = VerifySetFunction(SquaredCardinality(3));
  EXPECT_TRUE(r.monotone);
  EXPECT_FALSE(r.submodular);
  EXPECT_TRUE(r.supermodular);
  ASSERT_TRUE(r.submodular_witness.has_value());
  EXPECT_EQ(r.submodular_witness->a, Subset(3));
  EXPECT_EQ(r.submodular_witness->b, Subset::FromElements(3, {0}));
  EXPECT_EQ(r.submodular_witness->e, 1);
}

TEST(VerifyTest, ModularFunction) {
  const PropertyReport r = VerifySetFunction(MakeModular({1.0, -2.0, 3.5, 0.25}));
  EXPECT_TRUE(r.modular);
  EXPECT_TRUE(r.submodular);
  EXPECT_TRUE(r.supermodular);
  EXPECT_FALSE(r.monotone);
  ASSERT_TRUE(r.monotone_witness.has_value());
  EXPECT_EQ(r.monotone_witness->e, 1);
}

TEST(VerifyTest, NonNormalized) {
  SetFunctionOracle f(2, [](const Subset& s) { return 1.0 + s.Count(); });
  const PropertyReport r = VerifySetFunction(f);
  EXPECT_FALSE(r.normalized);
  EXPECT_DOUBLE_EQ(r.empty_value, 1.0);
}

TEST(VerifyTest, TooLarge) {
  try {
    VerifySetFunction(Cardinality(15), 14);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLarge);
  }
}

TEST(VerifyTest, EnvironmentOverridesLimit) {
  ::setenv("SUBMOD_BRUTE_FORCE_LIMIT", "5", 1);
  EXPECT_EQ(BruteForceLimit(), 5);
  EXPECT_THROW(VerifySetFunction(Cardinality(6)), Error);
  ::unsetenv("SUBMOD_BRUTE_FORCE_LIMIT");
  EXPECT_EQ(BruteForceLimit(), 14);
}

// Property: the verifier's verdict agrees with a direct pairwise check
// f(A) + f(B) >= f(A u B) + f(A n B) on random functions.
TEST(VerifyTest, AgreesWithLatticeInequalityOnRandomFunctions) {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformInt(3));
    std::vector<double> values(std::size_t{1} << n);
    // Half the trials use a concave-of-cardinality function (submodular).
    const bool concave = trial % 2 == 0;
    for (uint64_t m = 0; m < values.size(); ++m) {
      values[m] = concave ? std::sqrt(static_cast<double>(std::popcount(m)))
                          : rng.Uniform(-1.0, 1.0);
    }
    const auto f = MakeExplicitOracle(n, values);
    bool lattice = true;
    for (uint64_t a = 0; a < values.size(); ++a) {
      for (uint64_t b = 0; b < values.size(); ++b) {
        if (values[a] + values[b] < values[a | b] + values[a & b] - 1e-12) lattice = false;
      }
    }
    EXPECT_EQ(VerifySetFunction(f).submodular, lattice) << "trial " << trial;
  }
}

TEST(BruteForceTest, CardinalityWithBudget) {
  const Optimum o = BruteForceOptimum(Cardinality(4), Sense::kMax, AtMostK(2));
  EXPECT_DOUBLE_EQ(o.value, 2.0);
  EXPECT_EQ(o.set, Subset::FromElements(4, {0, 1}));
}

TEST(BruteForceTest, MonotoneMinimumIsEmpty) {
  const Optimum o = BruteForceOptimum(Cardinality(4), Sense::kMin);
  EXPECT_DOUBLE_EQ(o.value, 0.0);
  EXPECT_TRUE(o.set.Empty());
}

TEST(BruteForceTest, AgreesWithRecursiveEnumeration) {
  const CoverageInstance inst = GenerateCoverage({.n = 8}, 1);
  const auto f = inst.MakeOracle();
  const Optimum o = BruteForceOptimum(f, Sense::kMax, AtMostK(3));
  double best = -1.0;
  Subset cur(8);
  EnumerateUpTo(8, 3, 0, cur, f, best);
  EXPECT_DOUBLE_EQ(o.value, best);
  EXPECT_LE(o.set.Count(), 3);
}

TEST(BruteForceTest, InfeasibleAndTooLarge) {
  EXPECT_THROW(BruteForceOptimum(Cardinality(3), Sense::kMax, [](const Subset&) { return false; }),
               Error);
  EXPECT_THROW(BruteForceOptimum(Cardinality(15), Sense::kMax), Error);
}

TEST(RngTest, DeterministicStreams) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.NextU64(), b.NextU64());
  EXPECT_NE(Rng::StreamSeed(42, 0), Rng::StreamSeed(42, 1));
  Rng c(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.Uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(c.UniformInt(7), 7u);
  }
}

}  // namespace
}  // namespace submod
