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
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "submod/objectives.hpp"
#include "submod/random.hpp"
#include "submod/verify.hpp"

namespace submod {
namespace {

double RateOf(const std::vector<double>& noise, const std::vector<double>& power) {
  double r = 0.0;
  for (std::size_t j = 0; j < noise.size(); ++j) r += std::log(1.0 + power[j] / noise[j]);
  return r;
}

// Best rate over a regular grid of the power simplex on three carriers.
double GridSearchRate3(const std::vector<double>& noise, double budget, int steps) {
  const double h = budget / steps;
  double best = 0.0;
  for (int a = 0; a <= steps; ++a) {
    for (int b = 0; a + b <= steps; ++b) {
      const int c = steps - a - b;
      best = std::max(best, RateOf(noise, {a * h, b * h, c * h}));
    }
  }
  return best;
}

TEST(CoverageTest, EmptyIsZero) {
  const auto inst = GenerateCoverage({.n = 4}, 1);
  EXPECT_DOUBLE_EQ(inst.MakeOracle()(Subset(4)), 0.0);
}

TEST(CoverageTest, FullFieldSensor) {
  CoverageInstance inst({{{5.0, 5.0}, 100.0}}, GridField{10.0, 10.0, 1.0});
  EXPECT_EQ(inst.num_points(), 100);
  EXPECT_DOUBLE_EQ(inst.MakeOracle()(Subset::Full(1)), 100.0);
}

TEST(CoverageTest, Seed5IsMonotoneSubmodular) {
  const auto r = VerifySetFunction(GenerateCoverage({.n = 6}, 5).MakeOracle());
  EXPECT_TRUE(r.monotone);
  EXPECT_TRUE(r.submodular);
}

TEST(CoverageTest, GeneratedInstancesAreSubmodular) {
  for (uint64_t seed = 0; seed < 8; ++seed) {
    const auto r = VerifySetFunction(GenerateCoverage({.n = 10}, seed).MakeOracle());
    EXPECT_TRUE(r.normalized && r.monotone && r.submodular) << "seed " << seed;
  }
}

TEST(CoverageTest, RejectsBadParams) {
  EXPECT_THROW(GenerateCoverage({.n = 0}, 1), Error);
  EXPECT_THROW(GenerateCoverage({.n = 3, .min_radius = 2.0, .max_radius = 1.0}, 1), Error);
}

TEST(WaterfillingTest, SingleCarrier) {
  WaterfillingInstance inst{{{1.0}}, {8.0}};
  EXPECT_NEAR(WaterfillingRate(inst, 0, Subset::Full(1)), std::log(9.0), 1e-12);
}

TEST(WaterfillingTest, EqualNoiseSplitsEvenly) {
  WaterfillingInstance inst{{{1.0, 1.0}}, {8.0}};
  const PowerAllocation a = Waterfill(inst.noise[0], Subset::Full(2), 8.0);
  EXPECT_NEAR(a.power[0], 4.0, 1e-9);
  EXPECT_NEAR(a.power[1], 4.0, 1e-9);
  EXPECT_NEAR(a.rate, 2.0 * std::log(5.0), 1e-12);
}

TEST(WaterfillingTest, EmptyAllotmentIsZero) {
  const auto inst = DemoWaterfillingInstance();
  EXPECT_DOUBLE_EQ(WaterfillingRate(inst, 0, Subset(5)), 0.0);
}

TEST(WaterfillingTest, KktResiduals) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> noise(6);
    for (double& v : noise) v = rng.Uniform(0.1, 5.0);
    const double budget = rng.Uniform(0.5, 10.0);
    const Subset a = Subset::FromMask(6, 1 + rng.UniformInt(63));
    const PowerAllocation p = Waterfill(noise, a, budget);
    double total = 0.0;
    for (double x : p.power) total += x;
    EXPECT_LE(std::abs(total - budget), 1e-10 * budget);
    a.ForEach([&](int j) {
      if (p.power[j] > 0) EXPECT_NEAR(noise[j] + p.power[j], p.water_level, 1e-9);
      else EXPECT_GE(noise[j], p.water_level - 1e-9);
    });
  }
}

TEST(WaterfillingTest, MatchesGridSearchOnDemoProfile) {
  const auto inst = DemoWaterfillingInstance();
  // Every 3-subset of the five carriers.
  for (uint64_t mask = 0; mask < 32; ++mask) {
    if (std::popcount(mask) != 3) continue;
    const Subset a = Subset::FromMask(5, mask);
    std::vector<double> noise;
    a.ForEach([&](int j) { noise.push_back(inst.noise[0][j]); });
    const double grid = GridSearchRate3(noise, 8.0, 1000);
    const double rate = WaterfillingRate(inst, 0, a);
    EXPECT_GE(rate, grid - 1e-12);
    EXPECT_LE(rate - grid, 1e-4) << a;
  }
}

TEST(WaterfillingTest, RateIsMonotoneSubmodular) {
  for (uint64_t seed = 0; seed < 6; ++seed) {
    const auto inst = GenerateWaterfilling({.users = 1, .subcarriers = 10}, seed);
    const auto r = VerifySetFunction(MakeWaterfillingOracle(inst, 0));
    EXPECT_TRUE(r.normalized && r.monotone && r.submodular) << "seed " << seed;
  }
}

TEST(WaterfillingTest, ValidateRejectsNonPositive) {
  WaterfillingInstance inst{{{1.0, 0.0}}, {8.0}};
  EXPECT_THROW(MakeWaterfillingOracle(inst, 0), Error);
  WaterfillingInstance inst2{{{1.0}}, {-1.0}};
  EXPECT_THROW(inst2.Validate(), Error);
}

GaussianClassInstance IdentityInstance(const Eigen::VectorXd& delta) {
  const auto n = delta.size();
  return {Eigen::VectorXd::Zero(n), delta, Eigen::MatrixXd::Identity(n, n),
          Eigen::MatrixXd::Identity(n, n)};
}

TEST(GaussianKLTest, IdenticalDistributionsGiveZero) {
  const auto base = GenerateGaussian({.n = 5}, 4);
  GaussianClassInstance same{base.theta0, base.theta0, base.sigma0, base.sigma0};
  const auto f = MakeGaussianKLOracle(same);
  for (uint64_t m = 0; m < 32; ++m) EXPECT_NEAR(f(Subset::FromMask(5, m)), 0.0, 1e-12);
}

TEST(GaussianKLTest, IdentityCovarianceReduction) {
  Eigen::VectorXd delta(3);
  delta << 1.0, -2.0, 0.5;
  const auto inst = IdentityInstance(delta);
  const Subset s = Subset::FromElements(3, {0, 2});
  EXPECT_NEAR(GaussianKL(inst, s), 0.5 * (1.0 + 0.25), 1e-12);
  EXPECT_DOUBLE_EQ(GaussianKL(inst, Subset(3)), 0.0);
}

TEST(GaussianKLTest, MatchesMonteCarlo) {
  const auto inst = GenerateGaussian({.n = 4}, 11);
  const Subset all = Subset::Full(4);
  const double exact = GaussianKL(inst, all);
  // KL(N1 || N0) = E_{x ~ N1}[ln p1(x) - ln p0(x)].
  const Eigen::LLT<Eigen::MatrixXd> c0(inst.sigma0), c1(inst.sigma1);
  const Eigen::MatrixXd l0 = c0.matrixL(), l1 = c1.matrixL();
  const double half_logdet0 = l0.diagonal().array().log().sum();
  const double half_logdet1 = l1.diagonal().array().log().sum();
  Rng rng(99);
  const int samples = 1000000;
  double sum = 0.0, sum_sq = 0.0;
  Eigen::VectorXd z(4);
  for (int i = 0; i < samples; ++i) {
    for (int j = 0; j < 4; ++j) z(j) = rng.Normal();
    const Eigen::VectorXd x = inst.theta1 + l1 * z;
    const Eigen::VectorXd r0 = l0.triangularView<Eigen::Lower>().solve(x - inst.theta0);
    const double llr = (-0.5 * z.squaredNorm() - half_logdet1) - (-0.5 * r0.squaredNorm() - half_logdet0);
    sum += llr;
    sum_sq += llr * llr;
  }
  const double mean = sum / samples;
  const double stderr_ = std::sqrt((sum_sq / samples - mean * mean) / samples);
  EXPECT_NEAR(mean, exact, 3.0 * stderr_);
}

TEST(GaussianKLTest, NonNegative) {
  const auto inst = GenerateGaussian({.n = 6}, 2);
  const auto f = MakeGaussianKLOracle(inst);
  for (uint64_t m = 0; m < 64; ++m) EXPECT_GE(f(Subset::FromMask(6, m)), -1e-12);
}

TEST(GaussianKLTest, RejectsIndefiniteCovariance) {
  auto inst = IdentityInstance(Eigen::VectorXd::Ones(2));
  inst.sigma0(0, 1) = inst.sigma0(1, 0) = 2.0;
  EXPECT_THROW(MakeGaussianKLOracle(inst), Error);
  try {
    GaussianKL(inst, Subset::Full(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingularSubmatrix);
  }
}

TEST(GeneratorTest, DeterministicPerSeed) {
  const auto a = GenerateGaussian({.n = 50}, 8);
  const auto b = GenerateGaussian({.n = 50}, 8);
  EXPECT_EQ(a.size(), 50);
  EXPECT_TRUE(a.sigma0 == b.sigma0 && a.sigma1 == b.sigma1 && a.theta1 == b.theta1);
  const auto c1 = GenerateCoverage({.n = 10}, 2);
  const auto c2 = GenerateCoverage({.n = 10}, 2);
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(c1.sensors()[i].center.x, c2.sensors()[i].center.x);
    EXPECT_EQ(c1.sensors()[i].radius, c2.sensors()[i].radius);
  }
  EXPECT_TRUE(VerifySetFunction(c1.MakeOracle()).submodular);
}

TEST(GeneratorTest, GaussianCovarianceIsToeplitz) {
  const auto g = GenerateGaussian({.n = 6}, 1);
  for (int i = 1; i < 6; ++i) {
    for (int j = 1; j < 6; ++j) EXPECT_DOUBLE_EQ(g.sigma0(i, j), g.sigma0(i - 1, j - 1));
  }
}

TEST(ExplicitTest, LooksUpByMask) {
  const auto f = MakeExplicitOracle(2, {0.0, 1.0, 2.0, 2.5});
  EXPECT_DOUBLE_EQ(f(Subset::FromElements(2, {0, 1})), 2.5);
  EXPECT_THROW(MakeExplicitOracle(2, {0.0}), Error);
  EXPECT_THROW(MakeExplicitOracle(15, std::vector<double>(1 << 15)), Error);
}

}  // namespace
}  // namespace submod
