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

// Concrete set functions: grid sensing coverage, per-user waterfilling rate,
// Gaussian KL divergence over feature subsets, and explicit value tables.

#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "submod/errors.hpp"
#include "submod/oracle.hpp"
#include "submod/random.hpp"
#include "submod/subset.hpp"

namespace submod {

// ---------------------------------------------------------------------------
// Sensing coverage
// ---------------------------------------------------------------------------

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Sensor {
  Point2 center;
  double radius = 1.0;
};

// Regular grid with points at cell centers ((i + 1/2) r, (j + 1/2) r).
struct GridField {
  double width = 1.0;
  double height = 1.0;
  double resolution = 1.0;
};

class CoverageInstance {
 public:
  CoverageInstance(std::vector<Sensor> sensors, GridField grid)
      : sensors_(std::move(sensors)), grid_(grid) {
    if (!(grid.width > 0) || !(grid.height > 0) || !(grid.resolution > 0)) {
      Fail(ErrorCode::kBadParams, "grid dimensions must be positive");
    }
    const int nx = static_cast<int>(std::floor(grid.width / grid.resolution + 1e-9));
    const int ny = static_cast<int>(std::floor(grid.height / grid.resolution + 1e-9));
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < ny; ++j) {
        points_.push_back({(i + 0.5) * grid.resolution, (j + 0.5) * grid.resolution});
      }
    }
    point_weight_ = 1.0;
    Build();
  }
  CoverageInstance(std::vector<Sensor> sensors, std::vector<Point2> points)
      : sensors_(std::move(sensors)), points_(std::move(points)) {
    Build();
  }

  int num_sensors() const { return static_cast<int>(sensors_.size()); }
  int num_points() const { return static_cast<int>(points_.size()); }
  const std::vector<Sensor>& sensors() const { return sensors_; }
  const std::vector<Point2>& points() const { return points_; }
  const std::optional<GridField>& grid() const { return grid_; }

  // Number of field points inside at least one selected disc.
  double Value(const Subset& s) const {
    if (s.universe_size() != num_sensors()) {
      Fail(ErrorCode::kOutOfRange, "subset is not over the candidate sensors");
    }
    std::vector<uint64_t> covered(words_, 0);
    s.ForEach([&](int e) {
      const uint64_t* row = &cover_[static_cast<std::size_t>(e) * words_];
      for (std::size_t w = 0; w < words_; ++w) covered[w] |= row[w];
    });
    int count = 0;
    for (uint64_t w : covered) count += std::popcount(w);
    return point_weight_ * count;
  }

  SetFunctionOracle MakeOracle(bool memoize = true) const {
    auto self = std::make_shared<const CoverageInstance>(*this);
    return SetFunctionOracle(
        num_sensors(), [self](const Subset& s) { return self->Value(s); }, memoize);
  }

 private:
  void Build() {
    if (sensors_.empty()) Fail(ErrorCode::kBadParams, "no candidate sensors");
    if (points_.empty()) Fail(ErrorCode::kBadParams, "coverage field is empty");
    for (const Sensor& s : sensors_) {
      if (!(s.radius > 0)) Fail(ErrorCode::kBadParams, "sensor radius must be positive");
    }
    words_ = (points_.size() + 63) / 64;
    cover_.assign(sensors_.size() * words_, 0);
    for (std::size_t e = 0; e < sensors_.size(); ++e) {
      const Sensor& s = sensors_[e];
      for (std::size_t p = 0; p < points_.size(); ++p) {
        const double dx = points_[p].x - s.center.x;
        const double dy = points_[p].y - s.center.y;
        if (dx * dx + dy * dy <= s.radius * s.radius) {
          cover_[e * words_ + p / 64] |= uint64_t{1} << (p % 64);
        }
      }
    }
  }

  std::vector<Sensor> sensors_;
  std::optional<GridField> grid_;
  std::vector<Point2> points_;
  double point_weight_ = 1.0;
  std::size_t words_ = 0;
  std::vector<uint64_t> cover_;
};

// ---------------------------------------------------------------------------
// Waterfilling rate
// ---------------------------------------------------------------------------

struct WaterfillingInstance {
  // noise[i][j]: noise level of subcarrier j seen by user i.
  std::vector<std::vector<double>> noise;
  // budgets[i]: sum-power budget of user i.
  std::vector<double> budgets;

  int users() const { return static_cast<int>(noise.size()); }
  int subcarriers() const { return noise.empty() ? 0 : static_cast<int>(noise[0].size()); }

  void Validate() const {
    if (noise.empty() || noise[0].empty()) Fail(ErrorCode::kBadParams, "empty noise table");
    if (budgets.size() != noise.size()) Fail(ErrorCode::kBadParams, "one budget per user");
    for (const auto& row : noise) {
      if (row.size() != noise[0].size()) Fail(ErrorCode::kBadParams, "ragged noise table");
      for (double v : row) {
        if (!(v > 0)) Fail(ErrorCode::kBadParams, "noise levels must be positive");
      }
    }
    for (double p : budgets) {
      if (!(p > 0)) Fail(ErrorCode::kBadParams, "power budgets must be positive");
    }
  }
};

struct PowerAllocation {
  double water_level = 0.0;
  // Indexed by subcarrier; zero outside the allotted set.
  std::vector<double> power;
  double rate = 0.0;
};

// Maximizes sum_{j in A} ln(1 + P_j / N_j) subject to sum P_j <= budget.
//
// The water level mu is bracketed by bisection until the allotted power is
// within 1e-10 relative of the budget. The level is then recomputed in closed
// form from the active set, mu = (budget + sum of active noise) / |active|,
// which pins the KKT conditions to rounding error.
inline PowerAllocation Waterfill(std::span<const double> noise, const Subset& allotted,
                                 double budget) {
  PowerAllocation out;
  out.power.assign(noise.size(), 0.0);
  const std::vector<int> carriers = allotted.Elements();
  if (carriers.empty()) return out;

  auto allotted_power = [&](double mu) {
    double total = 0.0;
    for (int j : carriers) total += std::max(0.0, mu - noise[j]);
    return total;
  };
  double lo = noise[carriers[0]];
  double hi = lo;
  for (int j : carriers) {
    lo = std::min(lo, noise[j]);
    hi = std::max(hi, noise[j]);
  }
  hi += budget;
  double mu = 0.5 * (lo + hi);
  for (int it = 0; it < 400; ++it) {
    mu = 0.5 * (lo + hi);
    const double total = allotted_power(mu);
    if (std::abs(total - budget) <= 1e-10 * budget) break;
    (total < budget ? lo : hi) = mu;
  }

  double active_noise = 0.0;
  int active = 0;
  for (int j : carriers) {
    if (noise[j] < mu) {
      active_noise += noise[j];
      ++active;
    }
  }
  if (active > 0) {
    const double exact = (budget + active_noise) / active;
    bool consistent = true;
    for (int j : carriers) {
      if ((noise[j] < mu) != (noise[j] < exact)) consistent = false;
    }
    if (consistent) mu = exact;
  }

  out.water_level = mu;
  for (int j : carriers) {
    out.power[j] = std::max(0.0, mu - noise[j]);
    out.rate += std::log1p(out.power[j] / noise[j]);
  }
  return out;
}

inline double WaterfillingRate(const WaterfillingInstance& inst, int user, const Subset& allotted) {
  if (user < 0 || user >= inst.users()) Fail(ErrorCode::kOutOfRange, "user index out of range");
  if (allotted.universe_size() != inst.subcarriers()) {
    Fail(ErrorCode::kOutOfRange, "subset is not over the subcarriers");
  }
  return Waterfill(inst.noise[user], allotted, inst.budgets[user]).rate;
}

inline SetFunctionOracle MakeWaterfillingOracle(const WaterfillingInstance& inst, int user,
                                                bool memoize = true) {
  inst.Validate();
  if (user < 0 || user >= inst.users()) Fail(ErrorCode::kOutOfRange, "user index out of range");
  auto shared = std::make_shared<const WaterfillingInstance>(inst);
  return SetFunctionOracle(
      inst.subcarriers(),
      [shared, user](const Subset& s) { return WaterfillingRate(*shared, user, s); }, memoize);
}

// ---------------------------------------------------------------------------
// Gaussian binary hypothesis KL divergence
// ---------------------------------------------------------------------------

struct GaussianClassInstance {
  Eigen::VectorXd theta0;
  Eigen::VectorXd theta1;
  Eigen::MatrixXd sigma0;
  Eigen::MatrixXd sigma1;

  int size() const { return static_cast<int>(theta0.size()); }

  void Validate() const {
    const auto n = theta0.size();
    if (n < 1 || theta1.size() != n || sigma0.rows() != n || sigma0.cols() != n ||
        sigma1.rows() != n || sigma1.cols() != n) {
      Fail(ErrorCode::kBadParams, "inconsistent Gaussian instance dimensions");
    }
    if (!sigma0.isApprox(sigma0.transpose(), 1e-12) || !sigma1.isApprox(sigma1.transpose(), 1e-12)) {
      Fail(ErrorCode::kBadParams, "covariances must be symmetric");
    }
    if (sigma0.llt().info() != Eigen::Success || sigma1.llt().info() != Eigen::Success) {
      Fail(ErrorCode::kSingularSubmatrix, "covariances must be positive definite");
    }
  }
};

inline Eigen::MatrixXd PrincipalSubmatrix(const Eigen::MatrixXd& m, const std::vector<int>& idx) {
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd out(k, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) out(r, c) = m(idx[r], idx[c]);
  }
  return out;
}

inline Eigen::VectorXd SubVector(const Eigen::VectorXd& v, const std::vector<int>& idx) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) out(static_cast<Eigen::Index>(i)) = v(idx[i]);
  return out;
}

// KL(H1 || H0) between the Gaussians restricted to the features in S:
//   1/2 [tr(S0^-1 S1) - |S| + d' S0^-1 d + ln det S0 - ln det S1],  d = t0 - t1.
// The empty set maps to 0.
inline double GaussianKL(const GaussianClassInstance& inst, const Subset& s) {
  if (s.universe_size() != inst.size()) Fail(ErrorCode::kOutOfRange, "subset is not over the features");
  const std::vector<int> idx = s.Elements();
  if (idx.empty()) return 0.0;
  const Eigen::MatrixXd s0 = PrincipalSubmatrix(inst.sigma0, idx);
  const Eigen::MatrixXd s1 = PrincipalSubmatrix(inst.sigma1, idx);
  const Eigen::LLT<Eigen::MatrixXd> chol0(s0);
  const Eigen::LLT<Eigen::MatrixXd> chol1(s1);
  if (chol0.info() != Eigen::Success || chol1.info() != Eigen::Success) {
    Fail(ErrorCode::kSingularSubmatrix, "Cholesky failed on principal submatrix " + s.ToString());
  }
  const Eigen::VectorXd d = SubVector(inst.theta0, idx) - SubVector(inst.theta1, idx);
  const double trace = chol0.solve(s1).trace();
  const double quad = d.dot(chol0.solve(d));
  const Eigen::MatrixXd l0 = chol0.matrixL();
  const Eigen::MatrixXd l1 = chol1.matrixL();
  double logdet0 = 0.0;
  double logdet1 = 0.0;
  for (Eigen::Index i = 0; i < l0.rows(); ++i) {
    logdet0 += 2.0 * std::log(l0(i, i));
    logdet1 += 2.0 * std::log(l1(i, i));
  }
  return 0.5 * (trace - static_cast<double>(idx.size()) + quad + logdet0 - logdet1);
}

inline SetFunctionOracle MakeGaussianKLOracle(const GaussianClassInstance& inst, bool memoize = true) {
  inst.Validate();
  auto shared = std::make_shared<const GaussianClassInstance>(inst);
  return SetFunctionOracle(
      inst.size(), [shared](const Subset& s) { return GaussianKL(*shared, s); }, memoize);
}

// ---------------------------------------------------------------------------
// Seeded generators
// ---------------------------------------------------------------------------

struct CoverageParams {
  int n = 10;
  double width = 10.0;
  double height = 10.0;
  double resolution = 1.0;
  double min_radius = 1.5;
  double max_radius = 3.5;
};

// Sensor centers uniform over the field, radii uniform in [min, max].
inline CoverageInstance GenerateCoverage(const CoverageParams& p, uint64_t seed) {
  if (p.n < 1 || !(p.min_radius > 0) || p.max_radius < p.min_radius) {
    Fail(ErrorCode::kBadParams, "coverage generator needs n >= 1 and 0 < min_radius <= max_radius");
  }
  Rng rng(seed);
  std::vector<Sensor> sensors;
  for (int i = 0; i < p.n; ++i) {
    Sensor s;
    s.center.x = rng.Uniform(0.0, p.width);
    s.center.y = rng.Uniform(0.0, p.height);
    s.radius = rng.Uniform(p.min_radius, p.max_radius);
    sensors.push_back(s);
  }
  return CoverageInstance(std::move(sensors), GridField{p.width, p.height, p.resolution});
}

struct WaterfillingParams {
  int users = 2;
  int subcarriers = 5;
  double budget = 8.0;
  double min_noise = 0.5;
  double max_noise = 6.0;
  // Every user sees the same noise profile.
  bool shared_noise = false;
};

inline WaterfillingInstance GenerateWaterfilling(const WaterfillingParams& p, uint64_t seed) {
  if (p.users < 1 || p.subcarriers < 1 || !(p.budget > 0) || !(p.min_noise > 0) ||
      p.max_noise < p.min_noise) {
    Fail(ErrorCode::kBadParams, "invalid waterfilling generator parameters");
  }
  Rng rng(seed);
  WaterfillingInstance inst;
  for (int i = 0; i < p.users; ++i) {
    std::vector<double> row;
    if (p.shared_noise && i > 0) {
      row = inst.noise[0];
    } else {
      for (int j = 0; j < p.subcarriers; ++j) row.push_back(rng.Uniform(p.min_noise, p.max_noise));
    }
    inst.noise.push_back(std::move(row));
    inst.budgets.push_back(p.budget);
  }
  return inst;
}

// Two users, five subcarriers and 8 W per user with both users seeing the
// same noise profile. The profile itself is a fixed synthetic choice.
inline WaterfillingInstance DemoWaterfillingInstance() {
  const std::vector<double> profile = {1.0, 3.0, 0.5, 2.0, 4.5};
  return WaterfillingInstance{{profile, profile}, {8.0, 8.0}};
}

inline Eigen::MatrixXd ToeplitzAR1(int n, double variance, double rho) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = variance * std::pow(rho, std::abs(i - j));
  }
  return m;
}

struct GaussianParams {
  int n = 50;
  double mean_scale = 1.0;
  double min_rho = 0.1;
  double max_rho = 0.8;
};

// Toeplitz covariances sigma_k(i, j) = v_k rho_k^|i-j| with seeded rho and v;
// theta0 = 0 and theta1 ~ N(0, mean_scale^2 I).
inline GaussianClassInstance GenerateGaussian(const GaussianParams& p, uint64_t seed) {
  if (p.n < 1 || !(p.min_rho >= 0) || !(p.max_rho < 1) || p.max_rho < p.min_rho) {
    Fail(ErrorCode::kBadParams, "gaussian generator needs n >= 1 and 0 <= rho < 1");
  }
  Rng rng(seed);
  GaussianClassInstance inst;
  const double rho0 = rng.Uniform(p.min_rho, p.max_rho);
  const double rho1 = rng.Uniform(p.min_rho, p.max_rho);
  const double var0 = rng.Uniform(0.5, 2.0);
  const double var1 = rng.Uniform(0.5, 2.0);
  inst.sigma0 = ToeplitzAR1(p.n, var0, rho0);
  inst.sigma1 = ToeplitzAR1(p.n, var1, rho1);
  inst.theta0 = Eigen::VectorXd::Zero(p.n);
  inst.theta1.resize(p.n);
  for (int i = 0; i < p.n; ++i) inst.theta1(i) = p.mean_scale * rng.Normal();
  return inst;
}

// ---------------------------------------------------------------------------
// Explicit value table
// ---------------------------------------------------------------------------

inline constexpr int kExplicitMaxN = 14;

// f given by all 2^N values, indexed by bitmask.
inline SetFunctionOracle MakeExplicitOracle(int n, std::vector<double> values, bool memoize = true) {
  if (n < 1 || n > kExplicitMaxN) Fail(ErrorCode::kTooLarge, "explicit functions need 1 <= N <= 14");
  if (values.size() != (std::size_t{1} << n)) {
    Fail(ErrorCode::kBadParams, "explicit function needs exactly 2^N values");
  }
  return SetFunctionOracle(
      n, [v = std::move(values)](const Subset& s) { return v[s.Mask()]; }, memoize);
}

}  // namespace submod
