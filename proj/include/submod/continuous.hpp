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

// Continuous (DR-)submodular quadratics on the unit box and on down-closed
// polytopes {x in [0, 1]^N : A x <= b}.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "submod/errors.hpp"
#include "submod/random.hpp"

namespace submod {

// f(x) = x'Hx / 2 + b'x + c0.
struct ContinuousQuadratic {
  Eigen::MatrixXd h;
  Eigen::VectorXd b;
  double c0 = 0.0;

  int size() const { return static_cast<int>(b.size()); }

  void Validate() const {
    if (h.rows() != h.cols() || h.rows() != b.size()) Fail(ErrorCode::kBadParams, "quadratic dimension mismatch");
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) Fail(ErrorCode::kAsymmetricH, "H is not symmetric");
  }

  double Value(const Eigen::VectorXd& x) const { return 0.5 * x.dot(h * x) + b.dot(x) + c0; }
  Eigen::VectorXd Gradient(const Eigen::VectorXd& x) const { return h * x + b; }
};

struct QuadraticFlags {
  // Off-diagonal entries of H are nonpositive.
  bool submodular = false;
  // Every entry of H is nonpositive.
  bool dr = false;
  // lambda_max(H) <= 0.
  bool concave = false;
  double lambda_max = 0.0;
};

inline QuadraticFlags CheckQuadratic(const ContinuousQuadratic& q) {
  q.Validate();
  QuadraticFlags f;
  const int n = q.size();
  f.submodular = true;
  f.dr = true;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (q.h(i, j) > 0) {
        f.dr = false;
        if (i != j) f.submodular = false;
      }
    }
  }
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(q.h, Eigen::EigenvaluesOnly);
    f.lambda_max = eig.eigenvalues().maxCoeff();
  }
  f.concave = f.lambda_max <= 1e-12 * std::max(1.0, q.h.cwiseAbs().maxCoeff());
  return f;
}

struct LatticeReport {
  bool holds = true;
  // max over sampled pairs of f(x v y) + f(x ^ y) - f(x) - f(y).
  double worst_violation = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd x;
  Eigen::VectorXd y;
};

inline constexpr double kLatticeTolerance = 1e-9;

// Samples pairs uniformly from [0, 1]^N and tests
// f(x) + f(y) >= f(x v y) + f(x ^ y).
inline LatticeReport LatticeCheck(const std::function<double(const Eigen::VectorXd&)>& fn, int n, int samples,
                                  uint64_t seed) {
  Rng rng(seed);
  LatticeReport r;
  Eigen::VectorXd x(n), y(n);
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < n; ++i) x[i] = rng.Uniform();
    for (int i = 0; i < n; ++i) y[i] = rng.Uniform();
    const double v = fn(x.cwiseMax(y)) + fn(x.cwiseMin(y)) - fn(x) - fn(y);
    if (v > r.worst_violation) {
      r.worst_violation = v;
      r.x = x;
      r.y = y;
    }
  }
  r.holds = !(r.worst_violation > kLatticeTolerance);
  return r;
}

// {x in [0, 1]^N : a x <= b} with a >= 0 and b >= 0, so 0 is feasible.
struct PolytopeDomain {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;

  static PolytopeDomain Box(int n) { return {Eigen::MatrixXd(0, n), Eigen::VectorXd(0)}; }

  int size() const { return static_cast<int>(a.cols()); }
  int constraints() const { return static_cast<int>(a.rows()); }

  void Validate(int n) const {
    if (a.cols() != n || a.rows() != b.size()) Fail(ErrorCode::kBadParams, "domain dimension mismatch");
    if (a.size() > 0 && a.minCoeff() < 0) Fail(ErrorCode::kBadParams, "constraint matrix must be nonnegative");
    if (b.size() > 0 && b.minCoeff() < 0) Fail(ErrorCode::kInfeasibleDomain, "negative right-hand side empties the domain");
  }

  bool Contains(const Eigen::VectorXd& x, double tol = 1e-9) const {
    if (x.size() != a.cols()) return false;
    if (x.size() > 0 && (x.minCoeff() < -tol || x.maxCoeff() > 1 + tol)) return false;
    if (a.rows() == 0) return true;
    return ((a * x - b).array() <= tol).all();
  }
};

// max c'v over the domain by a dense tableau simplex with Bland's rule.
// Rows are a v <= b followed by v <= 1; the slack basis is feasible since the
// right-hand sides are nonnegative.
inline Eigen::VectorXd LpMaximize(const Eigen::VectorXd& c, const PolytopeDomain& dom) {
  const int n = static_cast<int>(c.size());
  dom.Validate(n);
  const int m = dom.constraints();
  const int rows = m + n;
  const int cols = n + rows;
  constexpr double kEps = 1e-12;

  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(rows, cols + 1);
  t.block(0, 0, m, n) = dom.a;
  t.block(m, 0, n, n).setIdentity();
  t.block(0, n, rows, rows).setIdentity();
  t.block(0, cols, m, 1) = dom.b;
  t.block(m, cols, n, 1).setOnes();
  Eigen::RowVectorXd z = Eigen::RowVectorXd::Zero(cols + 1);
  z.head(n) = -c.transpose();
  std::vector<int> basis(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) basis[r] = n + r;

  const int max_pivots = 50 * (cols + 1);
  for (int pivots = 0;; ++pivots) {
    if (pivots > max_pivots) Fail(ErrorCode::kLPFailure, "simplex pivot limit exceeded");
    int enter = -1;
    for (int j = 0; j < cols; ++j) {
      if (z[j] < -kEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < rows; ++r) {
      if (t(r, enter) <= kEps) continue;
      const double ratio = t(r, cols) / t(r, enter);
      if (leave < 0 || ratio < best - kEps) {
        best = ratio;
        leave = r;
      } else if (ratio <= best + kEps && basis[r] < basis[leave]) {
        best = std::min(best, ratio);
        leave = r;
      }
    }
    if (leave < 0) Fail(ErrorCode::kLPFailure, "linear program is unbounded");
    t.row(leave) /= t(leave, enter);
    for (int r = 0; r < rows; ++r) {
      if (r != leave && t(r, enter) != 0.0) t.row(r) -= t(r, enter) * t.row(leave);
    }
    z -= z[enter] * t.row(leave);
    basis[leave] = enter;
  }

  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < rows; ++r) {
    if (basis[r] < n) v[basis[r]] = std::clamp(t(r, cols), 0.0, 1.0);
  }
  return v;
}

struct ContinuousResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  // f at each iterate, starting with x_0.
  std::vector<double> history;
  // A sampled gradient had a negative entry; the guarantee may not apply.
  bool monotone_warning = false;
  // Largest constraint excess max(a x_t - b) over all iterates (FW only).
  double max_violation = 0.0;
};

namespace internal {

// Gradient nonnegativity at 0, 1 and a few seeded box points.
inline bool GradientNonnegativeSampled(const ContinuousQuadratic& q) {
  const int n = q.size();
  Rng rng(0);
  std::vector<Eigen::VectorXd> points = {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Ones(n)};
  for (int s = 0; s < 16; ++s) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = rng.Uniform();
    points.push_back(x);
  }
  for (const auto& x : points) {
    if (n > 0 && q.Gradient(x).minCoeff() < -1e-12) return false;
  }
  return true;
}

}  // namespace internal

// x_0 = 0, v_t = argmax_{v in P} <grad f(x_{t-1}), v>, x_t = x_{t-1} + v_t / T.
// Iterates are formed as (sum of v) / T, so T unit steps land on 1 exactly.
inline ContinuousResult DrFrankWolfe(const ContinuousQuadratic& q, const PolytopeDomain& dom, int steps = 100) {
  q.Validate();
  const int n = q.size();
  dom.Validate(n);
  if (steps < 1) Fail(ErrorCode::kBadParams, "steps must be positive");
  ContinuousResult r;
  r.monotone_warning = !internal::GradientNonnegativeSampled(q);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
  r.x = Eigen::VectorXd::Zero(n);
  r.history.push_back(q.Value(r.x));
  for (int t = 1; t <= steps; ++t) {
    sum += LpMaximize(q.Gradient(r.x), dom);
    r.x = sum / steps;
    if (dom.constraints() > 0) r.max_violation = std::max(r.max_violation, (dom.a * r.x - dom.b).maxCoeff());
    r.history.push_back(q.Value(r.x));
  }
  r.iterations = steps;
  r.value = r.history.back();
  return r;
}

// Euclidean projection onto [0, 1]^N, or onto [0, 1]^N intersected with one
// constraint a'x <= beta (a >= 0) via bisection on the multiplier.
inline Eigen::VectorXd ProjectOntoDomain(const Eigen::VectorXd& y, const PolytopeDomain& dom) {
  const Eigen::VectorXd box = y.cwiseMax(0.0).cwiseMin(1.0);
  if (dom.constraints() == 0) return box;
  if (dom.constraints() > 1) Fail(ErrorCode::kUnsupportedDomain, "projection supports at most one constraint");
  const Eigen::VectorXd a = dom.a.row(0).transpose();
  const double beta = dom.b[0];
  if (a.dot(box) <= beta) return box;
  auto at = [&](double lambda) { return (y - lambda * a).cwiseMax(0.0).cwiseMin(1.0).eval(); };
  double lo = 0.0;
  double hi = 1.0;
  while (a.dot(at(hi)) > beta) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (a.dot(at(mid)) > beta ? lo : hi) = mid;
  }
  return at(hi);
}

struct PgaOptions {
  int steps = 100;
  // Defaults to 1 / ||H||_2 (1 when H = 0).
  std::optional<double> step_size;
  std::optional<Eigen::VectorXd> x0;
};

// x <- Proj(x + eta grad f(x)); returns the best iterate.
inline ContinuousResult ProjectedGradientAscent(const ContinuousQuadratic& q, const PolytopeDomain& dom,
                                                const PgaOptions& options = {}) {
  q.Validate();
  const int n = q.size();
  dom.Validate(n);
  if (dom.constraints() > 1) Fail(ErrorCode::kUnsupportedDomain, "projected gradient needs the box or one budget row");
  double eta = 1.0;
  if (options.step_size) {
    eta = *options.step_size;
  } else if (n > 0) {
    const double norm = Eigen::JacobiSVD<Eigen::MatrixXd>(q.h).singularValues()(0);
    if (norm > 0) eta = 1.0 / norm;
  }
  ContinuousResult r;
  r.monotone_warning = !internal::GradientNonnegativeSampled(q);
  Eigen::VectorXd x = ProjectOntoDomain(options.x0 ? *options.x0 : Eigen::VectorXd::Zero(n), dom);
  r.x = x;
  r.value = q.Value(x);
  r.history.push_back(r.value);
  for (int t = 1; t <= options.steps; ++t) {
    x = ProjectOntoDomain(x + eta * q.Gradient(x), dom);
    const double v = q.Value(x);
    r.history.push_back(v);
    if (v > r.value) {
      r.value = v;
      r.x = x;
    }
  }
  r.iterations = options.steps;
  return r;
}

struct NqpParams {
  int n = 100;
  double b = 1.0;
  // Constraint rows; 0 selects max(1, n / 2).
  int m = 0;
};

struct NqpInstance {
  ContinuousQuadratic q;
  PolytopeDomain domain;
};

// H symmetric with entries U[-1, 0], linear term -H 1 so grad f(x) = H (x - 1)
// is nonnegative on the box; constraint entries U[0, 1], right-hand side b 1.
inline NqpInstance GenerateNqp(const NqpParams& p, uint64_t seed) {
  if (p.n < 1 || !(p.b > 0) || p.m < 0) Fail(ErrorCode::kBadParams, "invalid NQP parameters");
  const int m = p.m > 0 ? p.m : std::max(1, p.n / 2);
  Rng rng(seed);
  NqpInstance inst;
  inst.q.h.resize(p.n, p.n);
  for (int i = 0; i < p.n; ++i) {
    for (int j = i; j < p.n; ++j) inst.q.h(i, j) = inst.q.h(j, i) = -rng.Uniform();
  }
  inst.q.b = -inst.q.h * Eigen::VectorXd::Ones(p.n);
  inst.domain.a.resize(m, p.n);
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < p.n; ++j) inst.domain.a(r, j) = rng.Uniform();
  }
  inst.domain.b = Eigen::VectorXd::Constant(m, p.b);
  return inst;
}

struct GridOptimum {
  Eigen::VectorXd x;
  double value = -std::numeric_limits<double>::infinity();
};

inline constexpr double kGridMaxPoints = 2e8;

// Max of f over feasible points of the grid {0, 1/s, ..., 1}^N.
inline GridOptimum GridSearchMax(const ContinuousQuadratic& q, const PolytopeDomain& dom, int resolution = 50) {
  q.Validate();
  const int n = q.size();
  dom.Validate(n);
  if (resolution < 1) Fail(ErrorCode::kBadParams, "resolution must be positive");
  if (std::pow(resolution + 1.0, n) > kGridMaxPoints) Fail(ErrorCode::kTooLarge, "grid too large");
  GridOptimum best;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  while (true) {
    if (dom.Contains(x, 0.0)) {
      const double v = q.Value(x);
      if (v > best.value) {
        best.value = v;
        best.x = x;
      }
    }
    int i = 0;
    while (i < n && idx[i] == resolution) {
      idx[i] = 0;
      x[i] = 0.0;
      ++i;
    }
    if (i == n) break;
    ++idx[i];
    x[i] = static_cast<double>(idx[i]) / resolution;
  }
  return best;
}

}  // namespace submod
