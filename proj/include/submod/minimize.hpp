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

// Unconstrained submodular minimization through the Lovasz extension.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "submod/errors.hpp"
#include "submod/extensions.hpp"
#include "submod/oracle.hpp"
#include "submod/subset.hpp"
#include "submod/verify.hpp"

namespace submod {

struct BasePolytopeVertex {
  std::vector<double> w;
  // Generating permutation; w[order[k]] = f(P_k+1) - f(P_k) for prefixes P.
  std::vector<int> order;
  // f of every prefix, prefix_values[k] = f(first k of order).
  std::vector<double> prefix_values;

  double Dot(std::span<const double> x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * x[i];
    return s;
  }
};

// Chained marginals along `direction` sorted descending (ties by index).
// Minimizes <w, -direction> over the base polytope; with direction = x in the
// unit box, <w, x> + f(empty) = F_L(x).
inline BasePolytopeVertex GreedyVertex(const SetFunctionOracle& f, std::span<const double> direction) {
  const int n = f.size();
  if (static_cast<int>(direction.size()) != n) Fail(ErrorCode::kOutOfRange, "direction length mismatch");
  BasePolytopeVertex v;
  v.order = DescendingOrder(direction);
  v.w.assign(static_cast<std::size_t>(n), 0.0);
  v.prefix_values.reserve(static_cast<std::size_t>(n) + 1);
  Subset prefix(n);
  double prev = f(prefix);
  v.prefix_values.push_back(prev);
  for (int e : v.order) {
    prefix.Insert(e);
    const double cur = f(prefix);
    v.w[e] = cur - prev;
    v.prefix_values.push_back(cur);
    prev = cur;
  }
  return v;
}

struct MinimizeResult {
  // Best fractional iterate (subgradient) or final min-norm point (Frank-Wolfe).
  std::vector<double> x;
  // F_L at x (subgradient) or the recovered set value (min-norm).
  double value = 0.0;
  // Best level set seen and its f value.
  Subset set;
  double set_value = 0.0;
  int iterations = 0;
  // Frank-Wolfe duality gap <y, y - s>; zero for the subgradient method.
  double gap = 0.0;
  bool converged = true;
  // False when f was checked and found not submodular; no guarantee then.
  bool submodular_checked = false;
  bool submodular = true;
  int64_t oracle_calls = 0;
};

namespace internal {

// Tracks the best prefix set of a greedy vertex; strict improvement only, so
// the empty prefix wins ties.
inline void ConsiderPrefixes(const BasePolytopeVertex& v, int n, std::optional<Subset>& best,
                             double& best_value) {
  for (std::size_t k = 0; k < v.prefix_values.size(); ++k) {
    if (!best || v.prefix_values[k] < best_value) {
      Subset s(n);
      for (std::size_t i = 0; i < k; ++i) s.Insert(v.order[i]);
      best = std::move(s);
      best_value = v.prefix_values[k];
    }
  }
}

inline void FlagSubmodularity(const SetFunctionOracle& f, bool check, MinimizeResult& r) {
  if (!check || f.size() > BruteForceLimit()) return;
  r.submodular_checked = true;
  r.submodular = VerifySetFunction(f).submodular;
}

}  // namespace internal

struct SubgradientOptions {
  int iterations = 5000;
  // Initial step; derived from f when unset.
  std::optional<double> alpha0;
  // Run the exhaustive submodularity check when N is within the limit.
  bool check_submodular = true;
};

// Projected subgradient descent on F_L over [0, 1]^N with step
// alpha_t = alpha_0 / sqrt(t), starting from x = 1/2.
//
// Default alpha_0 = (f(N) - min_e f({e}) + f(empty)) / sqrt(N), falling back
// to its magnitude (or 1) when not positive. The best iterate by F_L is
// returned together with the best level set visited along the way.
inline MinimizeResult SubgradientMinimize(const SetFunctionOracle& f,
                                          const SubgradientOptions& options = {}) {
  const int n = f.size();
  const int64_t calls_before = f.calls();
  MinimizeResult result;
  internal::FlagSubmodularity(f, options.check_submodular, result);

  const double empty = f(Subset(n));
  double alpha0 = 0.0;
  if (options.alpha0) {
    alpha0 = *options.alpha0;
  } else {
    double min_gain = 0.0;
    for (int e = 0; e < n; ++e) {
      const double g = f(Subset(n).With(e)) - empty;
      if (e == 0 || g < min_gain) min_gain = g;
    }
    alpha0 = (f(Subset::Full(n)) - min_gain) / std::sqrt(static_cast<double>(n));
    if (!(alpha0 > 0)) alpha0 = std::abs(alpha0) > 0 ? std::abs(alpha0) : 1.0;
  }

  std::vector<double> x(static_cast<std::size_t>(n), 0.5);
  std::optional<Subset> best_set;
  double best_set_value = 0.0;
  double best_value = 0.0;
  std::vector<double> best_x;
  for (int t = 1; t <= options.iterations; ++t) {
    const BasePolytopeVertex v = GreedyVertex(f, x);
    const double value = v.Dot(x) + empty;
    if (best_x.empty() || value < best_value) {
      best_value = value;
      best_x = x;
    }
    internal::ConsiderPrefixes(v, n, best_set, best_set_value);
    const double step = alpha0 / std::sqrt(static_cast<double>(t));
    for (int i = 0; i < n; ++i) x[i] = std::clamp(x[i] - step * v.w[i], 0.0, 1.0);
    result.iterations = t;
  }
  if (options.iterations <= 0) {
    const BasePolytopeVertex v = GreedyVertex(f, x);
    best_value = v.Dot(x) + empty;
    best_x = x;
    internal::ConsiderPrefixes(v, n, best_set, best_set_value);
  }

  result.x = std::move(best_x);
  result.value = best_value;
  result.set = std::move(*best_set);
  result.set_value = best_set_value;
  result.oracle_calls = f.calls() - calls_before;
  return result;
}

enum class FrankWolfeStep { kClassic, kLineSearch };

struct MinNormOptions {
  int iterations = 2000;
  double tolerance = 1e-8;
  FrankWolfeStep step = FrankWolfeStep::kClassic;
  bool check_submodular = true;
};

// Frank-Wolfe on min ||y||^2 over the base polytope B(f), with the linear
// oracle s = GreedyVertex(f, -y) and gap <y, y - s>.
//
// The minimizer is read off the level sets of y: every vertex the oracle
// returns is generated by sorting y ascending, so its prefixes are exactly
// the sets {i : y_i <= theta}. The best f over all such prefixes, including
// those of the final iterate, is returned. A nonzero f(empty) only shifts the
// polytope of f - f(empty); reported values are raw f.
inline MinimizeResult MinNormMinimize(const SetFunctionOracle& f, const MinNormOptions& options = {}) {
  const int n = f.size();
  const int64_t calls_before = f.calls();
  MinimizeResult result;
  internal::FlagSubmodularity(f, options.check_submodular, result);

  std::vector<double> y(static_cast<std::size_t>(n));
  std::optional<Subset> best_set;
  double best_set_value = 0.0;

  auto lmo = [&](const std::vector<double>& point) {
    std::vector<double> dir(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) dir[i] = -point[i];
    BasePolytopeVertex v = GreedyVertex(f, dir);
    internal::ConsiderPrefixes(v, n, best_set, best_set_value);
    return v;
  };

  y = lmo(std::vector<double>(static_cast<std::size_t>(n), 0.0)).w;
  result.converged = false;
  for (int t = 0; t < options.iterations; ++t) {
    const BasePolytopeVertex s = lmo(y);
    double gap = 0.0;
    double dist_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = y[i] - s.w[i];
      gap += y[i] * d;
      dist_sq += d * d;
    }
    result.gap = gap;
    result.iterations = t + 1;
    if (gap <= options.tolerance) {
      result.converged = true;
      break;
    }
    double gamma = 2.0 / (t + 2.0);
    if (options.step == FrankWolfeStep::kLineSearch) {
      gamma = dist_sq > 0 ? std::clamp(gap / dist_sq, 0.0, 1.0) : 0.0;
    }
    for (int i = 0; i < n; ++i) y[i] += gamma * (s.w[i] - y[i]);
  }
  lmo(y);

  result.x = std::move(y);
  result.value = best_set_value;
  result.set = std::move(*best_set);
  result.set_value = best_set_value;
  result.oracle_calls = f.calls() - calls_before;
  return result;
}

}  // namespace submod
