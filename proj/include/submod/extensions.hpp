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

// Lovasz and multilinear extensions of set functions, and the continuous
// greedy method with block-wise randomized rounding.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "submod/errors.hpp"
#include "submod/matroid.hpp"
#include "submod/oracle.hpp"
#include "submod/random.hpp"
#include "submod/subset.hpp"

namespace submod {

inline void CheckUnitBox(std::span<const double> x, int n) {
  if (static_cast<int>(x.size()) != n) {
    Fail(ErrorCode::kOutOfRange, "point has " + std::to_string(x.size()) + " coordinates, expected " +
                                     std::to_string(n));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0 && x[i] <= 1.0)) {
      Fail(ErrorCode::kOutOfBox, "coordinate " + std::to_string(i) + " outside [0, 1]");
    }
  }
}

// Indices sorted by value descending, ties by index ascending.
inline std::vector<int> DescendingOrder(std::span<const double> v) {
  std::vector<int> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return v[a] > v[b]; });
  return order;
}

// F_L(x) = E_theta f({e : x_e >= theta}), theta ~ U[0, 1], in sorted form:
//   sum_k (x_(k) - x_(k+1)) f(top k) + (1 - x_(1)) f(empty).
inline double LovaszEval(const SetFunctionOracle& f, std::span<const double> x) {
  const int n = f.size();
  CheckUnitBox(x, n);
  const std::vector<int> order = DescendingOrder(x);
  Subset top(n);
  double value = (1.0 - x[order[0]]) * f(top);
  for (int k = 0; k < n; ++k) {
    top.Insert(order[k]);
    const double next = k + 1 < n ? x[order[k + 1]] : 0.0;
    value += (x[order[k]] - next) * f(top);
  }
  return value;
}

inline constexpr int kMultilinearExactMaxN = 20;

struct MultilinearMode {
  // samples == 0 selects exact enumeration.
  int samples = 0;
  uint64_t seed = 0;

  static MultilinearMode Exact() { return {}; }
  static MultilinearMode MonteCarlo(int samples, uint64_t seed) { return {samples, seed}; }
  bool exact() const { return samples <= 0; }
};

struct Estimate {
  double value = 0.0;
  // Standard error of the mean; zero in exact mode.
  double std_error = 0.0;
};

namespace internal {

inline void CheckExactSize(int n) {
  if (n > kMultilinearExactMaxN) {
    Fail(ErrorCode::kTooLargeForExact, "exact multilinear mode needs N <= 20, got " + std::to_string(n));
  }
}

// Probability of the subset `mask` under independent inclusion x, skipping
// coordinate `skip` (use -1 to include all).
inline double MaskProbability(std::span<const double> x, uint64_t mask, int skip) {
  double p = 1.0;
  for (int i = 0; i < static_cast<int>(x.size()); ++i) {
    if (i == skip) continue;
    p *= (mask >> i) & 1 ? x[i] : 1.0 - x[i];
  }
  return p;
}

inline Subset DrawSubset(std::span<const double> x, Rng& rng) {
  Subset s(static_cast<int>(x.size()));
  for (int i = 0; i < static_cast<int>(x.size()); ++i) {
    if (rng.Uniform() < x[i]) s.Insert(i);
  }
  return s;
}

// Pairwise summation keeps the reported mean independent of chunking.
inline double PairwiseSum(std::span<const double> v) {
  if (v.size() <= 8) return std::accumulate(v.begin(), v.end(), 0.0);
  const std::size_t half = v.size() / 2;
  return PairwiseSum(v.first(half)) + PairwiseSum(v.subspan(half));
}

}  // namespace internal

// F_M(x) = sum_S f(S) prod_{i in S} x_i prod_{i not in S} (1 - x_i).
inline Estimate MultilinearEval(const SetFunctionOracle& f, std::span<const double> x,
                                const MultilinearMode& mode = {}) {
  const int n = f.size();
  CheckUnitBox(x, n);
  Estimate out;
  if (mode.exact()) {
    internal::CheckExactSize(n);
    std::vector<double> terms(std::size_t{1} << n);
    for (uint64_t mask = 0; mask < terms.size(); ++mask) {
      const double p = internal::MaskProbability(x, mask, -1);
      terms[mask] = p == 0.0 ? 0.0 : p * f.EvaluateNoStore(Subset::FromMask(n, mask));
    }
    out.value = internal::PairwiseSum(terms);
    return out;
  }
  Rng rng(mode.seed);
  std::vector<double> draws(static_cast<std::size_t>(mode.samples));
  for (double& d : draws) d = f(internal::DrawSubset(x, rng));
  out.value = internal::PairwiseSum(draws) / mode.samples;
  double ss = 0.0;
  for (double d : draws) ss += (d - out.value) * (d - out.value);
  out.std_error = mode.samples > 1 ? std::sqrt(ss / (mode.samples - 1) / mode.samples) : 0.0;
  return out;
}

// dF_M/dx_i = E[f(X + i) - f(X - i)], X drawn from x.
//
// Monte Carlo mode reuses one draw of X for every coordinate in a sample.
inline std::vector<double> MultilinearGradient(const SetFunctionOracle& f, std::span<const double> x,
                                               const MultilinearMode& mode = {}) {
  const int n = f.size();
  CheckUnitBox(x, n);
  std::vector<double> grad(static_cast<std::size_t>(n), 0.0);
  if (mode.exact()) {
    internal::CheckExactSize(n);
    const uint64_t count = uint64_t{1} << n;
    std::vector<double> values(count);
    for (uint64_t mask = 0; mask < count; ++mask) {
      values[mask] = f.EvaluateNoStore(Subset::FromMask(n, mask));
    }
    for (int i = 0; i < n; ++i) {
      const uint64_t bit = uint64_t{1} << i;
      std::vector<double> terms;
      terms.reserve(count / 2);
      for (uint64_t mask = 0; mask < count; ++mask) {
        if (mask & bit) continue;
        const double p = internal::MaskProbability(x, mask, i);
        terms.push_back(p * (values[mask | bit] - values[mask]));
      }
      grad[i] = internal::PairwiseSum(terms);
    }
    return grad;
  }
  Rng rng(mode.seed);
  std::vector<std::vector<double>> per_coord(static_cast<std::size_t>(n),
                                             std::vector<double>(static_cast<std::size_t>(mode.samples)));
  for (int s = 0; s < mode.samples; ++s) {
    const Subset draw = internal::DrawSubset(x, rng);
    for (int i = 0; i < n; ++i) {
      per_coord[i][s] = f(draw.With(i)) - f(draw.Without(i));
    }
  }
  for (int i = 0; i < n; ++i) grad[i] = internal::PairwiseSum(per_coord[i]) / mode.samples;
  return grad;
}

struct ContinuousGreedyOptions {
  int steps = 50;
  // Gradient samples per step; 0 uses the exact gradient (N <= 20).
  int samples = 200;
  uint64_t seed = 0;
};

struct ContinuousGreedyResult {
  std::vector<double> x;
  Subset rounded;
  double value = 0.0;
  int64_t oracle_calls = 0;
};

namespace internal {

struct RoundingBlock {
  std::vector<int> members;
  int cap = 0;
};

// Blocks of a uniform or partition matroid. Elements outside every block go
// into a block whose cap equals its size.
inline std::vector<RoundingBlock> MatroidBlocks(const Matroid& m) {
  std::vector<RoundingBlock> blocks;
  if (const auto* u = std::get_if<UniformMatroid>(&m.kind())) {
    RoundingBlock all;
    for (int e = 0; e < m.size(); ++e) all.members.push_back(e);
    all.cap = std::min(u->rank, m.size());
    blocks.push_back(std::move(all));
    return blocks;
  }
  const auto* p = std::get_if<PartitionMatroid>(&m.kind());
  if (!p) Fail(ErrorCode::kUnsupportedMatroid, "continuous greedy supports uniform and partition matroids");
  for (std::size_t b = 0; b < p->blocks.size(); ++b) {
    RoundingBlock block{p->blocks[b], p->caps[b]};
    std::sort(block.members.begin(), block.members.end());
    blocks.push_back(std::move(block));
  }
  RoundingBlock free;
  for (int e = 0; e < m.size(); ++e) {
    if (m.BlockOf(e) < 0) free.members.push_back(e);
  }
  free.cap = static_cast<int>(free.members.size());
  if (!free.members.empty()) blocks.push_back(std::move(free));
  return blocks;
}

}  // namespace internal

// Frank-Wolfe on the multilinear extension over a uniform or partition
// matroid polytope, followed by per-block systematic sampling.
//
// Each of the T steps adds 1/T times the indicator of the independent set
// maximizing <gradient, 1_S>, i.e. the top-b entries of every block. The
// iterate is tracked as integer counts, so x = counts / T lies exactly in the
// base polytope. Rounding then picks b elements of each block with inclusion
// probabilities equal to x.
inline ContinuousGreedyResult ContinuousGreedy(const SetFunctionOracle& f, const Matroid& m,
                                               const ContinuousGreedyOptions& options = {}) {
  const int n = f.size();
  if (m.size() != n) Fail(ErrorCode::kBadParams, "matroid over a different ground set");
  if (options.steps < 1) Fail(ErrorCode::kBadParams, "continuous greedy needs at least one step");
  const std::vector<internal::RoundingBlock> blocks = internal::MatroidBlocks(m);
  const int64_t calls_before = f.calls();
  const int t_total = options.steps;

  std::vector<int64_t> counts(static_cast<std::size_t>(n), 0);
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (int t = 0; t < t_total; ++t) {
    const MultilinearMode mode =
        options.samples <= 0
            ? MultilinearMode::Exact()
            : MultilinearMode::MonteCarlo(options.samples, Rng::StreamSeed(options.seed, t));
    const std::vector<double> grad = MultilinearGradient(f, x, mode);
    for (const auto& block : blocks) {
      std::vector<int> order = block.members;
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return grad[a] > grad[b]; });
      for (int i = 0; i < block.cap; ++i) ++counts[order[i]];
    }
    for (int e = 0; e < n; ++e) x[e] = static_cast<double>(counts[e]) / t_total;
  }

  // Systematic sampling in integer units: the block's counts tile
  // [0, cap * T); points r, r + T, ... hit exactly cap distinct elements since
  // no count exceeds T.
  Rng rng(Rng::StreamSeed(options.seed, static_cast<uint64_t>(t_total) + 1));
  Subset rounded(n);
  for (const auto& block : blocks) {
    if (block.cap == 0) continue;
    const int64_t offset = static_cast<int64_t>(rng.UniformInt(static_cast<uint64_t>(t_total)));
    int64_t cumulative = 0;
    int64_t next_point = offset;
    for (int e : block.members) {
      const int64_t end = cumulative + counts[e];
      if (next_point < end) {
        rounded.Insert(e);
        next_point += t_total;
      }
      cumulative = end;
    }
  }

  ContinuousGreedyResult result;
  result.x = std::move(x);
  result.value = f(rounded);
  result.rounded = std::move(rounded);
  result.oracle_calls = f.calls() - calls_before;
  return result;
}

}  // namespace submod
