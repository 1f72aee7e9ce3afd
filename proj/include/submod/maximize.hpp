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

// Greedy maximization of monotone submodular functions under cardinality,
// knapsack, matroid and multiway-partition constraints.
//
// Every argmax breaks ties toward the lowest element index, so all solvers
// are deterministic and traces are comparable across implementations.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "submod/errors.hpp"
#include "submod/matroid.hpp"
#include "submod/oracle.hpp"
#include "submod/subset.hpp"

namespace submod {

inline const double kOneMinusInvE = 1.0 - 1.0 / std::numbers::e;

struct TraceStep {
  int element = -1;
  double gain = 0.0;
  // Block the element went to; multiway partition only.
  int block = -1;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct SolveResult {
  std::string solver;
  Subset selected;
  // Per-block sets for partition solvers; empty otherwise.
  std::vector<Subset> blocks;
  double value = 0.0;
  int64_t oracle_calls = 0;
  double guarantee = 0.0;
  std::vector<TraceStep> trace;
};

struct GreedyOptions {
  // Stop as soon as the best marginal gain is <= 0. Off by default: monotone
  // objectives have nonnegative gains and the rule fills to K.
  bool stop_on_nonpositive_gain = false;
  // Restrict selection to these elements; all elements when unset.
  std::optional<Subset> candidates;
};

namespace internal {

inline std::vector<int> CandidateList(int n, const std::optional<Subset>& candidates) {
  if (!candidates) {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int e = 0; e < n; ++e) all[e] = e;
    return all;
  }
  if (candidates->universe_size() != n) Fail(ErrorCode::kOutOfRange, "candidate set over wrong ground set");
  return candidates->Elements();
}

inline void CheckK(int k, int n) {
  if (k < 0 || k > n) {
    Fail(ErrorCode::kBadK, "K=" + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
  }
}

}  // namespace internal

// Repeatedly adds argmax_e f(e | S) until |S| = K.
inline SolveResult GreedyCardinality(const SetFunctionOracle& f, int k,
                                     const GreedyOptions& options = {}) {
  const int n = f.size();
  internal::CheckK(k, n);
  const int64_t calls_before = f.calls();
  const std::vector<int> pool = internal::CandidateList(n, options.candidates);
  const int target = std::min<int>(k, static_cast<int>(pool.size()));

  SolveResult result;
  result.solver = "greedy";
  result.guarantee = kOneMinusInvE;
  Subset s(n);
  for (int step = 0; step < target; ++step) {
    int best = -1;
    double best_gain = 0.0;
    for (int e : pool) {
      if (s.Contains(e)) continue;
      const double gain = MarginalGain(f, e, s);
      if (best < 0 || gain > best_gain) {
        best = e;
        best_gain = gain;
      }
    }
    if (best < 0) break;
    if (options.stop_on_nonpositive_gain && best_gain <= 0) break;
    s.Insert(best);
    result.trace.push_back({best, best_gain});
  }
  result.value = f(s);
  result.selected = std::move(s);
  result.oracle_calls = f.calls() - calls_before;
  return result;
}

// Greedy with stale upper bounds kept in a max-heap.
//
// Submodularity makes an element's last computed gain an upper bound on its
// current one. Every element whose bound is within tolerance of the best
// fresh gain is re-evaluated before committing, and the winner is chosen by
// (gain, lowest index) over fresh values only, so the selection, trace and
// value match GreedyCardinality exactly.
inline SolveResult LazyGreedy(const SetFunctionOracle& f, int k, const GreedyOptions& options = {}) {
  const int n = f.size();
  internal::CheckK(k, n);
  const int64_t calls_before = f.calls();
  const std::vector<int> pool = internal::CandidateList(n, options.candidates);
  const int target = std::min<int>(k, static_cast<int>(pool.size()));

  struct Entry {
    double bound;
    int element;
    int stamp;
  };
  // Top = largest bound, then lowest index.
  auto worse = [](const Entry& a, const Entry& b) {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.element > b.element;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);

  SolveResult result;
  result.solver = "lazy_greedy";
  result.guarantee = kOneMinusInvE;
  Subset s(n);
  const double base = target > 0 ? f(s) : 0.0;
  for (int e : pool) heap.push({f(Subset(n).With(e)) - base, e, 0});

  for (int step = 0; step < target && !heap.empty(); ++step) {
    std::vector<Entry> fresh;
    double best_fresh = 0.0;
    bool have_fresh = false;
    while (!heap.empty()) {
      const Entry top = heap.top();
      if (have_fresh && top.bound < best_fresh - Tolerance(best_fresh)) break;
      heap.pop();
      Entry updated = top;
      if (top.stamp != step) {
        updated.bound = MarginalGain(f, top.element, s);
        updated.stamp = step;
      }
      fresh.push_back(updated);
      if (!have_fresh || updated.bound > best_fresh) best_fresh = updated.bound;
      have_fresh = true;
    }
    std::size_t pick = 0;
    for (std::size_t i = 1; i < fresh.size(); ++i) {
      if (fresh[i].bound > fresh[pick].bound ||
          (fresh[i].bound == fresh[pick].bound && fresh[i].element < fresh[pick].element)) {
        pick = i;
      }
    }
    const Entry chosen = fresh[pick];
    if (options.stop_on_nonpositive_gain && chosen.bound <= 0) break;
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      if (i != pick) heap.push(fresh[i]);
    }
    s.Insert(chosen.element);
    result.trace.push_back({chosen.element, chosen.bound});
    // Entries evaluated this step are now one step stale.
  }
  result.value = f(s);
  result.selected = std::move(s);
  result.oracle_calls = f.calls() - calls_before;
  return result;
}

namespace internal {

// Completes `seed` greedily within the budget. With `by_ratio` the rule is
// argmax f(e|S)/c_e, otherwise argmax f(e|S); candidates are the elements
// whose cost still fits.
inline Subset KnapsackGreedyFrom(const SetFunctionOracle& f, const Knapsack& ks, Subset seed,
                                 bool by_ratio, std::vector<TraceStep>* trace) {
  double used = ks.Cost(seed);
  while (true) {
    int best = -1;
    double best_score = 0.0;
    double best_gain = 0.0;
    for (int e = 0; e < f.size(); ++e) {
      if (seed.Contains(e) || !ks.Fits(used, e)) continue;
      const double gain = MarginalGain(f, e, seed);
      const double score = by_ratio ? gain / ks.cost(e) : gain;
      if (best < 0 || score > best_score) {
        best = e;
        best_score = score;
        best_gain = gain;
      }
    }
    if (best < 0) break;
    seed.Insert(best);
    used += ks.cost(best);
    if (trace) trace->push_back({best, best_gain});
  }
  return seed;
}

}  // namespace internal

inline constexpr int kKnapsackPairEnumerationMaxN = 64;

// Best of the cost-ratio greedy set and the plain-gain greedy set, both kept
// within budget; guarantee (1 - 1/e)/2.
//
// With `enumerate_pairs`, every feasible seed of at most two elements is also
// completed by the ratio rule and the best candidate overall is returned;
// guarantee 1 - 1/e. That mode costs O(N^3) oracle calls and is capped at
// N <= 64.
inline SolveResult CostWeightedGreedy(const SetFunctionOracle& f, const Knapsack& ks,
                                      bool enumerate_pairs = false) {
  const int n = f.size();
  if (ks.size() != n) Fail(ErrorCode::kBadParams, "knapsack costs must cover the ground set");
  if (enumerate_pairs && n > kKnapsackPairEnumerationMaxN) {
    Fail(ErrorCode::kTooLarge, "pair enumeration is capped at N <= 64");
  }
  const int64_t calls_before = f.calls();

  SolveResult result;
  result.solver = enumerate_pairs ? "knapsack_pairs" : "knapsack";
  result.guarantee = enumerate_pairs ? kOneMinusInvE : kOneMinusInvE / 2.0;

  std::vector<TraceStep> ratio_trace;
  std::vector<TraceStep> gain_trace;
  Subset best = internal::KnapsackGreedyFrom(f, ks, Subset(n), true, &ratio_trace);
  double best_value = f(best);
  result.trace = ratio_trace;
  const Subset by_gain = internal::KnapsackGreedyFrom(f, ks, Subset(n), false, &gain_trace);
  if (const double v = f(by_gain); v > best_value) {
    best = by_gain;
    best_value = v;
    result.trace = gain_trace;
  }

  if (enumerate_pairs) {
    auto consider = [&](Subset seed) {
      if (!ks.Feasible(seed)) return;
      std::vector<TraceStep> trace;
      Subset prefix(n);
      seed.ForEach([&](int e) {
        trace.push_back({e, MarginalGain(f, e, prefix)});
        prefix.Insert(e);
      });
      Subset done = internal::KnapsackGreedyFrom(f, ks, std::move(seed), true, &trace);
      if (const double v = f(done); v > best_value) {
        best = std::move(done);
        best_value = v;
        result.trace = std::move(trace);
      }
    };
    for (int a = 0; a < n; ++a) {
      consider(Subset(n).With(a));
      for (int b = a + 1; b < n; ++b) consider(Subset(n).With(a).With(b));
    }
  }

  result.value = best_value;
  result.selected = std::move(best);
  result.oracle_calls = f.calls() - calls_before;
  return result;
}

// Adds the feasible element of largest gain until no element keeps S
// independent; guarantee 1/2.
inline SolveResult MatroidGreedy(const SetFunctionOracle& f, const Matroid& m,
                                 const GreedyOptions& options = {}) {
  const int n = f.size();
  if (m.size() != n) Fail(ErrorCode::kBadParams, "matroid over a different ground set");
  const int64_t calls_before = f.calls();
  const std::vector<int> pool = internal::CandidateList(n, options.candidates);

  SolveResult result;
  result.solver = "matroid_greedy";
  result.guarantee = 0.5;
  Subset s(n);
  while (true) {
    int best = -1;
    double best_gain = 0.0;
    for (int e : pool) {
      if (s.Contains(e) || !m.IsIndependent(s.With(e))) continue;
      const double gain = MarginalGain(f, e, s);
      if (best < 0 || gain > best_gain) {
        best = e;
        best_gain = gain;
      }
    }
    if (best < 0) break;
    if (options.stop_on_nonpositive_gain && best_gain <= 0) break;
    s.Insert(best);
    result.trace.push_back({best, best_gain});
  }
  result.value = f(s);
  result.selected = std::move(s);
  result.oracle_calls = f.calls() - calls_before;
  return result;
}

// Assigns elements in index order, each to the block with the largest
// marginal gain f_j(e | S_j) (ties to the lowest block). Blocks are disjoint
// and cover the ground set; guarantee 1/2.
inline SolveResult MultiwayPartitionGreedy(const std::vector<const SetFunctionOracle*>& fs) {
  if (fs.empty()) Fail(ErrorCode::kEmptyFunctionList, "need at least one block objective");
  const int n = fs[0]->size();
  for (const SetFunctionOracle* f : fs) {
    if (f->size() != n) Fail(ErrorCode::kBadParams, "block objectives must share the ground set");
  }
  std::vector<int64_t> calls_before;
  for (const SetFunctionOracle* f : fs) calls_before.push_back(f->calls());

  SolveResult result;
  result.solver = "partition_greedy";
  result.guarantee = 0.5;
  result.blocks.assign(fs.size(), Subset(n));
  for (int e = 0; e < n; ++e) {
    int best = 0;
    double best_gain = 0.0;
    for (std::size_t j = 0; j < fs.size(); ++j) {
      const double gain = MarginalGain(*fs[j], e, result.blocks[j]);
      if (j == 0 || gain > best_gain) {
        best = static_cast<int>(j);
        best_gain = gain;
      }
    }
    result.blocks[best].Insert(e);
    result.trace.push_back({e, best_gain, best});
  }
  result.selected = Subset::Full(n);
  for (std::size_t j = 0; j < fs.size(); ++j) {
    result.value += (*fs[j])(result.blocks[j]);
    result.oracle_calls += fs[j]->calls() - calls_before[j];
  }
  return result;
}

inline SolveResult MultiwayPartitionGreedy(const std::vector<SetFunctionOracle>& fs) {
  std::vector<const SetFunctionOracle*> ptrs;
  for (const auto& f : fs) ptrs.push_back(&f);
  return MultiwayPartitionGreedy(ptrs);
}

}  // namespace submod
