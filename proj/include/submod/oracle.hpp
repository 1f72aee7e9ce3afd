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

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "submod/errors.hpp"
#include "submod/subset.hpp"

namespace submod {

// Absolute tolerance for property checks, scaled by the magnitude of the
// values being compared.
inline double Tolerance(double a = 0.0, double b = 0.0) {
  return 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

class GroundSet {
 public:
  explicit GroundSet(int size) : size_(size) {
    if (size < 1) Fail(ErrorCode::kBadParams, "ground set needs N >= 1");
  }
  GroundSet(int size, std::vector<std::string> labels)
      : size_(size), labels_(std::move(labels)) {
    if (size < 1) Fail(ErrorCode::kBadParams, "ground set needs N >= 1");
    if (static_cast<int>(labels_.size()) != size) {
      Fail(ErrorCode::kBadParams, "label count must equal N");
    }
    std::unordered_set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size()) {
      Fail(ErrorCode::kBadParams, "labels must be unique");
    }
  }

  int size() const { return size_; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool has_labels() const { return !labels_.empty(); }

 private:
  int size_;
  std::vector<std::string> labels_;
};

// Wraps a deterministic set function f: 2^N -> R.
//
// Evaluations are memoized by subset and the number of evaluator invocations
// (cache misses) is counted. Evaluation is safe from multiple threads: the
// cache is guarded by a mutex and the counter is atomic. Two threads racing
// on the same uncached subset may both invoke the evaluator; both calls count.
class SetFunctionOracle {
 public:
  using Evaluator = std::function<double(const Subset&)>;

  SetFunctionOracle(int n, Evaluator evaluator, bool memoize = true)
      : SetFunctionOracle(GroundSet(n), std::move(evaluator), memoize) {}
  SetFunctionOracle(GroundSet ground, Evaluator evaluator, bool memoize = true)
      : ground_(std::move(ground)),
        evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))),
        memoize_(memoize),
        state_(std::make_unique<State>()) {}

  SetFunctionOracle(SetFunctionOracle&&) noexcept = default;
  SetFunctionOracle& operator=(SetFunctionOracle&&) noexcept = default;
  SetFunctionOracle(const SetFunctionOracle&) = delete;
  SetFunctionOracle& operator=(const SetFunctionOracle&) = delete;

  double operator()(const Subset& s) const {
    if (s.universe_size() != size()) {
      Fail(ErrorCode::kOutOfRange, "subset universe " +
                                       std::to_string(s.universe_size()) +
                                       " != ground set " + std::to_string(size()));
    }
    if (memoize_) {
      std::lock_guard<std::mutex> lock(state_->mu);
      auto it = state_->memo.find(s);
      if (it != state_->memo.end()) return it->second;
    }
    const double value = (*evaluator_)(s);
    state_->calls.fetch_add(1, std::memory_order_relaxed);
    if (memoize_) {
      std::lock_guard<std::mutex> lock(state_->mu);
      state_->memo.emplace(s, value);
    }
    return value;
  }

  int size() const { return ground_.size(); }
  const GroundSet& ground() const { return ground_; }
  bool memoized() const { return memoize_; }

  // Evaluator invocations so far; cache hits are not counted.
  int64_t calls() const { return state_->calls.load(std::memory_order_relaxed); }

  // Same function with a fresh cache and a zeroed call counter.
  SetFunctionOracle Fork() const { return SetFunctionOracle(ground_, evaluator_, memoize_); }

  // Same ground set, evaluator wrapped by `wrap`; fresh cache and counter.
  SetFunctionOracle Wrapped(
      const std::function<double(const Evaluator&, const Subset&)>& wrap) const {
    auto inner = evaluator_;
    return SetFunctionOracle(
        ground_, [inner, wrap](const Subset& s) { return wrap(*inner, s); }, memoize_);
  }

  // Looks up the cache but does not store a miss. For sweeps too large to
  // keep resident.
  double EvaluateNoStore(const Subset& s) const {
    if (memoize_) {
      std::lock_guard<std::mutex> lock(state_->mu);
      auto it = state_->memo.find(s);
      if (it != state_->memo.end()) return it->second;
    }
    const double value = (*evaluator_)(s);
    state_->calls.fetch_add(1, std::memory_order_relaxed);
    return value;
  }

  void ClearCache() {
    std::lock_guard<std::mutex> lock(state_->mu);
    state_->memo.clear();
  }

 private:
  struct State {
    std::mutex mu;
    std::unordered_map<Subset, double, SubsetHash> memo;
    std::atomic<int64_t> calls{0};
  };

  SetFunctionOracle(GroundSet ground, std::shared_ptr<const Evaluator> evaluator,
                    bool memoize)
      : ground_(std::move(ground)),
        evaluator_(std::move(evaluator)),
        memoize_(memoize),
        state_(std::make_unique<State>()) {}

  GroundSet ground_;
  std::shared_ptr<const Evaluator> evaluator_;
  bool memoize_;
  std::unique_ptr<State> state_;
};

// f(S u {e}) - f(S).
inline double MarginalGain(const SetFunctionOracle& f, int e, const Subset& s) {
  if (e < 0 || e >= f.size()) {
    Fail(ErrorCode::kOutOfRange, "element " + std::to_string(e) + " out of range");
  }
  if (s.universe_size() != f.size()) Fail(ErrorCode::kOutOfRange, "subset universe mismatch");
  if (s.Contains(e)) {
    Fail(ErrorCode::kElementInSet, "element " + std::to_string(e) + " already in " + s.ToString());
  }
  return f(s.With(e)) - f(s);
}

// f(S) = sum of w_i over i in S.
inline SetFunctionOracle MakeModular(std::vector<double> weights, bool memoize = true) {
  const int n = static_cast<int>(weights.size());
  return SetFunctionOracle(
      n,
      [w = std::move(weights)](const Subset& s) {
        double total = 0.0;
        s.ForEach([&](int e) { total += w[e]; });
        return total;
      },
      memoize);
}

// All 2^N values indexed by bitmask. Costs 2^N evaluator calls on a cold
// cache; above N = 16 the values are not added to the cache.
inline std::vector<double> ValueTable(const SetFunctionOracle& f) {
  const int n = f.size();
  if (n > 30) Fail(ErrorCode::kTooLarge, "value table needs N <= 30");
  std::vector<double> table(std::size_t{1} << n);
  for (uint64_t mask = 0; mask < table.size(); ++mask) {
    const Subset s = Subset::FromMask(n, mask);
    table[mask] = n <= 16 ? f(s) : f.EvaluateNoStore(s);
  }
  return table;
}

}  // namespace submod
