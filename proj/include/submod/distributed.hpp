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

// Two-round distributed greedy over simulated machines.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "submod/errors.hpp"
#include "submod/maximize.hpp"
#include "submod/oracle.hpp"
#include "submod/random.hpp"
#include "submod/subset.hpp"

namespace submod {

enum class PartitionStrategy { kRoundRobin, kRandom };

struct DistributedConfig {
  int machines = 1;
  int k = 1;
  PartitionStrategy strategy = PartitionStrategy::kRoundRobin;
  uint64_t seed = 0;
  // Run round-one machines on separate threads.
  bool parallel = true;
};

// Disjoint cover of {0..n-1} by cfg.machines parts. Random partitions deal a
// seeded shuffle round-robin, so part sizes differ by at most one.
inline std::vector<Subset> PartitionGroundSet(int n, const DistributedConfig& cfg) {
  if (cfg.machines < 1) Fail(ErrorCode::kBadParams, "need at least one machine");
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  if (cfg.strategy == PartitionStrategy::kRandom) {
    Rng rng(cfg.seed);
    rng.Shuffle(order);
  }
  std::vector<Subset> parts(static_cast<std::size_t>(cfg.machines), Subset(n));
  for (int i = 0; i < n; ++i) parts[static_cast<std::size_t>(i % cfg.machines)].Insert(order[i]);
  return parts;
}

struct DistributedResult {
  // Best of the local sets and the merged set.
  SolveResult result;
  std::vector<Subset> parts;
  std::vector<SolveResult> local;
  SolveResult central;
  // Index of the winner: a machine, or machines() for the central set.
  int winner = 0;
  int syncs = 0;
  // Union of the sets each machine evaluated in round one.
  std::vector<Subset> touched;
};

// Round one runs greedy on each part with its own oracle fork; round two runs
// lazy greedy over the union of the local picks. Ties in the final argmax go
// to the lowest machine, then to the central set.
inline DistributedResult GreediTwoRound(const SetFunctionOracle& f, const DistributedConfig& cfg) {
  const int n = f.size();
  internal::CheckK(cfg.k, n);
  DistributedResult out;
  out.parts = PartitionGroundSet(n, cfg);
  const int m = cfg.machines;
  out.local.resize(static_cast<std::size_t>(m));
  out.touched.assign(static_cast<std::size_t>(m), Subset(n));

  std::vector<SetFunctionOracle> views;
  std::vector<std::shared_ptr<std::mutex>> locks;
  views.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    auto mu = std::make_shared<std::mutex>();
    Subset* touched = &out.touched[static_cast<std::size_t>(i)];
    views.push_back(f.Wrapped([mu, touched](const SetFunctionOracle::Evaluator& inner, const Subset& s) {
      {
        std::lock_guard<std::mutex> lock(*mu);
        *touched = touched->Union(s);
      }
      return inner(s);
    }));
    locks.push_back(std::move(mu));
  }

  auto run_machine = [&](int i) {
    out.local[i] = GreedyCardinality(views[i], cfg.k, {.candidates = out.parts[i]});
    out.local[i].solver = "greedi-local";
  };
  if (cfg.parallel && m > 1) {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(m));
    std::vector<std::thread> workers;
    for (int i = 0; i < m; ++i) {
      workers.emplace_back([&, i]() {
        try {
          run_machine(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  } else {
    for (int i = 0; i < m; ++i) run_machine(i);
  }
  out.syncs = 1;

  Subset merged(n);
  for (const auto& r : out.local) merged = merged.Union(r.selected);
  const SetFunctionOracle central_view = f.Fork();
  out.central = LazyGreedy(central_view, cfg.k, {.candidates = merged});
  out.central.solver = "greedi-central";

  out.winner = 0;
  for (int i = 1; i <= m; ++i) {
    const double v = i < m ? out.local[i].value : out.central.value;
    const double best = out.winner < m ? out.local[out.winner].value : out.central.value;
    if (v > best) out.winner = i;
  }
  out.result = out.winner < m ? out.local[out.winner] : out.central;
  out.result.solver = "greedi";
  out.result.guarantee = kOneMinusInvE / std::sqrt(static_cast<double>(std::max(1, std::min(m, cfg.k))));
  int64_t calls = out.central.oracle_calls;
  for (const auto& r : out.local) calls += r.oracle_calls;
  out.result.oracle_calls = calls;
  return out;
}

}  // namespace submod
