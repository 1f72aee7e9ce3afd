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
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "submod/errors.hpp"
#include "submod/subset.hpp"
#include "submod/verify.hpp"

namespace submod {

struct UniformMatroid {
  int rank = 0;
};

// Disjoint blocks with per-block caps. Elements outside every block are
// unconstrained.
struct PartitionMatroid {
  std::vector<std::vector<int>> blocks;
  std::vector<int> caps;
};

// Ground set = edge list; independent sets are forests.
struct GraphicMatroid {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

// Independent sets listed explicitly. Test-only; no axioms are assumed.
struct ExplicitFamily {
  std::vector<Subset> independent;
};

class Matroid {
 public:
  using Kind = std::variant<UniformMatroid, PartitionMatroid, GraphicMatroid, ExplicitFamily>;

  static Matroid Uniform(int n, int rank) {
    if (rank < 0) Fail(ErrorCode::kBadParams, "uniform rank must be >= 0");
    return Matroid(n, UniformMatroid{rank});
  }

  static Matroid Partition(int n, std::vector<std::vector<int>> blocks, std::vector<int> caps) {
    if (blocks.size() != caps.size()) Fail(ErrorCode::kBadParams, "one cap per block");
    std::vector<int> owner(static_cast<std::size_t>(std::max(n, 0)), -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (int e : blocks[b]) {
        if (e < 0 || e >= n) Fail(ErrorCode::kOutOfRange, "block element out of range");
        if (owner[e] != -1) Fail(ErrorCode::kBadParams, "partition blocks must be disjoint");
        owner[e] = static_cast<int>(b);
      }
      if (caps[b] < 0 || caps[b] > static_cast<int>(blocks[b].size())) {
        Fail(ErrorCode::kBadParams, "caps must satisfy 0 <= b_i <= |C_i|");
      }
    }
    Matroid m(n, PartitionMatroid{std::move(blocks), std::move(caps)});
    m.block_of_ = std::move(owner);
    return m;
  }

  static Matroid Graphic(int num_vertices, std::vector<std::pair<int, int>> edges) {
    for (const auto& [u, v] : edges) {
      if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices) {
        Fail(ErrorCode::kOutOfRange, "edge endpoint out of range");
      }
    }
    const int n = static_cast<int>(edges.size());
    return Matroid(n, GraphicMatroid{num_vertices, std::move(edges)});
  }

  static Matroid Explicit(int n, std::vector<Subset> independent) {
    for (const Subset& s : independent) {
      if (s.universe_size() != n) Fail(ErrorCode::kOutOfRange, "family member over wrong ground set");
    }
    return Matroid(n, ExplicitFamily{std::move(independent)});
  }

  int size() const { return n_; }
  const Kind& kind() const { return kind_; }
  bool is_uniform() const { return std::holds_alternative<UniformMatroid>(kind_); }
  bool is_partition() const { return std::holds_alternative<PartitionMatroid>(kind_); }
  bool is_graphic() const { return std::holds_alternative<GraphicMatroid>(kind_); }

  // Block index of e in a partition matroid, -1 if unconstrained.
  int BlockOf(int e) const { return block_of_.empty() ? -1 : block_of_[e]; }

  bool IsIndependent(const Subset& s) const {
    if (s.universe_size() != n_) Fail(ErrorCode::kOutOfRange, "subset over wrong ground set");
    return std::visit([&](const auto& k) { return Independent(k, s); }, kind_);
  }

  // Size of a largest independent subset of S, by greedy augmentation in
  // index order.
  int Rank(const Subset& s) const {
    if (s.universe_size() != n_) Fail(ErrorCode::kOutOfRange, "subset over wrong ground set");
    if (const auto* g = std::get_if<GraphicMatroid>(&kind_)) {
      // Forest rank = |V| - number of components in (V, S).
      UnionFind uf(g->num_vertices);
      int rank = 0;
      s.ForEach([&](int e) {
        if (uf.Unite(g->edges[e].first, g->edges[e].second)) ++rank;
      });
      return rank;
    }
    Subset built(n_);
    int rank = 0;
    s.ForEach([&](int e) {
      built.Insert(e);
      if (IsIndependent(built)) {
        ++rank;
      } else {
        built.Erase(e);
      }
    });
    return rank;
  }

 private:
  struct UnionFind {
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
      std::iota(parent.begin(), parent.end(), 0);
    }
    int Find(int x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    }
    // False if u and v were already connected.
    bool Unite(int u, int v) {
      u = Find(u);
      v = Find(v);
      if (u == v) return false;
      parent[std::max(u, v)] = std::min(u, v);
      return true;
    }
    std::vector<int> parent;
  };

  Matroid(int n, Kind kind) : n_(n), kind_(std::move(kind)) {
    if (n < 0) Fail(ErrorCode::kBadParams, "negative ground-set size");
  }

  bool Independent(const UniformMatroid& u, const Subset& s) const { return s.Count() <= u.rank; }

  bool Independent(const PartitionMatroid& p, const Subset& s) const {
    std::vector<int> used(p.blocks.size(), 0);
    bool ok = true;
    s.ForEach([&](int e) {
      const int b = block_of_[e];
      if (b >= 0 && ++used[b] > p.caps[b]) ok = false;
    });
    return ok;
  }

  bool Independent(const GraphicMatroid& g, const Subset& s) const {
    UnionFind uf(g.num_vertices);
    bool acyclic = true;
    s.ForEach([&](int e) {
      if (acyclic && !uf.Unite(g.edges[e].first, g.edges[e].second)) acyclic = false;
    });
    return acyclic;
  }

  bool Independent(const ExplicitFamily& f, const Subset& s) const {
    for (const Subset& member : f.independent) {
      if (member == s) return true;
    }
    return false;
  }

  int n_ = 0;
  Kind kind_;
  std::vector<int> block_of_;
};

struct MatroidAxiomReport {
  bool valid = true;
  enum class Violation { kNone, kEmptySetDependent, kDownwardClosure, kExchange };
  Violation violation = Violation::kNone;
  // Downward closure: `larger` is independent, `smaller` (a subset) is not.
  // Exchange: no e in larger \ smaller keeps smaller + e independent.
  std::optional<Subset> larger;
  std::optional<Subset> smaller;

  std::string Describe() const {
    switch (violation) {
      case Violation::kNone: return "matroid axioms hold";
      case Violation::kEmptySetDependent: return "empty set is not independent";
      case Violation::kDownwardClosure:
        return "downward closure fails: " + larger->ToString() + " independent but subset " +
               smaller->ToString() + " is not";
      case Violation::kExchange:
        return "exchange fails: no element of " + larger->ToString() + " extends " +
               smaller->ToString();
    }
    return "";
  }
};

// Exhaustive check of downward closure and the exchange property.
//
// Closure is checked on single-element removals and exchange on pairs with
// |B| = |A| + 1; under downward closure both are equivalent to the full
// axioms.
inline MatroidAxiomReport VerifyMatroidAxioms(const Matroid& m, int limit = BruteForceLimit()) {
  const int n = m.size();
  if (n > limit) Fail(ErrorCode::kTooLarge, "N exceeds brute-force limit");
  const uint64_t count = uint64_t{1} << n;
  std::vector<char> indep(count);
  for (uint64_t mask = 0; mask < count; ++mask) {
    indep[mask] = m.IsIndependent(Subset::FromMask(n, mask)) ? 1 : 0;
  }

  MatroidAxiomReport report;
  if (!indep[0]) {
    report.valid = false;
    report.violation = MatroidAxiomReport::Violation::kEmptySetDependent;
    return report;
  }
  for (uint64_t b = 0; b < count; ++b) {
    if (!indep[b]) continue;
    for (int e = 0; e < n; ++e) {
      const uint64_t bit = uint64_t{1} << e;
      if ((b & bit) && !indep[b & ~bit]) {
        report.valid = false;
        report.violation = MatroidAxiomReport::Violation::kDownwardClosure;
        report.larger = Subset::FromMask(n, b);
        report.smaller = Subset::FromMask(n, b & ~bit);
        return report;
      }
    }
  }
  for (uint64_t a = 0; a < count; ++a) {
    if (!indep[a]) continue;
    const int size_a = std::popcount(a);
    for (uint64_t b = 0; b < count; ++b) {
      if (!indep[b] || std::popcount(b) != size_a + 1) continue;
      bool extended = false;
      for (int e = 0; e < n && !extended; ++e) {
        const uint64_t bit = uint64_t{1} << e;
        if ((b & bit) && !(a & bit) && indep[a | bit]) extended = true;
      }
      if (!extended) {
        report.valid = false;
        report.violation = MatroidAxiomReport::Violation::kExchange;
        report.larger = Subset::FromMask(n, b);
        report.smaller = Subset::FromMask(n, a);
        return report;
      }
    }
  }
  return report;
}

// Per-element costs with a total budget. Not a matroid.
class Knapsack {
 public:
  Knapsack(std::vector<double> costs, double budget) : costs_(std::move(costs)), budget_(budget) {
    for (double c : costs_) {
      if (!(c > 0)) Fail(ErrorCode::kBadParams, "knapsack costs must be positive");
    }
    if (!(budget_ > 0)) Fail(ErrorCode::kBadParams, "knapsack budget must be positive");
  }

  int size() const { return static_cast<int>(costs_.size()); }
  const std::vector<double>& costs() const { return costs_; }
  double cost(int e) const { return costs_[e]; }
  double budget() const { return budget_; }

  double Cost(const Subset& s) const {
    double total = 0.0;
    s.ForEach([&](int e) { total += costs_[e]; });
    return total;
  }
  bool Fits(double used, int e) const { return costs_[e] <= budget_ - used; }
  bool Feasible(const Subset& s) const { return Cost(s) <= budget_; }

  FeasibilityPredicate Predicate() const {
    return [self = *this](const Subset& s) { return self.Feasible(s); };
  }

 private:
  std::vector<double> costs_;
  double budget_;
};

inline FeasibilityPredicate IndependencePredicate(const Matroid& m) {
  return [&m](const Subset& s) { return m.IsIndependent(s); };
}

}  // namespace submod
