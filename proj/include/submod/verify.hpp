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

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "submod/errors.hpp"
#include "submod/oracle.hpp"
#include "submod/subset.hpp"

namespace submod {

inline constexpr int kDefaultBruteForceLimit = 14;

// Limit on N for exhaustive routines. SUBMOD_BRUTE_FORCE_LIMIT overrides the
// default of 14.
inline int BruteForceLimit() {
  if (const char* env = std::getenv("SUBMOD_BRUTE_FORCE_LIMIT")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 30) return static_cast<int>(v);
  }
  return kDefaultBruteForceLimit;
}

// (A, B, e) with A subset of B and e outside B. For monotonicity witnesses
// B = A u {e}.
struct Witness {
  Subset a;
  Subset b;
  int e = -1;

  std::string ToString() const {
    return "(A=" + a.ToString() + ", B=" + b.ToString() + ", e=" + std::to_string(e) + ")";
  }
};

struct PropertyReport {
  bool normalized = false;
  bool monotone = false;
  bool submodular = false;
  bool supermodular = false;
  bool modular = false;
  double empty_value = 0.0;
  // Present iff the matching flag is false.
  std::optional<Witness> monotone_witness;
  std::optional<Witness> submodular_witness;
  std::optional<Witness> supermodular_witness;
};

// Exhaustive check of normalization, monotonicity and the diminishing-returns
// inequality f(e|A) >= f(e|B) over every A subset of B, e not in B.
//
// Triples are visited with A ascending by bitmask, then B (supersets of A)
// ascending, then e ascending; the first violation found is the witness.
inline PropertyReport VerifySetFunction(const SetFunctionOracle& f, int limit = BruteForceLimit()) {
  const int n = f.size();
  if (n > limit) {
    Fail(ErrorCode::kTooLarge, "N=" + std::to_string(n) + " exceeds brute-force limit " +
                                   std::to_string(limit));
  }
  const std::vector<double> v = ValueTable(f);
  const uint64_t full = (uint64_t{1} << n) - 1;

  PropertyReport report;
  report.empty_value = v[0];
  report.normalized = std::abs(v[0]) <= Tolerance();

  for (uint64_t a = 0; a <= full && !report.monotone_witness; ++a) {
    for (int e = 0; e < n; ++e) {
      const uint64_t bit = uint64_t{1} << e;
      if (a & bit) continue;
      if (v[a] > v[a | bit] + Tolerance(v[a], v[a | bit])) {
        report.monotone_witness =
            Witness{Subset::FromMask(n, a), Subset::FromMask(n, a | bit), e};
        break;
      }
    }
  }

  for (uint64_t a = 0; a <= full; ++a) {
    if (report.submodular_witness && report.supermodular_witness) break;
    const uint64_t free = full & ~a;
    // Supersets of a in ascending order: b = a | t for t a submask of free.
    uint64_t t = 0;
    while (true) {
      const uint64_t b = a | t;
      const uint64_t outside = full & ~b;
      for (int e = 0; e < n; ++e) {
        const uint64_t bit = uint64_t{1} << e;
        if (!(outside & bit)) continue;
        const double gain_a = v[a | bit] - v[a];
        const double gain_b = v[b | bit] - v[b];
        const double tol = Tolerance(std::max(std::abs(v[a | bit]), std::abs(v[a])),
                                     std::max(std::abs(v[b | bit]), std::abs(v[b])));
        if (!report.submodular_witness && gain_a < gain_b - tol) {
          report.submodular_witness = Witness{Subset::FromMask(n, a), Subset::FromMask(n, b), e};
        }
        if (!report.supermodular_witness && gain_a > gain_b + tol) {
          report.supermodular_witness = Witness{Subset::FromMask(n, a), Subset::FromMask(n, b), e};
        }
      }
      if (t == free) break;
      t = (t - free) & free;  // next submask of `free` in increasing order
    }
  }

  report.monotone = !report.monotone_witness.has_value();
  report.submodular = !report.submodular_witness.has_value();
  report.supermodular = !report.supermodular_witness.has_value();
  report.modular = report.submodular && report.supermodular;
  return report;
}

enum class Sense { kMax, kMin };

struct Optimum {
  Subset set;
  double value = 0.0;
};

using FeasibilityPredicate = std::function<bool(const Subset&)>;

// Exact optimum over all feasible subsets; ties go to the smallest bitmask.
inline Optimum BruteForceOptimum(const SetFunctionOracle& f, Sense sense,
                                 const FeasibilityPredicate& feasible = nullptr,
                                 int limit = BruteForceLimit()) {
  const int n = f.size();
  if (n > limit) {
    Fail(ErrorCode::kTooLarge, "N=" + std::to_string(n) + " exceeds brute-force limit " +
                                   std::to_string(limit));
  }
  std::optional<Optimum> best;
  const uint64_t count = uint64_t{1} << n;
  for (uint64_t mask = 0; mask < count; ++mask) {
    Subset s = Subset::FromMask(n, mask);
    if (feasible && !feasible(s)) continue;
    const double value = f(s);
    const bool better = !best || (sense == Sense::kMax ? value > best->value : value < best->value);
    if (better) best = Optimum{std::move(s), value};
  }
  if (!best) Fail(ErrorCode::kInfeasible, "no subset satisfies the feasibility predicate");
  return *best;
}

inline FeasibilityPredicate AtMostK(int k) {
  return [k](const Subset& s) { return s.Count() <= k; };
}

}  // namespace submod
