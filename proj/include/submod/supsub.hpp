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

// Maximization of g - h for submodular g and h by iterated modular upper
// bounds on h.

#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "submod/errors.hpp"
#include "submod/maximize.hpp"
#include "submod/oracle.hpp"
#include "submod/subset.hpp"
#include "submod/verify.hpp"

namespace submod {

// m(X) = constant + sum_{e in X} weights[e].
struct ModularFunction {
  double constant = 0.0;
  std::vector<double> weights;

  double operator()(const Subset& x) const {
    double v = constant;
    x.ForEach([&](int e) { v += weights[e]; });
    return v;
  }
};

// J(X) = h(S) - sum_{e in S\X} h(e | S - e) + sum_{e in X\S} h(e | empty).
// Elements of S weigh h(e | S - e), the others h(e | empty); the constant
// absorbs h(S) - sum_{e in S} h(e | S - e) so that J(S) = h(S).
inline ModularFunction ModularUpperBound(const SetFunctionOracle& h, const Subset& s) {
  const int n = h.size();
  const double h_empty = h(Subset(n));
  const double h_s = h(s);
  ModularFunction m{h_s, std::vector<double>(static_cast<std::size_t>(n), 0.0)};
  for (int e = 0; e < n; ++e) {
    if (s.Contains(e)) {
      m.weights[e] = h_s - h(s.Without(e));
      m.constant -= m.weights[e];
    } else {
      m.weights[e] = h(Subset(n).With(e)) - h_empty;
    }
  }
  return m;
}

// f = g - h with g, h submodular.
struct DsDecomposition {
  SetFunctionOracle g;
  SetFunctionOracle h;
  // Curvature shift of an automatic decomposition; 0 when user supplied.
  double c = 0.0;
  // Both parts passed the exhaustive submodularity check.
  bool certified = false;

  double operator()(const Subset& s) const { return g(s) - h(s); }
  int size() const { return g.size(); }
};

// f = (f + h) - h with h(S) = c (N|S| - |S|(|S|-1)/2), where c is the largest
// violation f(e | A + e') - f(e | A) over all A, e' != e outside A (0 for
// submodular f). Violations within the comparison tolerance are ignored.
inline DsDecomposition DsDecompose(const SetFunctionOracle& f) {
  const int n = f.size();
  if (n > BruteForceLimit()) Fail(ErrorCode::kTooLarge, "N exceeds the brute-force limit");
  const std::vector<double> v = ValueTable(f);
  double c = 0.0;
  const uint64_t full = n == 0 ? 0 : (uint64_t{1} << n) - 1;
  for (uint64_t a = 0; a <= full; ++a) {
    for (int e = 0; e < n; ++e) {
      if ((a >> e) & 1) continue;
      const uint64_t ae = a | (uint64_t{1} << e);
      const double gain = v[ae] - v[a];
      for (int e2 = 0; e2 < n; ++e2) {
        if (e2 == e || ((a >> e2) & 1)) continue;
        const uint64_t a2 = a | (uint64_t{1} << e2);
        const double gain2 = v[a2 | (uint64_t{1} << e)] - v[a2];
        if (gain2 - gain > Tolerance(gain2, gain)) c = std::max(c, gain2 - gain);
      }
    }
  }
  auto shift = [c, n](const Subset& s) {
    const double k = s.Count();
    return c * (n * k - k * (k - 1) / 2);
  };
  DsDecomposition ds{f.Wrapped([shift](const SetFunctionOracle::Evaluator& inner, const Subset& s) {
                       return inner(s) + shift(s);
                     }),
                     SetFunctionOracle(n, shift), c, false};
  ds.certified = VerifySetFunction(ds.g).submodular && VerifySetFunction(ds.h).submodular;
  return ds;
}

enum class SupSubInit { kEmpty, kGreedyOnF };

struct SupSubOptions {
  int max_iterations = 50;
  SupSubInit init = SupSubInit::kEmpty;
  // Solve each surrogate exactly over |X| = K (N within the brute-force limit).
  bool exhaustive_inner = false;
};

struct SupSubResult {
  SolveResult result;
  // f at each accepted iterate of size K, in order.
  std::vector<double> history;
  std::vector<Subset> iterates;
  // Accepted moves.
  int iterations = 0;
  bool converged = false;
  bool cycled = false;
};

// S_{k+1} = argmax_{|X| = K} g(X) - J_{S_k}(X), solved by greedy (or
// exhaustively). A move is accepted only if it strictly raises the surrogate
// value above f(S_k) = g(S_k) - J_{S_k}(S_k); since J dominates h this makes
// f nondecreasing along the history. The first move away from an empty
// initializer is always taken because the empty set is not of size K. Stops
// on a repeated set, a rejected move, or after max_iterations moves.
inline SupSubResult SupSubMaximize(const DsDecomposition& ds, int k, const SupSubOptions& options = {}) {
  const int n = ds.size();
  internal::CheckK(k, n);
  const int64_t calls_before = ds.g.calls() + ds.h.calls();
  SupSubResult out;

  const SetFunctionOracle f(n, [&ds](const Subset& s) { return ds(s); });
  Subset current(n);
  bool feasible = false;
  if (options.init == SupSubInit::kGreedyOnF) {
    current = GreedyCardinality(f, k).selected;
    feasible = true;
    out.iterates.push_back(current);
    out.history.push_back(f(current));
  }

  for (int it = 0; it < options.max_iterations; ++it) {
    const ModularFunction bound = ModularUpperBound(ds.h, current);
    const SetFunctionOracle surrogate(n, [&ds, bound](const Subset& x) { return ds.g(x) - bound(x); });
    Subset next;
    if (options.exhaustive_inner) {
      next = BruteForceOptimum(surrogate, Sense::kMax, [k](const Subset& s) { return s.Count() == k; }).set;
    } else {
      next = GreedyCardinality(surrogate, k).selected;
    }
    if (next == current) {
      out.converged = true;
      break;
    }
    if (feasible) {
      const double here = surrogate(current);
      const double there = surrogate(next);
      if (!(there > here + Tolerance(there, here))) {
        out.converged = true;
        break;
      }
    }
    if (out.iterates.size() >= 2 && next == out.iterates[out.iterates.size() - 2]) {
      // Two-cycle: keep whichever of the pair has the higher f.
      out.cycled = true;
      if (f(next) > f(current)) current = next;
      break;
    }
    current = next;
    feasible = true;
    ++out.iterations;
    out.iterates.push_back(current);
    out.history.push_back(f(current));
  }

  out.result.solver = "supsub";
  out.result.selected = current;
  out.result.value = f(current);
  out.result.guarantee = 0.0;
  out.result.oracle_calls = ds.g.calls() + ds.h.calls() - calls_before;
  return out;
}

}  // namespace submod
