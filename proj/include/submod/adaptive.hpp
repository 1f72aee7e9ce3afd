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

// Adaptive sequence selection on weighted digraphs whose nodes carry a
// visited/rejected state revealed after selection.
//
// Utilities act on edge sets: a sequence sigma induces the edges
// (sigma_a, sigma_b) with a < b, and an edge contributes only when both of its
// endpoints are visited in the realization.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "submod/errors.hpp"
#include "submod/extensions.hpp"
#include "submod/oracle.hpp"
#include "submod/random.hpp"
#include "submod/subset.hpp"

namespace submod {

enum class NodeState : int8_t { kUnknown = -1, kRejected = 0, kVisited = 1 };

using NodeStates = std::vector<NodeState>;

struct Edge {
  int from = 0;
  int to = 0;
  double weight = 0.0;
};

class StateGraph {
 public:
  explicit StateGraph(int n = 0) : n_(n), in_degree_(static_cast<std::size_t>(n), 0) {
    if (n < 0) Fail(ErrorCode::kOutOfRange, "negative vertex count");
  }

  int size() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_.at(static_cast<std::size_t>(id)); }

  // Returns the new edge id. Ids follow insertion order.
  int AddEdge(int from, int to, double weight) {
    if (from < 0 || from >= n_ || to < 0 || to >= n_) Fail(ErrorCode::kOutOfRange, "edge endpoint out of range");
    if (from == to) Fail(ErrorCode::kBadParams, "self-loops are not allowed");
    if (!(weight >= 0.0 && weight <= 1.0)) Fail(ErrorCode::kBadParams, "edge weight outside [0, 1]");
    if (FindEdge(from, to) >= 0) Fail(ErrorCode::kBadParams, "duplicate edge");
    edges_.push_back({from, to, weight});
    ++in_degree_[static_cast<std::size_t>(to)];
    return num_edges() - 1;
  }

  // Edge id or -1.
  int FindEdge(int from, int to) const {
    for (int id = 0; id < num_edges(); ++id) {
      if (edges_[id].from == from && edges_[id].to == to) return id;
    }
    return -1;
  }

  int InDegree(int v) const { return in_degree_.at(static_cast<std::size_t>(v)); }

  int MaxInDegree() const {
    int d = 0;
    for (int x : in_degree_) d = std::max(d, x);
    return d;
  }

  // E(sigma) as a set of edge ids.
  Subset InducedEdges(std::span<const int> sequence) const {
    std::vector<int> pos(static_cast<std::size_t>(n_), -1);
    for (std::size_t k = 0; k < sequence.size(); ++k) {
      const int v = sequence[k];
      if (v < 0 || v >= n_) Fail(ErrorCode::kOutOfRange, "sequence node out of range");
      if (pos[v] >= 0) Fail(ErrorCode::kBadParams, "sequence repeats a node");
      pos[v] = static_cast<int>(k);
    }
    Subset out(num_edges());
    for (int id = 0; id < num_edges(); ++id) {
      const Edge& e = edges_[id];
      if (pos[e.from] >= 0 && pos[e.to] >= 0 && pos[e.from] < pos[e.to]) out.Insert(id);
    }
    return out;
  }

  // Endpoints of the given edges.
  std::vector<int> Endpoints(const Subset& edge_ids) const {
    std::vector<bool> seen(static_cast<std::size_t>(n_), false);
    edge_ids.ForEach([&](int id) {
      seen[edges_[id].from] = true;
      seen[edges_[id].to] = true;
    });
    std::vector<int> out;
    for (int v = 0; v < n_; ++v) {
      if (seen[v]) out.push_back(v);
    }
    return out;
  }

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<int> in_degree_;
};

// Independent acceptance: node v is visited with probability visit_prob[v].
struct RealizationModel {
  std::vector<double> visit_prob;

  static RealizationModel AllVisited(int n) { return {std::vector<double>(static_cast<std::size_t>(n), 1.0)}; }

  void Validate(int n) const {
    if (static_cast<int>(visit_prob.size()) != n) Fail(ErrorCode::kBadParams, "realization model size mismatch");
    for (double p : visit_prob) {
      if (!(p >= 0.0 && p <= 1.0)) Fail(ErrorCode::kBadParams, "visit probability outside [0, 1]");
    }
  }

  bool Variable(int v) const { return visit_prob[v] > 0.0 && visit_prob[v] < 1.0; }

  // The forced state of a non-variable node.
  NodeState Fixed(int v) const { return visit_prob[v] >= 1.0 ? NodeState::kVisited : NodeState::kRejected; }

  double Probability(int v, NodeState s) const {
    return s == NodeState::kVisited ? visit_prob[v] : 1.0 - visit_prob[v];
  }
};

// h(E, phi). Implementations may read only the states of endpoints of E.
using EdgeUtility = std::function<double(const StateGraph&, const Subset&, std::span<const NodeState>)>;

inline bool EdgeActive(const Edge& e, std::span<const NodeState> states) {
  return states[e.from] == NodeState::kVisited && states[e.to] == NodeState::kVisited;
}

// Probabilistic coverage: sum_j [1 - prod over active (i, j) of (1 - w_ij)].
inline double CoverageUtility(const StateGraph& g, const Subset& edges, std::span<const NodeState> states) {
  std::vector<double> miss(static_cast<std::size_t>(g.size()), 1.0);
  edges.ForEach([&](int id) {
    const Edge& e = g.edge(id);
    if (EdgeActive(e, states)) miss[e.to] *= 1.0 - e.weight;
  });
  double h = 0.0;
  for (double m : miss) h += 1.0 - m;
  return h;
}

// Coverage of an explicit edge list with every node visited.
inline double CoverageUtility(const StateGraph& g, const std::vector<std::pair<int, int>>& edges) {
  Subset ids(g.num_edges());
  for (const auto& [from, to] : edges) {
    const int id = g.FindEdge(from, to);
    if (id < 0) Fail(ErrorCode::kUnknownEdge, "edge (" + std::to_string(from) + ", " + std::to_string(to) + ") not in graph");
    ids.Insert(id);
  }
  const NodeStates all(static_cast<std::size_t>(g.size()), NodeState::kVisited);
  return CoverageUtility(g, ids, all);
}

inline EdgeUtility MakeCoverageUtility() {
  return [](const StateGraph& g, const Subset& edges, std::span<const NodeState> states) {
    return CoverageUtility(g, edges, states);
  };
}

// Sum of the weights of active edges.
inline EdgeUtility MakeModularEdgeUtility() {
  return [](const StateGraph& g, const Subset& edges, std::span<const NodeState> states) {
    double h = 0.0;
    edges.ForEach([&](int id) {
      if (EdgeActive(g.edge(id), states)) h += g.edge(id).weight;
    });
    return h;
  };
}

// Selected edges plus the revealed node states.
struct PartialRealization {
  Subset edges;
  NodeStates states;

  static PartialRealization Empty(const StateGraph& g) {
    return {Subset(g.num_edges()), NodeStates(static_cast<std::size_t>(g.size()), NodeState::kUnknown)};
  }
};

// psi is contained in psi2: edge containment and agreement on every node
// psi knows.
inline bool IsSubRealization(const PartialRealization& psi, const PartialRealization& psi2) {
  if (!psi.edges.IsSubsetOf(psi2.edges)) return false;
  for (std::size_t v = 0; v < psi.states.size(); ++v) {
    if (psi.states[v] != NodeState::kUnknown && psi.states[v] != psi2.states[v]) return false;
  }
  return true;
}

struct GainOptions {
  // Completions are enumerated when at most this many relevant nodes are unknown.
  int max_exact_unknown = 20;
  // Monte Carlo sample count above the exact limit; 0 disables sampling.
  int mc_samples = 10000;
  uint64_t seed = 0;
  bool force_monte_carlo = false;
};

// Delta(A | psi) = E[h(E_psi + A, phi) - h(E_psi, phi) | psi] over completions
// of the unknown endpoint states.
inline Estimate ConditionalGain(const StateGraph& g, const EdgeUtility& h, const RealizationModel& model,
                                const Subset& a, const PartialRealization& psi, const GainOptions& options = {}) {
  if (a.universe_size() != g.num_edges() || psi.edges.universe_size() != g.num_edges()) {
    Fail(ErrorCode::kOutOfRange, "edge set universe mismatch");
  }
  if (a.Intersects(psi.edges)) Fail(ErrorCode::kOverlap, "A overlaps the realized edge set");
  if (a.Empty()) return {};
  const Subset after = psi.edges.Union(a);

  NodeStates states = psi.states;
  std::vector<int> unknown;
  for (int v : g.Endpoints(after)) {
    if (states[v] != NodeState::kUnknown) continue;
    if (model.Variable(v)) {
      unknown.push_back(v);
    } else {
      states[v] = model.Fixed(v);
    }
  }
  auto difference = [&]() { return h(g, after, states) - h(g, psi.edges, states); };

  const int u = static_cast<int>(unknown.size());
  if (!options.force_monte_carlo && u <= options.max_exact_unknown) {
    double total = 0.0;
    for (uint64_t mask = 0; mask < (uint64_t{1} << u); ++mask) {
      double prob = 1.0;
      for (int k = 0; k < u; ++k) {
        states[unknown[k]] = (mask >> k) & 1 ? NodeState::kVisited : NodeState::kRejected;
        prob *= model.Probability(unknown[k], states[unknown[k]]);
      }
      if (prob > 0.0) total += prob * difference();
    }
    return {total, 0.0};
  }
  if (options.mc_samples <= 0) Fail(ErrorCode::kTooLargeForExact, "too many unknown nodes for exact expectation");
  Rng rng(options.seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int s = 0; s < options.mc_samples; ++s) {
    for (int v : unknown) states[v] = rng.Bernoulli(model.visit_prob[v]) ? NodeState::kVisited : NodeState::kRejected;
    const double d = difference();
    sum += d;
    sum_sq += d * d;
  }
  const double count = options.mc_samples;
  const double mean = sum / count;
  const double var = count > 1 ? std::max(0.0, (sum_sq - count * mean * mean) / (count - 1)) : 0.0;
  return {mean, std::sqrt(var / count)};
}

struct WeakAdaptiveReport {
  double gamma = 1.0;
  // Minimizing configuration when gamma < 1.
  std::optional<PartialRealization> psi;
  std::optional<PartialRealization> psi_prime;
  std::optional<Subset> a;
  int64_t configurations = 0;
};

inline constexpr int kWeakAdaptiveMaxNodes = 8;
inline constexpr int kWeakAdaptiveMaxEdges = 20;
inline constexpr double kWeakAdaptiveMaxWork = 2e9;

// Exact min over psi <= psi', nonempty A disjoint from E_psi' with |A| <= r of
// sum_{e in A} Delta(e | psi) / Delta(A | psi'). A zero denominator with a
// zero numerator counts as 1; with a positive numerator it is skipped.
// r <= 0 means no size limit.
inline WeakAdaptiveReport WeakAdaptiveRatio(const StateGraph& g, const EdgeUtility& h, const RealizationModel& model,
                                            int r = 0) {
  const int n = g.size();
  const int m = g.num_edges();
  model.Validate(n);
  if (n > kWeakAdaptiveMaxNodes || m > kWeakAdaptiveMaxEdges) Fail(ErrorCode::kTooLarge, "graph too large for the exhaustive ratio");
  if (r <= 0 || r > m) r = m;

  // Exact configuration count: every psi' (edge set plus variable endpoint
  // states), every sub-edge-set and every admissible A.
  const uint64_t all = m == 0 ? 0 : (m == 64 ? ~uint64_t{0} : (uint64_t{1} << m) - 1);
  double work = 0.0;
  for (uint64_t bp = 0;; ++bp) {
    int var = 0;
    for (int v : g.Endpoints(Subset::FromMask(m, bp))) var += model.Variable(v) ? 1 : 0;
    const int free = m - std::popcount(bp);
    double a_count = 0.0;
    for (int k = 1, c = 1; k <= std::min(r, free); ++k) {
      c = c * (free - k + 1) / k;
      a_count += c;
    }
    work += std::ldexp(1.0, var + std::popcount(bp)) * a_count;
    if (bp == all) break;
  }
  if (work > kWeakAdaptiveMaxWork) Fail(ErrorCode::kTooLarge, "ratio enumeration exceeds the work limit");

  const GainOptions exact{.max_exact_unknown = 64, .mc_samples = 0};
  WeakAdaptiveReport report;
  // Singleton gains per sub-realization, keyed by edge mask and the visited
  // bits of its variable endpoints.
  std::unordered_map<uint64_t, std::vector<double>> singles;

  for (uint64_t bp = 0;; ++bp) {
    const Subset b_prime = Subset::FromMask(m, bp);
    std::vector<int> var_nodes;
    NodeStates base(static_cast<std::size_t>(n), NodeState::kUnknown);
    for (int v : g.Endpoints(b_prime)) {
      if (model.Variable(v)) {
        var_nodes.push_back(v);
      } else {
        base[v] = model.Fixed(v);
      }
    }
    std::vector<uint64_t> a_masks;
    for (uint64_t am = (all & ~bp); am != 0; am = (am - 1) & (all & ~bp)) {
      if (std::popcount(am) <= r) a_masks.push_back(am);
    }
    std::sort(a_masks.begin(), a_masks.end());

    for (uint64_t st = 0; st < (uint64_t{1} << var_nodes.size()); ++st) {
      PartialRealization psi_prime{b_prime, base};
      for (std::size_t k = 0; k < var_nodes.size(); ++k) {
        psi_prime.states[var_nodes[k]] = (st >> k) & 1 ? NodeState::kVisited : NodeState::kRejected;
      }
      std::vector<double> den(a_masks.size());
      for (std::size_t i = 0; i < a_masks.size(); ++i) {
        den[i] = ConditionalGain(g, h, model, Subset::FromMask(m, a_masks[i]), psi_prime, exact).value;
      }
      // Every sub-realization: edge subset B with states restricted to V(B).
      for (uint64_t b = bp;; b = (b - 1) & bp) {
        PartialRealization psi = PartialRealization::Empty(g);
        psi.edges = Subset::FromMask(m, b);
        for (int v : g.Endpoints(psi.edges)) psi.states[v] = psi_prime.states[v];
        uint64_t key = b;
        int bit = m;
        for (int v : g.Endpoints(psi.edges)) {
          if (!model.Variable(v)) continue;
          if (psi.states[v] == NodeState::kVisited) key |= uint64_t{1} << bit;
          ++bit;
        }
        auto [it, inserted] = singles.try_emplace(key);
        std::vector<double>& single = it->second;
        if (inserted) {
          single.assign(static_cast<std::size_t>(m), 0.0);
          for (int e = 0; e < m; ++e) {
            if (!((b >> e) & 1)) single[e] = ConditionalGain(g, h, model, Subset(m).With(e), psi, exact).value;
          }
        }
        for (std::size_t i = 0; i < a_masks.size(); ++i) {
          ++report.configurations;
          double num = 0.0;
          for (uint64_t am = a_masks[i]; am != 0; am &= am - 1) num += single[std::countr_zero(am)];
          const double tol = Tolerance(num, den[i]);
          double ratio;
          if (den[i] < -tol) Fail(ErrorCode::kNegativeDenominator, "negative conditional gain");
          if (den[i] <= tol) {
            if (num > tol) continue;
            ratio = 1.0;
          } else {
            ratio = num / den[i];
          }
          if (ratio < report.gamma) {
            report.gamma = ratio;
            report.psi = psi;
            report.psi_prime = psi_prime;
            report.a = Subset::FromMask(m, a_masks[i]);
          }
        }
        if (b == 0) break;
      }
    }
    if (bp == all) break;
  }
  return report;
}

// Reveals the state of a node once it joins the sequence.
using StateSampler = std::function<NodeState(int)>;

inline StateSampler RandomSampler(const RealizationModel& model, uint64_t seed) {
  auto rng = std::make_shared<Rng>(seed);
  return [rng, p = model.visit_prob](int v) {
    return rng->Bernoulli(p[v]) ? NodeState::kVisited : NodeState::kRejected;
  };
}

inline StateSampler FixedSampler(NodeStates phi) {
  return [phi = std::move(phi)](int v) { return phi.at(static_cast<std::size_t>(v)); };
}

struct AsgCertificate {
  double gamma = 1.0;
  bool gamma_measured = false;
  int d_in = 0;
  // gamma / (2 d_in + gamma); 0 when undefined.
  double factor = 0.0;
};

// Bound factor for horizon T. Without a supplied gamma it is measured over
// sets of at most T (T - 1) / 2 edges, the most a length-T sequence induces.
inline AsgCertificate CertifyAsg(const StateGraph& g, const EdgeUtility& h, const RealizationModel& model, int horizon,
                                 std::optional<double> gamma = std::nullopt) {
  AsgCertificate c;
  c.d_in = g.MaxInDegree();
  if (gamma) {
    c.gamma = *gamma;
  } else {
    if (g.size() > kWeakAdaptiveMaxNodes || g.num_edges() > kWeakAdaptiveMaxEdges) {
      Fail(ErrorCode::kTooLarge, "instance too large to measure gamma; supply it");
    }
    c.gamma = WeakAdaptiveRatio(g, h, model, std::max(1, horizon * (horizon - 1) / 2)).gamma;
    c.gamma_measured = true;
  }
  const double den = 2.0 * c.d_in + c.gamma;
  c.factor = den > 0 ? c.gamma / den : 0.0;
  return c;
}

struct AsgOptions {
  std::optional<double> gamma;
  bool certify = true;
  GainOptions gain;
};

struct AsgResult {
  std::vector<int> sequence;
  // States revealed for the sequence nodes; unknown elsewhere.
  NodeStates states;
  Subset edges;
  double realized_utility = 0.0;
  std::vector<double> step_gains;
  std::optional<AsgCertificate> certificate;
};

namespace internal {

// Edges gained by appending `added` (in order) after the nodes flagged in `in_seq`.
inline Subset AppendedEdges(const StateGraph& g, const std::vector<bool>& in_seq, std::span<const int> added) {
  Subset out(g.num_edges());
  for (std::size_t k = 0; k < added.size(); ++k) {
    for (int id = 0; id < g.num_edges(); ++id) {
      const Edge& e = g.edge(id);
      if (e.to != added[k]) continue;
      bool before = in_seq[e.from];
      for (std::size_t j = 0; j < k && !before; ++j) before = added[j] == e.from;
      if (before) out.Insert(id);
    }
  }
  return out;
}

}  // namespace internal

// Adaptive sequence greedy. Each step scores every edge (i, j) with j not yet
// in the sequence by the conditional gain of appending its missing endpoints
// (i then j), commits the best (ties to the lowest edge id), and reveals the
// new nodes' states. Stops at horizon T or when no gain is positive.
inline AsgResult AdaptiveSequenceGreedy(const StateGraph& g, const EdgeUtility& h, const RealizationModel& model,
                                        int horizon, const StateSampler& sampler, const AsgOptions& options = {}) {
  const int n = g.size();
  if (horizon < 0 || horizon > n) Fail(ErrorCode::kBadHorizon, "horizon must lie in [0, |V|]");
  model.Validate(n);
  PartialRealization psi = PartialRealization::Empty(g);
  std::vector<bool> in_seq(static_cast<std::size_t>(n), false);
  AsgResult result;

  for (int step = 0;; ++step) {
    const int len = static_cast<int>(result.sequence.size());
    double best = -std::numeric_limits<double>::infinity();
    std::vector<int> best_nodes;
    std::optional<Subset> best_edges;
    for (int id = 0; id < g.num_edges(); ++id) {
      const Edge& e = g.edge(id);
      if (in_seq[e.to]) continue;
      std::vector<int> added;
      if (!in_seq[e.from]) added.push_back(e.from);
      added.push_back(e.to);
      if (len + static_cast<int>(added.size()) > horizon) continue;
      const Subset inc = internal::AppendedEdges(g, in_seq, added);
      GainOptions gopt = options.gain;
      gopt.seed = Rng::StreamSeed(options.gain.seed, static_cast<uint64_t>(step) * g.num_edges() + id);
      const double gain = ConditionalGain(g, h, model, inc, psi, gopt).value;
      if (gain > best) {
        best = gain;
        best_nodes = std::move(added);
        best_edges = inc;
      }
    }
    if (!best_edges || best <= Tolerance(best, 0.0)) break;
    for (int v : best_nodes) {
      in_seq[v] = true;
      result.sequence.push_back(v);
      psi.states[v] = sampler(v);
    }
    psi.edges = psi.edges.Union(*best_edges);
    result.step_gains.push_back(best);
  }

  result.states = psi.states;
  result.edges = psi.edges;
  result.realized_utility = h(g, psi.edges, psi.states);
  if (options.certify) result.certificate = CertifyAsg(g, h, model, horizon, options.gamma);
  return result;
}

inline constexpr int kExhaustiveMaxVariableNodes = 20;

// f_avg(sigma) = E[h(E(sigma), phi)].
inline double AverageSequenceValue(const StateGraph& g, const EdgeUtility& h, const RealizationModel& model,
                                   std::span<const int> sequence) {
  const Subset edges = g.InducedEdges(sequence);
  NodeStates states(static_cast<std::size_t>(g.size()), NodeState::kUnknown);
  std::vector<int> var;
  for (int v : sequence) {
    if (model.Variable(v)) {
      var.push_back(v);
    } else {
      states[v] = model.Fixed(v);
    }
  }
  if (static_cast<int>(var.size()) > kExhaustiveMaxVariableNodes) Fail(ErrorCode::kTooLargeForExact, "too many random nodes");
  double total = 0.0;
  for (uint64_t mask = 0; mask < (uint64_t{1} << var.size()); ++mask) {
    double prob = 1.0;
    for (std::size_t k = 0; k < var.size(); ++k) {
      states[var[k]] = (mask >> k) & 1 ? NodeState::kVisited : NodeState::kRejected;
      prob *= model.Probability(var[k], states[var[k]]);
    }
    if (prob > 0.0) total += prob * h(g, edges, states);
  }
  return total;
}

struct SequenceOptimum {
  std::vector<int> sequence;
  double value = 0.0;
};

// Best non-adaptive sequence of length at most T by enumeration.
inline SequenceOptimum BestSequence(const StateGraph& g, const EdgeUtility& h, const RealizationModel& model,
                                    int horizon) {
  const int n = g.size();
  if (horizon < 0 || horizon > n) Fail(ErrorCode::kBadHorizon, "horizon must lie in [0, |V|]");
  if (n > kWeakAdaptiveMaxNodes) Fail(ErrorCode::kTooLarge, "too many nodes for sequence enumeration");
  model.Validate(n);
  SequenceOptimum best;
  best.value = AverageSequenceValue(g, h, model, best.sequence);
  std::vector<int> seq;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::function<void()> extend = [&]() {
    if (static_cast<int>(seq.size()) == horizon) return;
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      seq.push_back(v);
      const double value = AverageSequenceValue(g, h, model, seq);
      if (value > best.value) best = {seq, value};
      extend();
      seq.pop_back();
      used[v] = false;
    }
  };
  extend();
  return best;
}

// E over full realizations of the utility ASG realizes.
inline double AsgAverageValue(const StateGraph& g, const EdgeUtility& h, const RealizationModel& model, int horizon,
                              const GainOptions& gain = {}) {
  const int n = g.size();
  model.Validate(n);
  NodeStates phi(static_cast<std::size_t>(n));
  std::vector<int> var;
  for (int v = 0; v < n; ++v) {
    if (model.Variable(v)) {
      var.push_back(v);
    } else {
      phi[v] = model.Fixed(v);
    }
  }
  if (static_cast<int>(var.size()) > kExhaustiveMaxVariableNodes) Fail(ErrorCode::kTooLargeForExact, "too many random nodes");
  const AsgOptions options{.certify = false, .gain = gain};
  double total = 0.0;
  for (uint64_t mask = 0; mask < (uint64_t{1} << var.size()); ++mask) {
    double prob = 1.0;
    for (std::size_t k = 0; k < var.size(); ++k) {
      phi[var[k]] = (mask >> k) & 1 ? NodeState::kVisited : NodeState::kRejected;
      prob *= model.Probability(var[k], phi[var[k]]);
    }
    if (prob <= 0.0) continue;
    total += prob * AdaptiveSequenceGreedy(g, h, model, horizon, FixedSampler(phi), options).realized_utility;
  }
  return total;
}

struct StateGraphParams {
  int n = 6;
  double edge_prob = 0.3;
  double min_weight = 0.1;
  double max_weight = 0.9;
  double min_visit = 1.0;
  double max_visit = 1.0;
};

struct AdaptiveInstance {
  StateGraph graph;
  RealizationModel model;
};

// Ordered pairs (i, j), i != j, in lexicographic order each become an edge
// with probability edge_prob.
inline AdaptiveInstance GenerateAdaptive(const StateGraphParams& p, uint64_t seed) {
  if (p.n < 0 || !(p.edge_prob >= 0 && p.edge_prob <= 1) || !(p.min_weight >= 0 && p.max_weight <= 1) ||
      p.min_weight > p.max_weight || !(p.min_visit >= 0 && p.max_visit <= 1) || p.min_visit > p.max_visit) {
    Fail(ErrorCode::kBadParams, "invalid state graph parameters");
  }
  Rng rng(seed);
  AdaptiveInstance inst{StateGraph(p.n), {}};
  for (int i = 0; i < p.n; ++i) {
    for (int j = 0; j < p.n; ++j) {
      if (i == j) continue;
      if (rng.Bernoulli(p.edge_prob)) inst.graph.AddEdge(i, j, rng.Uniform(p.min_weight, p.max_weight));
    }
  }
  for (int v = 0; v < p.n; ++v) {
    inst.model.visit_prob.push_back(p.min_visit == p.max_visit ? p.min_visit : rng.Uniform(p.min_visit, p.max_visit));
  }
  return inst;
}

}  // namespace submod
