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

// Command-line front end: verify, solve, bench and generate.
//
// Exit codes: 0 ok, 1 property or guarantee failure, 2 parse or usage error,
// 3 instance too large, 4 algorithm incompatible with the instance.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "submod/adaptive.hpp"
#include "submod/continuous.hpp"
#include "submod/distributed.hpp"
#include "submod/errors.hpp"
#include "submod/extensions.hpp"
#include "submod/instance_io.hpp"
#include "submod/matroid.hpp"
#include "submod/maximize.hpp"
#include "submod/minimize.hpp"
#include "submod/random.hpp"
#include "submod/supsub.hpp"
#include "submod/verify.hpp"
#include "submod/weaksub.hpp"

namespace submod::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitParse = 2,
  kExitTooLarge = 3,
  kExitIncompatible = 4,
};

inline int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTooLarge:
    case ErrorCode::kTooLargeForExact:
      return kExitTooLarge;
    case ErrorCode::kIncompatibleAlgorithm:
    case ErrorCode::kUnsupportedMatroid:
    case ErrorCode::kUnsupportedDomain:
      return kExitIncompatible;
    default:
      return kExitParse;
  }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOutcome {
  std::string kind;
  int n = 0;
  // Property name -> holds.
  std::map<std::string, bool> properties;
  std::map<std::string, std::string> witnesses;
  std::optional<MatroidAxiomReport> matroid;
  std::vector<std::string> declared;
  std::vector<std::string> failed;

  bool passed() const { return failed.empty(); }
};

inline VerifyOutcome VerifyInstance(const InstanceFile& file) {
  VerifyOutcome out;
  out.kind = file.kind();
  out.n = file.size();
  out.declared = file.declares ? *file.declares : DefaultDeclarations(out.kind);

  if (const auto* q = std::get_if<NqpInstance>(&file.payload)) {
    const QuadraticFlags flags = CheckQuadratic(q->q);
    out.properties["submodular"] = flags.submodular;
    out.properties["dr_submodular"] = flags.dr;
    out.properties["concave"] = flags.concave;
    out.properties["normalized"] = q->q.c0 == 0.0;
    out.properties["monotone"] = internal::GradientNonnegativeSampled(q->q);
  } else {
    const SetFunctionOracle f = MakeObjective(file);
    const PropertyReport r = VerifySetFunction(f);
    out.properties["normalized"] = r.normalized;
    out.properties["monotone"] = r.monotone;
    out.properties["submodular"] = r.submodular;
    out.properties["supermodular"] = r.supermodular;
    out.properties["modular"] = r.modular;
    // Discrete functions are DR-submodular exactly when submodular.
    out.properties["dr_submodular"] = r.submodular;
    out.properties["concave"] = r.modular;
    if (r.monotone_witness) out.witnesses["monotone"] = r.monotone_witness->ToString();
    if (r.submodular_witness) out.witnesses["submodular"] = r.submodular_witness->ToString();
    if (r.supermodular_witness) out.witnesses["supermodular"] = r.supermodular_witness->ToString();
  }
  for (const std::string& p : out.declared) {
    if (!out.properties.at(p)) out.failed.push_back(p);
  }
  if (file.constraint) {
    if (const auto* m = std::get_if<MatroidSpec>(&*file.constraint)) {
      out.matroid = VerifyMatroidAxioms(BuildMatroid(*m, out.n));
      if (!out.matroid->valid) out.failed.push_back("matroid");
    }
  }
  return out;
}

inline Json VerifyToJson(const VerifyOutcome& v) {
  Json j{{"schema", "submod-verify/1"}, {"kind", v.kind}, {"n", v.n},           {"properties", v.properties},
         {"witnesses", v.witnesses},   {"declared", v.declared}, {"failed", v.failed}, {"passed", v.passed()}};
  if (v.matroid) j["matroid"] = {{"valid", v.matroid->valid}, {"report", v.matroid->Describe()}};
  return j;
}

inline std::string VerifyToText(const VerifyOutcome& v) {
  std::ostringstream os;
  os << "kind: " << v.kind << "\nn: " << v.n << "\n";
  for (const auto& [name, holds] : v.properties) {
    os << name << ": " << (holds ? "true" : "false");
    if (auto it = v.witnesses.find(name); it != v.witnesses.end()) os << "  witness " << it->second;
    os << "\n";
  }
  if (v.matroid) os << "matroid: " << v.matroid->Describe() << "\n";
  os << "declared:";
  for (const auto& d : v.declared) os << " " << d;
  os << "\nresult: " << (v.passed() ? "all declared properties hold" : "FAILED");
  for (const auto& f : v.failed) os << " " << f;
  os << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

struct SolveOptions {
  std::string algorithm = "greedy";
  std::optional<int> k;
  std::optional<double> budget;
  std::string sense = "max";
  uint64_t seed = 0;
  bool certify = false;
  int machines = 1;
  bool random_partition = false;
  // Iterations of the continuous and minimization solvers; 0 keeps defaults.
  int steps = 0;
  std::string init = "empty";
  // Optimum supplied by the caller; skips the exhaustive search.
  std::optional<double> known_opt;
};

inline const std::vector<std::string>& Algorithms() {
  static const std::vector<std::string> names = {
      "greedy", "lazy",     "greedi", "matroid", "knapsack", "knapsack-pairs", "multiway", "continuous-greedy",
      "supsub", "minnorm",  "subgradient", "fs",  "omp",      "obl",            "asg",      "fw",
      "pga"};
  return names;
}

namespace internal {

[[noreturn]] inline void Incompatible(const std::string& algorithm, const std::string& why) {
  Fail(ErrorCode::kIncompatibleAlgorithm, "algorithm '" + algorithm + "' " + why);
}

inline int ResolveK(const InstanceFile& file, const SolveOptions& o) {
  if (o.k) return *o.k;
  if (file.constraint) {
    if (const auto* c = std::get_if<CardinalitySpec>(&*file.constraint)) return c->k;
  }
  Fail(ErrorCode::kBadK, "algorithm '" + o.algorithm + "' needs --k or a cardinality constraint");
}

inline bool Declares(const InstanceFile& file, std::initializer_list<std::string_view> props) {
  const std::vector<std::string> d = file.declares ? *file.declares : DefaultDeclarations(file.kind());
  for (auto p : props) {
    if (std::find(d.begin(), d.end(), p) == d.end()) return false;
  }
  return true;
}

// max sum_j f_j(S_j) over all assignments of elements to blocks (or to none).
inline double BestMultiwayValue(const std::vector<SetFunctionOracle>& fs) {
  const int n = fs[0].size();
  const int j = static_cast<int>(fs.size());
  double count = 1.0;
  for (int e = 0; e < n; ++e) count *= j + 1;
  if (count > 2e6) Fail(ErrorCode::kTooLarge, "too many assignments to enumerate");
  std::vector<int> owner(static_cast<std::size_t>(n), 0);
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    double v = 0.0;
    for (int b = 0; b < j; ++b) {
      Subset s(n);
      for (int e = 0; e < n; ++e) {
        if (owner[e] == b + 1) s.Insert(e);
      }
      v += fs[b](s);
    }
    best = std::max(best, v);
    int e = 0;
    while (e < n && owner[e] == j) owner[e++] = 0;
    if (e == n) break;
    ++owner[e];
  }
  return best;
}

inline void FillSelection(ResultReport& r, const SolveResult& s) {
  r.selected = s.selected.Elements();
  for (const Subset& b : s.blocks) r.blocks.push_back(b.Elements());
  r.value = s.value;
  r.guarantee = s.guarantee;
  r.oracle_calls = s.oracle_calls;
}

// Certification of a maximization run: value >= guarantee * opt, exactly.
inline void CertifyMax(ResultReport& r, double opt) {
  Certification c;
  c.opt = opt;
  c.ratio = opt > 0 ? r.value / opt : (r.value >= opt ? 1.0 : 0.0);
  c.passed = r.value >= r.guarantee * opt;
  r.certification = std::move(c);
}

// Runs `body` unless the exhaustive part is infeasible, in which case the
// report goes out uncertified.
template <class Fn>
void TryCertify(Fn&& body) {
  try {
    body();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kTooLarge && e.code() != ErrorCode::kTooLargeForExact) throw;
  }
}

inline ResultReport SolveDiscreteMax(const InstanceFile& file, const SolveOptions& o) {
  const std::string& alg = o.algorithm;
  const SetFunctionOracle f = MakeObjective(file);
  const int n = f.size();
  ResultReport r;
  FeasibilityPredicate feasible;
  std::optional<Matroid> matroid;
  std::optional<Knapsack> knapsack;
  // Guarantees of the greedy family need a normalized monotone submodular f.
  const bool classic = Declares(file, {"normalized", "monotone", "submodular"});

  if (alg == "greedy" || alg == "lazy" || alg == "greedi") {
    const int k = ResolveK(file, o);
    if (alg == "greedy") {
      FillSelection(r, GreedyCardinality(f, k));
    } else if (alg == "lazy") {
      FillSelection(r, LazyGreedy(f, k));
    } else {
      const DistributedResult d = GreediTwoRound(
          f, {.machines = o.machines,
              .k = k,
              .strategy = o.random_partition ? PartitionStrategy::kRandom : PartitionStrategy::kRoundRobin,
              .seed = o.seed});
      FillSelection(r, d.result);
      for (const auto& local : d.local) r.machine_calls.push_back(local.oracle_calls);
      r.machine_calls.push_back(d.central.oracle_calls);
    }
    feasible = AtMostK(k);
  } else if (alg == "matroid" || alg == "continuous-greedy") {
    if (file.constraint && std::holds_alternative<MatroidSpec>(*file.constraint)) {
      matroid = BuildMatroid(std::get<MatroidSpec>(*file.constraint), n);
    } else if (o.k || (file.constraint && std::holds_alternative<CardinalitySpec>(*file.constraint))) {
      matroid = Matroid::Uniform(n, ResolveK(file, o));
    } else {
      Incompatible(alg, "needs a matroid or cardinality constraint");
    }
    if (alg == "matroid") {
      FillSelection(r, MatroidGreedy(f, *matroid));
    } else {
      ContinuousGreedyOptions cg{.seed = o.seed};
      if (o.steps > 0) cg.steps = o.steps;
      if (n <= kMultilinearExactMaxN) cg.samples = 0;
      const ContinuousGreedyResult res = ContinuousGreedy(f, *matroid, cg);
      r.selected = res.rounded.Elements();
      r.point = res.x;
      r.value = res.value;
      r.oracle_calls = res.oracle_calls;
      // Randomized rounding: no per-run bound.
      r.guarantee = 0.0;
    }
    const Matroid* m = &*matroid;
    feasible = [m](const Subset& s) { return m->IsIndependent(s); };
  } else if (alg == "knapsack" || alg == "knapsack-pairs") {
    if (!file.constraint || !std::holds_alternative<KnapsackSpec>(*file.constraint)) {
      Incompatible(alg, "needs a knapsack constraint");
    }
    const auto& spec = std::get<KnapsackSpec>(*file.constraint);
    knapsack.emplace(spec.costs, o.budget ? *o.budget : spec.budget);
    FillSelection(r, CostWeightedGreedy(f, *knapsack, alg == "knapsack-pairs"));
    feasible = knapsack->Predicate();
  } else if (alg == "multiway") {
    const auto* w = std::get_if<WaterfillingPayload>(&file.payload);
    if (!w || !file.constraint || !std::holds_alternative<PartitionSpec>(*file.constraint)) {
      Incompatible(alg, "needs a waterfilling instance with a partition constraint");
    }
    std::vector<SetFunctionOracle> fs;
    for (int u = 0; u < w->instance.users(); ++u) fs.push_back(MakeWaterfillingOracle(w->instance, u));
    FillSelection(r, MultiwayPartitionGreedy(fs));
    if (!classic) r.guarantee = 0.0;
    if (o.certify) {
      TryCertify([&] {
        if (n > BruteForceLimit()) Fail(ErrorCode::kTooLarge, "N exceeds the brute-force limit");
        CertifyMax(r, o.known_opt ? *o.known_opt : BestMultiwayValue(fs));
      });
    }
    return r;
  } else if (alg == "supsub") {
    const int k = ResolveK(file, o);
    const DsDecomposition ds = DsDecompose(f);
    const SupSubResult res =
        SupSubMaximize(ds, k, {.init = o.init == "greedy" ? SupSubInit::kGreedyOnF : SupSubInit::kEmpty});
    FillSelection(r, res.result);
    if (o.certify) {
      TryCertify([&] {
        CertifyMax(r, o.known_opt ? *o.known_opt
                                  : BruteForceOptimum(f, Sense::kMax, [k](const Subset& s) { return s.Count() == k; })
                                        .value);
        bool monotone_history = true;
        for (std::size_t i = 1; i < res.history.size(); ++i) monotone_history &= res.history[i] >= res.history[i - 1];
        r.certification->details["iterations"] = res.iterations;
        r.certification->details["history_nondecreasing"] = monotone_history ? 1.0 : 0.0;
        r.certification->details["decomposition_certified"] = ds.certified ? 1.0 : 0.0;
        r.certification->passed = r.certification->passed && monotone_history && ds.certified;
      });
    }
    return r;
  } else {
    Incompatible(alg, "is not a set-function maximizer");
  }

  if (!classic) r.guarantee = 0.0;
  if (o.certify) {
    TryCertify([&] {
      if (!o.known_opt && n > BruteForceLimit()) Fail(ErrorCode::kTooLarge, "N exceeds the brute-force limit");
      CertifyMax(r, o.known_opt ? *o.known_opt : BruteForceOptimum(f, Sense::kMax, feasible).value);
      if (classic && r.guarantee > 0) {
        // The guarantee rests on the declarations; confirm them.
        const PropertyReport p = VerifySetFunction(f);
        const bool holds = p.normalized && p.monotone && p.submodular;
        r.certification->details["declarations_hold"] = holds ? 1.0 : 0.0;
        r.certification->passed = r.certification->passed && holds;
      }
    });
  }
  return r;
}

inline ResultReport SolveMinimize(const InstanceFile& file, const SolveOptions& o) {
  const SetFunctionOracle f = MakeObjective(file);
  MinimizeResult m;
  if (o.algorithm == "minnorm") {
    MinNormOptions opts;
    if (o.steps > 0) opts.iterations = o.steps;
    m = MinNormMinimize(f, opts);
  } else {
    SubgradientOptions opts;
    if (o.steps > 0) opts.iterations = o.steps;
    m = SubgradientMinimize(f, opts);
  }
  ResultReport r;
  r.sense = "min";
  r.selected = m.set.Elements();
  r.value = m.set_value;
  r.oracle_calls = m.oracle_calls;
  // Exact minimizer for submodular f, up to solver tolerance.
  const bool submodular = Declares(file, {"submodular"}) && (!m.submodular_checked || m.submodular);
  r.guarantee = submodular ? 1.0 : 0.0;
  if (o.certify) {
    TryCertify([&] {
      Certification c;
      c.opt = o.known_opt ? *o.known_opt : BruteForceOptimum(f, Sense::kMin).value;
      c.gap = r.value - c.opt;
      c.details["tolerance"] = 1e-3;
      c.passed = !submodular || *c.gap <= 1e-3;
      r.certification = std::move(c);
    });
  }
  return r;
}

inline ResultReport SolveRegression(const InstanceFile& file, const SolveOptions& o) {
  const auto* inst = std::get_if<RegressionInstance>(&file.payload);
  if (!inst) Incompatible(o.algorithm, "needs a regression instance");
  const int k = ResolveK(file, o);
  const RegressionMethod method = o.algorithm == "fs"    ? RegressionMethod::kForward
                                  : o.algorithm == "omp" ? RegressionMethod::kOmp
                                                         : RegressionMethod::kOblivious;
  ResultReport r;
  FillSelection(r, SelectSubset(*inst, k, method));
  r.guarantee = 0.0;
  if (o.certify) {
    TryCertify([&] {
      const SetFunctionOracle f = MakeRSquaredOracle(*inst);
      if (method == RegressionMethod::kForward) {
        const RatioReport gamma = SubmodularityRatio(f, k);
        r.guarantee = gamma.guarantee();
      }
      CertifyMax(r, o.known_opt ? *o.known_opt : BruteForceOptimum(f, Sense::kMax, AtMostK(k)).value);
      if (method == RegressionMethod::kForward) r.certification->details["gamma"] = SubmodularityRatio(f, k).gamma;
    });
  }
  return r;
}

inline ResultReport SolveAdaptive(const InstanceFile& file, const SolveOptions& o) {
  const auto* inst = std::get_if<AdaptiveInstance>(&file.payload);
  if (!inst) Incompatible(o.algorithm, "needs a state-graph instance");
  const int horizon = ResolveK(file, o);
  const EdgeUtility h = MakeCoverageUtility();
  const AsgResult res = AdaptiveSequenceGreedy(inst->graph, h, inst->model, horizon,
                                               RandomSampler(inst->model, o.seed), {.certify = false});
  ResultReport r;
  r.sequence = res.sequence;
  r.selected = res.edges.Elements();
  r.value = res.realized_utility;
  if (o.certify) {
    TryCertify([&] {
      const AsgCertificate cert = CertifyAsg(inst->graph, h, inst->model, horizon);
      const double avg = AsgAverageValue(inst->graph, h, inst->model, horizon);
      const double opt = o.known_opt ? *o.known_opt : BestSequence(inst->graph, h, inst->model, horizon).value;
      r.guarantee = cert.factor;
      Certification c;
      c.opt = opt;
      c.ratio = opt > 0 ? avg / opt : 1.0;
      c.details["expected_value"] = avg;
      c.details["gamma"] = cert.gamma;
      c.details["d_in"] = cert.d_in;
      c.passed = avg >= cert.factor * opt;
      r.certification = std::move(c);
    });
  }
  return r;
}

// Discretization slack of the continuous guarantees against the grid optimum.
inline constexpr double kContinuousSlack = 1e-3;

inline ResultReport SolveContinuous(const InstanceFile& file, const SolveOptions& o) {
  const auto* inst = std::get_if<NqpInstance>(&file.payload);
  if (!inst) Incompatible(o.algorithm, "needs an nqp instance");
  const int steps = o.steps > 0 ? o.steps : 100;
  ContinuousResult res;
  ResultReport r;
  if (o.algorithm == "fw") {
    res = DrFrankWolfe(inst->q, inst->domain, steps);
    r.guarantee = kOneMinusInvE - kContinuousSlack;
  } else {
    res = ProjectedGradientAscent(inst->q, inst->domain, {.steps = steps});
    r.guarantee = 0.5 - kContinuousSlack;
  }
  if (res.monotone_warning) r.guarantee = 0.0;
  r.point.assign(res.x.data(), res.x.data() + res.x.size());
  r.value = res.value;
  r.oracle_calls = res.iterations;
  if (o.certify) {
    TryCertify([&] {
      CertifyMax(r, o.known_opt ? *o.known_opt : GridSearchMax(inst->q, inst->domain).value);
      r.certification->details["grid_resolution"] = 50;
    });
  }
  return r;
}

}  // namespace internal

// Dispatches one solver run. Throws Error; kIncompatibleAlgorithm when the
// algorithm does not fit the instance, sense or constraint.
inline ResultReport Solve(const InstanceFile& file, const SolveOptions& o) {
  const std::string& alg = o.algorithm;
  if (std::find(Algorithms().begin(), Algorithms().end(), alg) == Algorithms().end()) {
    internal::Incompatible(alg, "is unknown");
  }
  if (o.sense != "max" && o.sense != "min") Fail(ErrorCode::kBadParams, "sense must be max or min");
  const bool minimizer = alg == "minnorm" || alg == "subgradient";
  if (minimizer != (o.sense == "min")) internal::Incompatible(alg, "does not solve sense " + o.sense);
  const std::string kind = file.kind();
  const bool continuous = alg == "fw" || alg == "pga";
  if (continuous != (kind == "nqp")) internal::Incompatible(alg, "does not accept kind " + kind);

  const auto start = std::chrono::steady_clock::now();
  ResultReport r;
  if (continuous) {
    r = internal::SolveContinuous(file, o);
  } else if (minimizer) {
    r = internal::SolveMinimize(file, o);
  } else if (alg == "fs" || alg == "omp" || alg == "obl") {
    r = internal::SolveRegression(file, o);
  } else if (alg == "asg") {
    r = internal::SolveAdaptive(file, o);
  } else {
    r = internal::SolveDiscreteMax(file, o);
  }
  r.solver = alg;
  r.seed = o.seed;
  r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& Suites() {
  static const std::vector<std::string> names = {"coverage-k-sweep",   "knapsack",            "regression-k-sweep",
                                                 "nqp-b-sweep",        "distributed-m-sweep", "supsub-kl"};
  return names;
}

inline constexpr std::string_view kBenchCsvHeader =
    "suite,instance,n,algorithm,param,value,opt,ratio,guarantee,oracle_calls,passed";

struct BenchRow {
  std::string suite;
  uint64_t instance = 0;
  int n = 0;
  std::string algorithm;
  std::string param;
  ResultReport report;
};

inline std::string BenchRowCsv(const BenchRow& row) {
  const ResultReport& r = row.report;
  const Certification* c = r.certification ? &*r.certification : nullptr;
  return row.suite + "," + std::to_string(row.instance) + "," + std::to_string(row.n) + "," + row.algorithm + "," +
         row.param + "," + FormatDouble(r.value) + "," + (c ? FormatDouble(c->opt) : "") + "," +
         (c && c->ratio ? FormatDouble(*c->ratio) : "") + "," + FormatDouble(r.guarantee) + "," +
         std::to_string(r.oracle_calls) + "," + (c ? (c->passed ? "true" : "false") : "") + "\n";
}

struct BenchSummary {
  int rows = 0;
  int certified = 0;
  int failed = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
};

inline BenchSummary Summarize(const std::vector<BenchRow>& rows) {
  BenchSummary s;
  for (const BenchRow& row : rows) {
    ++s.rows;
    if (!row.report.certification) continue;
    ++s.certified;
    if (!row.report.certification->passed) ++s.failed;
    if (row.report.certification->ratio) s.min_ratio = std::min(s.min_ratio, *row.report.certification->ratio);
  }
  return s;
}

// Every row is certified. Instances use seeds base_seed, ..., base_seed +
// repeats - 1; rows come out in (instance, parameter, algorithm) order.
inline std::vector<BenchRow> RunBench(const std::string& suite, int repeats, uint64_t base_seed) {
  if (std::find(Suites().begin(), Suites().end(), suite) == Suites().end()) {
    Fail(ErrorCode::kUnknownSuite, "unknown suite '" + suite + "'");
  }
  if (repeats < 1) Fail(ErrorCode::kBadParams, "repeats must be >= 1");
  std::vector<BenchRow> rows;
  auto add = [&](uint64_t seed, const InstanceFile& file, const SolveOptions& o, const std::string& param) {
    rows.push_back({suite, seed, file.size(), o.algorithm, param, Solve(file, o)});
  };

  for (int rep = 0; rep < repeats; ++rep) {
    const uint64_t seed = base_seed + static_cast<uint64_t>(rep);
    if (suite == "coverage-k-sweep") {
      const InstanceFile file = GenerateInstance({.kind = "coverage", .n = 12, .seed = seed});
      for (int k = 1; k <= 6; ++k) {
        const double opt = BruteForceOptimum(MakeObjective(file), Sense::kMax, AtMostK(k)).value;
        for (const char* alg : {"greedy", "lazy"}) {
          add(seed, file, {.algorithm = alg, .k = k, .certify = true, .known_opt = opt}, std::to_string(k));
        }
      }
    } else if (suite == "knapsack") {
      InstanceFile file = GenerateInstance({.kind = "coverage", .n = 12, .seed = seed});
      Rng rng(Rng::StreamSeed(seed, 1));
      KnapsackSpec spec;
      for (int e = 0; e < 12; ++e) spec.costs.push_back(rng.Uniform(0.5, 2.0));
      spec.budget = 1.0;
      file.constraint = spec;
      for (double budget : {2.0, 4.0, 6.0}) {
        for (const char* alg : {"knapsack", "knapsack-pairs"}) {
          add(seed, file, {.algorithm = alg, .budget = budget, .certify = true}, FormatDouble(budget));
        }
      }
    } else if (suite == "regression-k-sweep") {
      const InstanceFile file = GenerateInstance({.kind = "regression", .n = 8, .seed = seed});
      for (int k = 2; k <= 8; ++k) {
        for (const char* alg : {"fs", "omp", "obl"}) {
          add(seed, file, {.algorithm = alg, .k = k, .certify = true}, std::to_string(k));
        }
      }
    } else if (suite == "nqp-b-sweep") {
      // One budget row so that both solvers apply; budgets solved in parallel.
      const std::vector<double> budgets = {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
      std::vector<std::future<std::vector<BenchRow>>> jobs;
      for (double b : budgets) {
        jobs.push_back(std::async(std::launch::async, [=] {
          InstanceFile file;
          file.seed = seed;
          file.payload = GenerateNqp({.n = 4, .b = b, .m = 1}, seed);
          const auto& q = std::get<NqpInstance>(file.payload);
          const double opt = GridSearchMax(q.q, q.domain).value;
          std::vector<BenchRow> out;
          for (const char* alg : {"fw", "pga"}) {
            const SolveOptions o{.algorithm = alg, .certify = true, .known_opt = opt};
            out.push_back({suite, seed, 4, alg, FormatDouble(b), Solve(file, o)});
          }
          return out;
        }));
      }
      for (auto& job : jobs) {
        for (BenchRow& row : job.get()) rows.push_back(std::move(row));
      }
    } else if (suite == "distributed-m-sweep") {
      const InstanceFile file = GenerateInstance({.kind = "coverage", .n = 12, .seed = seed});
      const int k = 3;
      const double opt = BruteForceOptimum(MakeObjective(file), Sense::kMax, AtMostK(k)).value;
      add(seed, file, {.algorithm = "greedy", .k = k, .certify = true, .known_opt = opt}, "0");
      for (int m = 1; m <= 4; ++m) {
        add(seed, file, {.algorithm = "greedi", .k = k, .certify = true, .machines = m, .known_opt = opt},
            std::to_string(m));
      }
    } else if (suite == "supsub-kl") {
      const InstanceFile file = GenerateInstance({.kind = "gaussian", .n = 8, .seed = seed});
      for (int k = 2; k <= 4; ++k) {
        add(seed, file, {.algorithm = "greedy", .k = k, .certify = true}, std::to_string(k));
        add(seed, file, {.algorithm = "supsub", .k = k, .certify = true, .init = "empty"}, std::to_string(k));
        SolveOptions warm{.algorithm = "supsub", .k = k, .certify = true, .init = "greedy"};
        BenchRow row{suite, seed, 8, "supsub-greedy-init", std::to_string(k), Solve(file, warm)};
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

inline std::string BenchCsv(const std::vector<BenchRow>& rows) {
  std::string out = std::string(kBenchCsvHeader) + "\n";
  for (const BenchRow& row : rows) out += BenchRowCsv(row);
  return out;
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

// Parses argv and runs one subcommand. Normal output goes to `out`,
// diagnostics to `err`.
inline int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Submodular optimization toolkit", "submod"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolkitVersion));

  std::string path;
  std::string output = "text";
  auto* verify = app.add_subcommand("verify", "Check the properties an instance declares");
  verify->add_option("instance", path, "Instance file")->required();
  verify->add_option("--output", output, "text or json")->check(CLI::IsMember({"text", "json"}));

  SolveOptions so;
  std::string solve_output = "json";
  auto* solve = app.add_subcommand("solve", "Run one solver on an instance");
  solve->add_option("instance", path, "Instance file")->required();
  solve->add_option("--algorithm,--method", so.algorithm, "Solver")->check(CLI::IsMember(Algorithms()));
  solve->add_option("--k", so.k, "Cardinality, rank or horizon");
  solve->add_option("--budget", so.budget, "Knapsack budget");
  solve->add_option("--sense", so.sense, "max or min")->check(CLI::IsMember({"max", "min"}));
  solve->add_option("--seed", so.seed, "Seed for randomized solvers");
  solve->add_flag("--certify", so.certify, "Compare against the exhaustive optimum");
  solve->add_option("--output", solve_output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  solve->add_option("--machines", so.machines, "Machines for greedi")->check(CLI::PositiveNumber);
  solve->add_flag("--random-partition", so.random_partition, "Seeded random partition for greedi");
  solve->add_option("--steps", so.steps, "Iterations of iterative solvers")->check(CLI::NonNegativeNumber);
  solve->add_option("--init", so.init, "supsub initializer")->check(CLI::IsMember({"empty", "greedy"}));

  std::string suite;
  int repeats = 3;
  uint64_t bench_seed = 0;
  std::string out_dir;
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite and emit CSV");
  bench->add_option("suite", suite, "Suite name")->required();
  bench->add_option("--repeats", repeats, "Instances per suite")->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed, "First instance seed");
  bench->add_option("--out", out_dir, "Directory for <suite>.csv; stdout when omitted");

  GenerateRequest gen;
  std::optional<double> gen_budget;
  bool gen_partition = false;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Write a seeded instance file");
  generate->add_option("--kind", gen.kind, "Instance kind")
      ->check(CLI::IsMember({"coverage", "waterfilling", "gaussian", "regression", "nqp", "stategraph", "explicit"}));
  generate->add_option("--n", gen.n, "Ground-set size or dimension");
  generate->add_option("--seed", gen.seed, "Instance seed");
  generate->add_option("--k", gen.k, "Attach a cardinality constraint");
  generate->add_option("--budget", gen_budget, "Attach a knapsack constraint with seeded costs");
  generate->add_flag("--partition", gen_partition, "Attach a partition constraint (waterfilling)");
  generate->add_option("--out", gen_out, "Output path; stdout when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*verify) {
      const VerifyOutcome v = VerifyInstance(LoadInstance(path));
      out << (output == "json" ? VerifyToJson(v).dump(2) + "\n" : VerifyToText(v));
      return v.passed() ? kExitOk : kExitFailure;
    }
    if (*solve) {
      const ResultReport r = Solve(LoadInstance(path), so);
      out << (solve_output == "json" ? ReportToJson(r).dump(2) + "\n" : ReportToCsv(r));
      if (r.certification && !r.certification->passed) {
        err << "guarantee violated: value " << FormatDouble(r.value) << " < " << FormatDouble(r.guarantee)
            << " * opt " << FormatDouble(r.certification->opt) << "\n";
        return kExitFailure;
      }
      return kExitOk;
    }
    if (*bench) {
      const std::vector<BenchRow> rows = RunBench(suite, repeats, bench_seed);
      const std::string csv = BenchCsv(rows);
      const BenchSummary s = Summarize(rows);
      std::ostringstream summary;
      summary << suite << ": " << s.rows << " rows, " << s.certified << " certified, " << s.failed
              << " failed, min ratio " << FormatDouble(s.min_ratio) << "\n";
      if (out_dir.empty()) {
        out << csv;
        err << summary.str();
      } else {
        std::filesystem::create_directories(out_dir);
        const std::string file = (std::filesystem::path(out_dir) / (suite + ".csv")).string();
        std::ofstream f(file, std::ios::binary);
        if (!f) Fail(ErrorCode::kBadParams, "cannot write " + file);
        f << csv;
        out << summary.str();
      }
      return s.failed == 0 ? kExitOk : kExitFailure;
    }
    if (*generate) {
      InstanceFile file = GenerateInstance(gen);
      if (gen_budget) {
        Rng rng(Rng::StreamSeed(gen.seed, 1));
        KnapsackSpec spec;
        for (int e = 0; e < file.size(); ++e) spec.costs.push_back(rng.Uniform(0.5, 2.0));
        spec.budget = *gen_budget;
        file.constraint = spec;
      }
      if (gen_partition) file.constraint = PartitionSpec{};
      const std::string text = SerializeInstance(ParseInstance(SerializeInstance(file)));
      if (gen_out.empty()) {
        out << text;
      } else {
        std::ofstream f(gen_out, std::ios::binary);
        if (!f) Fail(ErrorCode::kBadParams, "cannot write " + gen_out);
        f << text;
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  }
  return kExitParse;
}

}  // namespace submod::cli
