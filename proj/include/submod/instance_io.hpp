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

// JSON instance files and result reports.
//
// An instance file is a JSON object
//
//   {"schema": "submod-instance/1", "kind": <kind>, "seed": <uint>,
//    "payload": {...}, "constraint": {...}?, "declares": [...]?}
//
// Keys are emitted in sorted order and unknown keys are rejected at every
// level, so Serialize(Parse(Serialize(x))) == Serialize(x).

#pragma once

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "submod/adaptive.hpp"
#include "submod/continuous.hpp"
#include "submod/errors.hpp"
#include "submod/matroid.hpp"
#include "submod/objectives.hpp"
#include "submod/oracle.hpp"
#include "submod/weaksub.hpp"

namespace submod {

using Json = nlohmann::json;

inline constexpr std::string_view kInstanceSchema = "submod-instance/1";
inline constexpr std::string_view kResultSchema = "submod-result/1";
inline constexpr std::string_view kToolkitVersion = "0.1.0";

// Waterfilling payload. `user` picks the rate function used by single
// objective solvers; the partition constraint uses every user.
struct WaterfillingPayload {
  WaterfillingInstance instance;
  int user = 0;
};

struct ExplicitFunction {
  int n = 0;
  std::vector<double> values;
};

using InstancePayload = std::variant<std::monostate, CoverageInstance, WaterfillingPayload, GaussianClassInstance,
                                     RegressionInstance, NqpInstance, AdaptiveInstance, ExplicitFunction>;

struct CardinalitySpec {
  int k = 0;
};

struct KnapsackSpec {
  std::vector<double> costs;
  double budget = 0.0;
};

struct MatroidSpec {
  Matroid::Kind kind;
};

// One block per user of a waterfilling instance.
struct PartitionSpec {};

using ConstraintSpec = std::variant<CardinalitySpec, KnapsackSpec, MatroidSpec, PartitionSpec>;

struct InstanceFile {
  InstancePayload payload;
  std::optional<ConstraintSpec> constraint;
  uint64_t seed = 0;
  // Properties `verify` must confirm; kind defaults when absent.
  std::optional<std::vector<std::string>> declares;

  std::string kind() const;
  // Ground-set size of the discrete objective, or the dimension for nqp.
  int size() const;
};

namespace internal {

[[noreturn]] inline void ParseFail(const std::string& where, const std::string& what) {
  Fail(ErrorCode::kParseError, where + ": " + what);
}

inline void CheckKeys(const Json& j, const std::string& where, std::initializer_list<std::string_view> required,
                      std::initializer_list<std::string_view> optional = {}) {
  if (!j.is_object()) ParseFail(where, "expected an object");
  for (auto key : required) {
    if (!j.contains(std::string(key))) ParseFail(where, "missing field '" + std::string(key) + "'");
  }
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto k : required) known = known || key == k;
    for (auto k : optional) known = known || key == k;
    if (!known) ParseFail(where, "unknown field '" + key + "'");
  }
}

inline double GetDouble(const Json& j, const std::string& where) {
  if (!j.is_number()) ParseFail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) ParseFail(where, "non-finite number");
  return v;
}

inline int GetInt(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) ParseFail(where, "expected an integer");
  const auto v = j.get<int64_t>();
  if (v < -(int64_t{1} << 30) || v > (int64_t{1} << 30)) ParseFail(where, "integer out of range");
  return static_cast<int>(v);
}

inline std::vector<double> GetDoubles(const Json& j, const std::string& where) {
  if (!j.is_array()) ParseFail(where, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(GetDouble(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<int> GetInts(const Json& j, const std::string& where) {
  if (!j.is_array()) ParseFail(where, "expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(GetInt(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::vector<double>> GetRows(const Json& j, const std::string& where) {
  if (!j.is_array()) ParseFail(where, "expected an array of rows");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(GetDoubles(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline Eigen::VectorXd GetVector(const Json& j, const std::string& where) {
  const std::vector<double> v = GetDoubles(j, where);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Row-major; every row must have `cols` entries (or any common length when
// cols < 0).
inline Eigen::MatrixXd GetMatrix(const Json& j, const std::string& where, int cols = -1) {
  const auto rows = GetRows(j, where);
  const std::size_t width = cols >= 0 ? static_cast<std::size_t>(cols) : (rows.empty() ? 0 : rows[0].size());
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) ParseFail(where, "ragged matrix");
    for (std::size_t c = 0; c < width; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

inline Json VectorJson(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

inline Json MatrixJson(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::vector<double> row(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index c = 0; c < m.cols(); ++c) row[c] = m(r, c);
    rows.push_back(row);
  }
  return rows;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace internal

inline std::string InstanceFile::kind() const {
  return std::visit(internal::Overloaded{
                        [](const std::monostate&) { return std::string("none"); },
                        [](const CoverageInstance&) { return std::string("coverage"); },
                        [](const WaterfillingPayload&) { return std::string("waterfilling"); },
                        [](const GaussianClassInstance&) { return std::string("gaussian"); },
                        [](const RegressionInstance&) { return std::string("regression"); },
                        [](const NqpInstance&) { return std::string("nqp"); },
                        [](const AdaptiveInstance&) { return std::string("stategraph"); },
                        [](const ExplicitFunction&) { return std::string("explicit"); },
                    },
                    payload);
}

inline int InstanceFile::size() const {
  return std::visit(internal::Overloaded{
                        [](const std::monostate&) { return 0; },
                        [](const CoverageInstance& c) { return c.num_sensors(); },
                        [](const WaterfillingPayload& w) { return w.instance.subcarriers(); },
                        [](const GaussianClassInstance& g) { return g.size(); },
                        [](const RegressionInstance& r) { return r.size(); },
                        [](const NqpInstance& q) { return q.q.size(); },
                        [](const AdaptiveInstance& a) { return a.graph.num_edges(); },
                        [](const ExplicitFunction& e) { return e.n; },
                    },
                    payload);
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace internal {

inline Json PayloadJson(const InstancePayload& payload) {
  return std::visit(
      Overloaded{
          [](const std::monostate&) -> Json { Fail(ErrorCode::kBadParams, "instance has no payload"); },
          [](const CoverageInstance& c) {
            Json j;
            Json sensors = Json::array();
            for (const Sensor& s : c.sensors()) sensors.push_back({s.center.x, s.center.y, s.radius});
            j["sensors"] = sensors;
            if (c.grid()) {
              j["grid"] = {{"width", c.grid()->width}, {"height", c.grid()->height}, {"resolution", c.grid()->resolution}};
            } else {
              Json points = Json::array();
              for (const Point2& p : c.points()) points.push_back({p.x, p.y});
              j["points"] = points;
            }
            return j;
          },
          [](const WaterfillingPayload& w) {
            return Json{{"noise", w.instance.noise}, {"budgets", w.instance.budgets}, {"user", w.user}};
          },
          [](const GaussianClassInstance& g) {
            return Json{{"theta0", VectorJson(g.theta0)},
                        {"theta1", VectorJson(g.theta1)},
                        {"sigma0", MatrixJson(g.sigma0)},
                        {"sigma1", MatrixJson(g.sigma1)}};
          },
          [](const RegressionInstance& r) {
            return Json{{"c", MatrixJson(r.c)}, {"b", VectorJson(r.b)}, {"normalized", r.normalized}};
          },
          [](const NqpInstance& q) {
            return Json{{"h", MatrixJson(q.q.h)},
                        {"linear", VectorJson(q.q.b)},
                        {"offset", q.q.c0},
                        {"a", MatrixJson(q.domain.a)},
                        {"rhs", VectorJson(q.domain.b)}};
          },
          [](const AdaptiveInstance& a) {
            Json edges = Json::array();
            for (const Edge& e : a.graph.edges()) edges.push_back({e.from, e.to, e.weight});
            return Json{{"nodes", a.graph.size()}, {"edges", edges}, {"visit_prob", a.model.visit_prob}};
          },
          [](const ExplicitFunction& e) { return Json{{"n", e.n}, {"values", e.values}}; },
      },
      payload);
}

inline Json ConstraintJson(const ConstraintSpec& spec) {
  return std::visit(
      Overloaded{
          [](const CardinalitySpec& c) { return Json{{"type", "cardinality"}, {"k", c.k}}; },
          [](const KnapsackSpec& k) { return Json{{"type", "knapsack"}, {"costs", k.costs}, {"budget", k.budget}}; },
          [](const MatroidSpec& m) {
            return std::visit(
                Overloaded{
                    [](const UniformMatroid& u) { return Json{{"type", "matroid"}, {"kind", "uniform"}, {"rank", u.rank}}; },
                    [](const PartitionMatroid& p) {
                      return Json{{"type", "matroid"}, {"kind", "partition"}, {"blocks", p.blocks}, {"caps", p.caps}};
                    },
                    [](const GraphicMatroid& g) {
                      Json edges = Json::array();
                      for (const auto& [u, v] : g.edges) edges.push_back({u, v});
                      return Json{{"type", "matroid"}, {"kind", "graphic"}, {"vertices", g.num_vertices}, {"edges", edges}};
                    },
                    [](const ExplicitFamily& f) {
                      Json sets = Json::array();
                      for (const Subset& s : f.independent) sets.push_back(s.Elements());
                      return Json{{"type", "matroid"}, {"kind", "explicit"}, {"independent", sets}};
                    },
                },
                m.kind);
          },
          [](const PartitionSpec&) { return Json{{"type", "partition"}}; },
      },
      spec);
}

}  // namespace internal

inline Json InstanceToJson(const InstanceFile& file) {
  Json j;
  j["schema"] = std::string(kInstanceSchema);
  j["kind"] = file.kind();
  j["seed"] = file.seed;
  j["payload"] = internal::PayloadJson(file.payload);
  if (file.constraint) j["constraint"] = internal::ConstraintJson(*file.constraint);
  if (file.declares) j["declares"] = *file.declares;
  return j;
}

// Pretty-printed with sorted keys and shortest round-trip floats.
inline std::string SerializeInstance(const InstanceFile& file) { return InstanceToJson(file).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

inline const std::set<std::string, std::less<>>& KnownProperties() {
  static const std::set<std::string, std::less<>> names = {"normalized", "monotone",      "submodular",
                                                          "supermodular", "modular",      "dr_submodular",
                                                          "concave"};
  return names;
}

namespace internal {

inline InstancePayload ParsePayload(const std::string& kind, const Json& j) {
  const std::string where = "payload";
  if (kind == "coverage") {
    CheckKeys(j, where, {"sensors"}, {"grid", "points"});
    if (j.contains("grid") == j.contains("points")) ParseFail(where, "exactly one of 'grid' and 'points' is required");
    std::vector<Sensor> sensors;
    for (const auto& row : GetRows(j["sensors"], "payload.sensors")) {
      if (row.size() != 3) ParseFail("payload.sensors", "each sensor is [x, y, radius]");
      sensors.push_back({{row[0], row[1]}, row[2]});
    }
    if (j.contains("grid")) {
      const Json& g = j["grid"];
      CheckKeys(g, "payload.grid", {"width", "height", "resolution"});
      return CoverageInstance(std::move(sensors), GridField{GetDouble(g["width"], "payload.grid.width"),
                                                            GetDouble(g["height"], "payload.grid.height"),
                                                            GetDouble(g["resolution"], "payload.grid.resolution")});
    }
    std::vector<Point2> points;
    for (const auto& row : GetRows(j["points"], "payload.points")) {
      if (row.size() != 2) ParseFail("payload.points", "each point is [x, y]");
      points.push_back({row[0], row[1]});
    }
    return CoverageInstance(std::move(sensors), std::move(points));
  }
  if (kind == "waterfilling") {
    CheckKeys(j, where, {"noise", "budgets", "user"});
    WaterfillingPayload w{{GetRows(j["noise"], "payload.noise"), GetDoubles(j["budgets"], "payload.budgets")},
                          GetInt(j["user"], "payload.user")};
    w.instance.Validate();
    if (w.user < 0 || w.user >= w.instance.users()) ParseFail("payload.user", "user index out of range");
    return w;
  }
  if (kind == "gaussian") {
    CheckKeys(j, where, {"theta0", "theta1", "sigma0", "sigma1"});
    GaussianClassInstance g{GetVector(j["theta0"], "payload.theta0"), GetVector(j["theta1"], "payload.theta1"),
                            GetMatrix(j["sigma0"], "payload.sigma0"), GetMatrix(j["sigma1"], "payload.sigma1")};
    g.Validate();
    return g;
  }
  if (kind == "regression") {
    CheckKeys(j, where, {"c", "b", "normalized"});
    if (!j["normalized"].is_boolean()) ParseFail("payload.normalized", "expected a boolean");
    RegressionInstance r{GetMatrix(j["c"], "payload.c"), GetVector(j["b"], "payload.b"), j["normalized"].get<bool>()};
    r.Validate();
    return r;
  }
  if (kind == "nqp") {
    CheckKeys(j, where, {"h", "linear", "offset", "a", "rhs"});
    NqpInstance q;
    q.q.b = GetVector(j["linear"], "payload.linear");
    q.q.h = GetMatrix(j["h"], "payload.h", static_cast<int>(q.q.b.size()));
    q.q.c0 = GetDouble(j["offset"], "payload.offset");
    q.domain.a = GetMatrix(j["a"], "payload.a", static_cast<int>(q.q.b.size()));
    q.domain.b = GetVector(j["rhs"], "payload.rhs");
    q.q.Validate();
    q.domain.Validate(q.q.size());
    return q;
  }
  if (kind == "stategraph") {
    CheckKeys(j, where, {"nodes", "edges", "visit_prob"});
    AdaptiveInstance a{StateGraph(GetInt(j["nodes"], "payload.nodes")), {}};
    const Json& edges = j["edges"];
    if (!edges.is_array()) ParseFail("payload.edges", "expected an array");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::string at = "payload.edges[" + std::to_string(i) + "]";
      if (!edges[i].is_array() || edges[i].size() != 3) ParseFail(at, "each edge is [from, to, weight]");
      a.graph.AddEdge(GetInt(edges[i][0], at), GetInt(edges[i][1], at), GetDouble(edges[i][2], at));
    }
    a.model.visit_prob = GetDoubles(j["visit_prob"], "payload.visit_prob");
    a.model.Validate(a.graph.size());
    return a;
  }
  if (kind == "explicit") {
    CheckKeys(j, where, {"n", "values"});
    ExplicitFunction e{GetInt(j["n"], "payload.n"), GetDoubles(j["values"], "payload.values")};
    if (e.n < 1 || e.n > kExplicitMaxN) Fail(ErrorCode::kTooLarge, "explicit functions need 1 <= N <= 14");
    if (e.values.size() != (std::size_t{1} << e.n)) ParseFail("payload.values", "expected exactly 2^N values");
    return e;
  }
  ParseFail("kind", "unknown kind '" + kind + "'");
}

inline ConstraintSpec ParseConstraint(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) ParseFail("constraint", "missing string 'type'");
  const std::string type = j["type"].get<std::string>();
  if (type == "cardinality") {
    CheckKeys(j, "constraint", {"type", "k"});
    return CardinalitySpec{GetInt(j["k"], "constraint.k")};
  }
  if (type == "knapsack") {
    CheckKeys(j, "constraint", {"type", "costs", "budget"});
    KnapsackSpec k{GetDoubles(j["costs"], "constraint.costs"), GetDouble(j["budget"], "constraint.budget")};
    static_cast<void>(Knapsack(k.costs, k.budget));
    return k;
  }
  if (type == "partition") {
    CheckKeys(j, "constraint", {"type"});
    return PartitionSpec{};
  }
  if (type != "matroid") ParseFail("constraint.type", "unknown constraint type '" + type + "'");
  if (!j.contains("kind") || !j["kind"].is_string()) ParseFail("constraint", "matroid needs a string 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "uniform") {
    CheckKeys(j, "constraint", {"type", "kind", "rank"});
    return MatroidSpec{UniformMatroid{GetInt(j["rank"], "constraint.rank")}};
  }
  if (kind == "partition") {
    CheckKeys(j, "constraint", {"type", "kind", "blocks", "caps"});
    PartitionMatroid p;
    if (!j["blocks"].is_array()) ParseFail("constraint.blocks", "expected an array");
    for (const Json& b : j["blocks"]) p.blocks.push_back(GetInts(b, "constraint.blocks"));
    p.caps = GetInts(j["caps"], "constraint.caps");
    return MatroidSpec{p};
  }
  if (kind == "graphic") {
    CheckKeys(j, "constraint", {"type", "kind", "vertices", "edges"});
    GraphicMatroid g{GetInt(j["vertices"], "constraint.vertices"), {}};
    if (!j["edges"].is_array()) ParseFail("constraint.edges", "expected an array");
    for (const Json& e : j["edges"]) {
      const auto uv = GetInts(e, "constraint.edges");
      if (uv.size() != 2) ParseFail("constraint.edges", "each edge is [u, v]");
      g.edges.emplace_back(uv[0], uv[1]);
    }
    return MatroidSpec{g};
  }
  if (kind == "explicit") {
    CheckKeys(j, "constraint", {"type", "kind", "independent"});
    ExplicitFamily f;
    if (!j["independent"].is_array()) ParseFail("constraint.independent", "expected an array");
    // Ground-set size is attached once the payload is known.
    for (const Json& s : j["independent"]) {
      const auto elems = GetInts(s, "constraint.independent");
      uint64_t mask = 0;
      for (int e : elems) {
        if (e < 0 || e >= 64) ParseFail("constraint.independent", "element out of range");
        mask |= uint64_t{1} << e;
      }
      f.independent.push_back(Subset::FromMask(64, mask));
    }
    return MatroidSpec{f};
  }
  ParseFail("constraint.kind", "unknown matroid kind '" + kind + "'");
}

// Resizes explicit families to the ground set and checks sizes against it.
inline void BindConstraint(ConstraintSpec& spec, const InstanceFile& file) {
  const int n = file.size();
  const std::string kind = file.kind();
  std::visit(Overloaded{
                 [&](CardinalitySpec& c) {
                   if (c.k < 0) ParseFail("constraint.k", "k must be >= 0");
                 },
                 [&](KnapsackSpec& k) {
                   if (static_cast<int>(k.costs.size()) != n) ParseFail("constraint.costs", "one cost per element");
                 },
                 [&](MatroidSpec& m) {
                   if (auto* f = std::get_if<ExplicitFamily>(&m.kind)) {
                     for (Subset& s : f->independent) {
                       for (int e : s.Elements()) {
                         if (e >= n) ParseFail("constraint.independent", "element out of range");
                       }
                       s = Subset::FromElements(n, s.Elements());
                     }
                   }
                 },
                 [&](PartitionSpec&) {
                   if (kind != "waterfilling") ParseFail("constraint", "partition needs a waterfilling instance");
                 },
             },
             spec);
}

}  // namespace internal

// Builds the matroid of a matroid constraint over n elements.
inline Matroid BuildMatroid(const MatroidSpec& spec, int n) {
  return std::visit(internal::Overloaded{
                        [n](const UniformMatroid& u) { return Matroid::Uniform(n, u.rank); },
                        [n](const PartitionMatroid& p) { return Matroid::Partition(n, p.blocks, p.caps); },
                        [n](const GraphicMatroid& g) {
                          if (static_cast<int>(g.edges.size()) != n) {
                            Fail(ErrorCode::kBadParams, "graphic matroid needs one edge per element");
                          }
                          return Matroid::Graphic(g.num_vertices, g.edges);
                        },
                        [n](const ExplicitFamily& f) { return Matroid::Explicit(n, f.independent); },
                    },
                    spec.kind);
}

// Throws kParseError for malformed documents and invalid payloads; an
// explicit table beyond the size cap raises kTooLarge.
inline InstanceFile InstanceFromJson(const Json& j) {
  try {
    internal::CheckKeys(j, "instance", {"schema", "kind", "seed", "payload"}, {"constraint", "declares"});
    if (!j["schema"].is_string() || j["schema"].get<std::string>() != kInstanceSchema) {
      internal::ParseFail("schema", "expected '" + std::string(kInstanceSchema) + "'");
    }
    if (!j["kind"].is_string()) internal::ParseFail("kind", "expected a string");
    if (!j["seed"].is_number_unsigned()) internal::ParseFail("seed", "expected a nonnegative integer");
    InstanceFile file;
    file.seed = j["seed"].get<uint64_t>();
    file.payload = internal::ParsePayload(j["kind"].get<std::string>(), j["payload"]);
    if (j.contains("constraint")) {
      ConstraintSpec spec = internal::ParseConstraint(j["constraint"]);
      internal::BindConstraint(spec, file);
      if (auto* m = std::get_if<MatroidSpec>(&spec)) BuildMatroid(*m, file.size());
      file.constraint = std::move(spec);
    }
    if (j.contains("declares")) {
      const Json& d = j["declares"];
      if (!d.is_array()) internal::ParseFail("declares", "expected an array of property names");
      std::vector<std::string> names;
      for (const Json& x : d) {
        if (!x.is_string() || !KnownProperties().contains(x.get<std::string>())) {
          internal::ParseFail("declares", "unknown property " + x.dump());
        }
        names.push_back(x.get<std::string>());
      }
      file.declares = std::move(names);
    }
    return file;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError || e.code() == ErrorCode::kTooLarge) throw;
    Fail(ErrorCode::kParseError, std::string("invalid instance: ") + e.what());
  }
}

inline InstanceFile ParseInstance(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kParseError, std::string("malformed JSON: ") + e.what());
  }
  return InstanceFromJson(j);
}

inline InstanceFile LoadInstance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseInstance(buf.str());
}

inline void SaveInstance(const InstanceFile& file, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kBadParams, "cannot write " + path);
  out << SerializeInstance(file);
}

// ---------------------------------------------------------------------------
// Objectives
// ---------------------------------------------------------------------------

// Set-function view of a discrete instance. Waterfilling uses the payload's
// user; a state graph is its coverage utility over edge sets with every node
// visited. nqp has no set-function view.
inline SetFunctionOracle MakeObjective(const InstanceFile& file) {
  return std::visit(
      internal::Overloaded{
          [](const std::monostate&) -> SetFunctionOracle { Fail(ErrorCode::kBadParams, "instance has no payload"); },
          [](const CoverageInstance& c) { return c.MakeOracle(); },
          [](const WaterfillingPayload& w) { return MakeWaterfillingOracle(w.instance, w.user); },
          [](const GaussianClassInstance& g) { return MakeGaussianKLOracle(g); },
          [](const RegressionInstance& r) { return MakeRSquaredOracle(r); },
          [](const NqpInstance&) -> SetFunctionOracle {
            Fail(ErrorCode::kIncompatibleAlgorithm, "nqp instances are continuous");
          },
          [](const AdaptiveInstance& a) {
            auto graph = std::make_shared<const StateGraph>(a.graph);
            const NodeStates all(static_cast<std::size_t>(a.graph.size()), NodeState::kVisited);
            return SetFunctionOracle(a.graph.num_edges(),
                                     [graph, all](const Subset& s) { return CoverageUtility(*graph, s, all); });
          },
          [](const ExplicitFunction& e) { return MakeExplicitOracle(e.n, e.values); },
      },
      file.payload);
}

// Default property declarations per kind, used when a file declares none.
inline std::vector<std::string> DefaultDeclarations(const std::string& kind) {
  if (kind == "coverage" || kind == "waterfilling" || kind == "stategraph") {
    return {"normalized", "monotone", "submodular"};
  }
  if (kind == "regression") return {"normalized", "monotone"};
  if (kind == "gaussian") return {"normalized"};
  if (kind == "explicit") return {"submodular"};
  if (kind == "nqp") return {"dr_submodular"};
  return {};
}

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

struct GenerateRequest {
  std::string kind = "coverage";
  int n = 10;
  uint64_t seed = 0;
  // Cardinality (or horizon) attached to discrete kinds; 0 omits it.
  int k = 0;
};

inline InstanceFile GenerateInstance(const GenerateRequest& req) {
  InstanceFile file;
  file.seed = req.seed;
  if (req.kind == "coverage") {
    file.payload = GenerateCoverage({.n = req.n}, req.seed);
  } else if (req.kind == "waterfilling") {
    file.payload = WaterfillingPayload{GenerateWaterfilling({.subcarriers = req.n}, req.seed), 0};
  } else if (req.kind == "gaussian") {
    file.payload = GenerateGaussian({.n = req.n}, req.seed);
  } else if (req.kind == "regression") {
    file.payload = GenerateRegression({.n = req.n}, req.seed);
  } else if (req.kind == "nqp") {
    file.payload = GenerateNqp({.n = req.n}, req.seed);
  } else if (req.kind == "stategraph") {
    file.payload = GenerateAdaptive({.n = req.n, .min_visit = 0.5, .max_visit = 1.0}, req.seed);
  } else if (req.kind == "explicit") {
    if (req.n < 1 || req.n > kExplicitMaxN) Fail(ErrorCode::kTooLarge, "explicit functions need 1 <= N <= 14");
    file.payload = ExplicitFunction{req.n, ValueTable(GenerateCoverage({.n = req.n}, req.seed).MakeOracle())};
  } else {
    Fail(ErrorCode::kBadParams, "unknown kind '" + req.kind + "'");
  }
  if (req.k > 0 && req.kind != "nqp") file.constraint = CardinalitySpec{req.k};
  return file;
}

// ---------------------------------------------------------------------------
// Result reports
// ---------------------------------------------------------------------------

struct Certification {
  // Brute-force (or grid, for continuous solvers) optimum.
  double opt = 0.0;
  // value / opt for maximization; absent for minimization.
  std::optional<double> ratio;
  // value - opt for minimization.
  std::optional<double> gap;
  // Exhaustively measured guarantee-relevant quantities (gamma, factor, ...).
  std::map<std::string, double> details;
  bool passed = true;
};

struct ResultReport {
  std::string solver;
  std::string sense = "max";
  std::vector<int> selected;
  std::vector<std::vector<int>> blocks;
  std::vector<int> sequence;
  std::vector<double> point;
  double value = 0.0;
  double guarantee = 0.0;
  int64_t oracle_calls = 0;
  std::vector<int64_t> machine_calls;
  double wall_time_ms = 0.0;
  std::optional<Certification> certification;
  uint64_t seed = 0;
  std::string version = std::string(kToolkitVersion);
};

inline Json ReportToJson(const ResultReport& r) {
  Json j{{"schema", std::string(kResultSchema)}, {"solver", r.solver},     {"sense", r.sense},
         {"value", r.value},         {"guarantee", r.guarantee}, {"oracle_calls", r.oracle_calls},
         {"wall_time_ms", r.wall_time_ms}, {"seed", r.seed}, {"version", r.version}};
  if (!r.selected.empty() || (r.blocks.empty() && r.sequence.empty() && r.point.empty())) j["selected"] = r.selected;
  if (!r.blocks.empty()) j["blocks"] = r.blocks;
  if (!r.sequence.empty()) j["sequence"] = r.sequence;
  if (!r.point.empty()) j["point"] = r.point;
  if (!r.machine_calls.empty()) j["machine_calls"] = r.machine_calls;
  if (r.certification) {
    const Certification& c = *r.certification;
    Json cj{{"opt", c.opt}, {"passed", c.passed}};
    if (c.ratio) cj["ratio"] = *c.ratio;
    if (c.gap) cj["gap"] = *c.gap;
    for (const auto& [k, v] : c.details) cj[k] = v;
    j["certification"] = cj;
  }
  return j;
}

// Doubles with 17 significant digits.
inline std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string JoinInts(const std::vector<int>& v, char sep = ' ') {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

inline constexpr std::string_view kReportCsvHeader =
    "solver,sense,value,guarantee,oracle_calls,wall_time_ms,selected,opt,ratio,gap,passed,seed,version";

// Header plus one row; sets are space-separated element lists and blocks are
// separated by '|'.
inline std::string ReportToCsv(const ResultReport& r) {
  std::string selected = JoinInts(r.selected);
  if (!r.blocks.empty()) {
    selected.clear();
    for (std::size_t b = 0; b < r.blocks.size(); ++b) selected += (b ? "|" : "") + JoinInts(r.blocks[b]);
  } else if (!r.sequence.empty()) {
    selected = JoinInts(r.sequence);
  } else if (r.selected.empty() && !r.point.empty()) {
    for (std::size_t i = 0; i < r.point.size(); ++i) selected += (i ? " " : "") + FormatDouble(r.point[i]);
  }
  std::string row = r.solver + "," + r.sense + "," + FormatDouble(r.value) + "," + FormatDouble(r.guarantee) + "," +
                    std::to_string(r.oracle_calls) + "," + FormatDouble(r.wall_time_ms) + "," + selected + ",";
  if (r.certification) {
    const Certification& c = *r.certification;
    row += FormatDouble(c.opt) + "," + (c.ratio ? FormatDouble(*c.ratio) : "") + "," +
           (c.gap ? FormatDouble(*c.gap) : "") + "," + (c.passed ? "true" : "false");
  } else {
    row += ",,,";
  }
  row += "," + std::to_string(r.seed) + "," + r.version;
  return std::string(kReportCsvHeader) + "\n" + row + "\n";
}

}  // namespace submod
