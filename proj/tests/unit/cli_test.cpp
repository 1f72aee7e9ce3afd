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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "submod/cli.hpp"
#include "submod/instance_io.hpp"
#include "submod/maximize.hpp"
#include "submod/objectives.hpp"
#include "submod/verify.hpp"

namespace submod {
namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), "submod_cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::Run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string WriteFile(const std::string& name, const std::string& text) {
  const std::string path = (std::filesystem::path(::testing::TempDir()) / name).string();
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

std::string SquaredCardinalityFile(int n, const std::string& declares) {
  nlohmann::json values = nlohmann::json::array();
  for (uint64_t m = 0; m < (uint64_t{1} << n); ++m) values.push_back(std::popcount(m) * std::popcount(m));
  return R"({"schema": "submod-instance/1", "kind": "explicit", "seed": 0, "declares": )" + declares +
         R"(, "payload": {"n": )" + std::to_string(n) + R"(, "values": )" + values.dump() + "}}";
}

TEST(InstanceIoTest, RoundTripEveryKind) {
  for (const char* kind : {"coverage", "waterfilling", "gaussian", "regression", "nqp", "stategraph", "explicit"}) {
    const InstanceFile file = GenerateInstance({.kind = kind, .n = 5, .seed = 7, .k = 2});
    const std::string text = SerializeInstance(file);
    const InstanceFile back = ParseInstance(text);
    EXPECT_EQ(SerializeInstance(back), text) << kind;
    EXPECT_EQ(back.kind(), kind);
    EXPECT_EQ(back.seed, 7u);
  }
}

TEST(InstanceIoTest, RoundTripPreservesValues) {
  const CoverageInstance cov = GenerateCoverage({.n = 8}, 11);
  InstanceFile file;
  file.payload = cov;
  const auto f = MakeObjective(ParseInstance(SerializeInstance(file)));
  for (uint64_t m = 0; m < 256; ++m) EXPECT_EQ(f(Subset::FromMask(8, m)), cov.Value(Subset::FromMask(8, m)));

  const RegressionInstance reg = GenerateRegression({.n = 6}, 3);
  file.payload = reg;
  const InstanceFile parsed = ParseInstance(SerializeInstance(file));
  const auto& back = std::get<RegressionInstance>(parsed.payload);
  EXPECT_EQ(back.c, reg.c);
  EXPECT_EQ(back.b, reg.b);
}

TEST(InstanceIoTest, ConstraintsRoundTrip) {
  InstanceFile file = GenerateInstance({.kind = "coverage", .n = 4, .seed = 1});
  const std::vector<ConstraintSpec> specs = {
      CardinalitySpec{2},
      KnapsackSpec{{1.0, 0.5, 2.0, 1.25}, 2.5},
      MatroidSpec{UniformMatroid{2}},
      MatroidSpec{PartitionMatroid{{{0, 1}, {2, 3}}, {1, 1}}},
      MatroidSpec{GraphicMatroid{3, {{0, 1}, {1, 2}, {0, 2}, {0, 1}}}},
      MatroidSpec{ExplicitFamily{{Subset(4), Subset::FromElements(4, {1})}}},
  };
  for (const auto& spec : specs) {
    file.constraint = spec;
    const std::string text = SerializeInstance(file);
    EXPECT_EQ(SerializeInstance(ParseInstance(text)), text);
  }
}

TEST(InstanceIoTest, UnknownFieldsRejected) {
  const std::string base = SerializeInstance(GenerateInstance({.kind = "explicit", .n = 2, .seed = 0, .k = 1}));
  auto with = [&](const std::string& pointer, const nlohmann::json& value) {
    nlohmann::json j = nlohmann::json::parse(base);
    j[nlohmann::json::json_pointer(pointer)] = value;
    return j.dump();
  };
  for (const char* p : {"/extra", "/payload/extra", "/constraint/extra"}) {
    try {
      ParseInstance(with(p, 1));
      ADD_FAILURE() << p;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParseError) << p;
    }
  }
  auto code_of = [](const std::string& text) {
    try {
      ParseInstance(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kOutOfRange;
  };
  EXPECT_EQ(code_of(with("/schema", "submod-instance/0")), ErrorCode::kParseError);
  EXPECT_EQ(code_of(with("/declares", nlohmann::json::array({"convex"}))), ErrorCode::kParseError);
  EXPECT_EQ(code_of(with("/payload/values", nlohmann::json::array({0, 1, 1}))), ErrorCode::kParseError);
  EXPECT_EQ(code_of("{\"schema\": "), ErrorCode::kParseError);
  nlohmann::json big = nlohmann::json::parse(base);
  big["payload"]["n"] = 15;
  EXPECT_EQ(code_of(big.dump()), ErrorCode::kTooLarge);
}

TEST(InstanceIoTest, InvalidPayloadIsParseError) {
  nlohmann::json j = nlohmann::json::parse(SerializeInstance(GenerateInstance({.kind = "waterfilling", .n = 3})));
  j["payload"]["noise"][0][0] = -1.0;
  try {
    ParseInstance(j.dump());
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
  }
}

TEST(CliVerifyTest, CoveragePasses) {
  const std::string path = WriteFile("cov.json", SerializeInstance(GenerateInstance({.kind = "coverage", .n = 8})));
  const CliRun r = RunCli({"verify", path, "--output", "json"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["properties"]["submodular"].get<bool>());
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(CliVerifyTest, SquaredCardinalityFailsWithWitness) {
  const std::string path = WriteFile("sq.json", SquaredCardinalityFile(4, R"(["submodular"])"));
  const CliRun r = RunCli({"verify", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("submodular: false  witness (A="), std::string::npos) << r.out;
}

TEST(CliVerifyTest, CorruptedFileIsExitTwo) {
  const std::string path = WriteFile("bad.json", "{\"schema\": \"submod-instance/1\", \"kind\": ");
  EXPECT_EQ(RunCli({"verify", path}).code, 2);
  EXPECT_EQ(RunCli({"verify", "/nonexistent/instance.json"}).code, 2);
}

TEST(CliVerifyTest, TooLargeIsExitThree) {
  const std::string path = WriteFile("big.json", SerializeInstance(GenerateInstance({.kind = "coverage", .n = 20})));
  EXPECT_EQ(RunCli({"verify", path}).code, 3);
}

TEST(CliVerifyTest, MatroidAxiomsChecked) {
  InstanceFile file = GenerateInstance({.kind = "coverage", .n = 3});
  // {0, 1} and {2} independent but neither 0 nor 1 extends {2}.
  file.constraint = MatroidSpec{ExplicitFamily{{Subset(3), Subset::FromElements(3, {0}), Subset::FromElements(3, {1}),
                                                Subset::FromElements(3, {2}), Subset::FromElements(3, {0, 1})}}};
  const CliRun bad = RunCli({"verify", WriteFile("m.json", SerializeInstance(file))});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("exchange fails"), std::string::npos);
  file.constraint = MatroidSpec{PartitionMatroid{{{0, 1}, {2}}, {1, 1}}};
  EXPECT_EQ(RunCli({"verify", WriteFile("m2.json", SerializeInstance(file))}).code, 0);
}

TEST(CliSolveTest, GreedyCertifiedOnCoverage) {
  const std::string path = WriteFile("g.json", SerializeInstance(GenerateInstance({.kind = "coverage", .n = 10, .seed = 5})));
  const CliRun r = RunCli({"solve", path, "--algorithm", "greedy", "--k", "3", "--certify"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_GE(j["certification"]["ratio"].get<double>(), 1.0 - std::exp(-1.0));
  EXPECT_TRUE(j["certification"]["passed"].get<bool>());
  EXPECT_EQ(j["selected"].size(), 3u);
  const auto f = GenerateCoverage({.n = 10}, 5).MakeOracle();
  EXPECT_EQ(j["certification"]["opt"].get<double>(), BruteForceOptimum(f, Sense::kMax, AtMostK(3)).value);
}

TEST(CliSolveTest, GreediOneMachineMatchesGreedy) {
  const std::string path = WriteFile("gm.json", SerializeInstance(GenerateInstance({.kind = "coverage", .n = 12, .seed = 2})));
  const auto a = nlohmann::json::parse(RunCli({"solve", path, "--algorithm", "greedy", "--k", "4"}).out);
  const auto b = nlohmann::json::parse(RunCli({"solve", path, "--algorithm", "greedi", "--k", "4", "--machines", "1"}).out);
  EXPECT_EQ(a["value"], b["value"]);
  EXPECT_EQ(a["selected"], b["selected"]);
}

TEST(CliSolveTest, MinNormOnMonotoneInstance) {
  const std::string path = WriteFile("mn.json", SerializeInstance(GenerateInstance({.kind = "coverage", .n = 8, .seed = 3})));
  const CliRun r = RunCli({"solve", path, "--algorithm", "minnorm", "--sense", "min", "--certify"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["value"].get<double>(), 0.0);
  EXPECT_TRUE(j["selected"].empty());
}

TEST(CliSolveTest, IncompatibleIsExitFour) {
  const std::string cov = WriteFile("ic.json", SerializeInstance(GenerateInstance({.kind = "coverage", .n = 6, .k = 2})));
  EXPECT_EQ(RunCli({"solve", cov, "--algorithm", "fw"}).code, 4);
  EXPECT_EQ(RunCli({"solve", cov, "--algorithm", "greedy", "--sense", "min"}).code, 4);
  EXPECT_EQ(RunCli({"solve", cov, "--algorithm", "multiway"}).code, 4);
  EXPECT_EQ(RunCli({"solve", cov, "--algorithm", "knapsack"}).code, 4);
  EXPECT_EQ(RunCli({"solve", cov, "--algorithm", "fs"}).code, 4);
  EXPECT_EQ(RunCli({"solve", cov, "--algorithm", "no-such"}).code, 2);
}

TEST(CliSolveTest, FalseDeclarationFailsCertification) {
  // |S|^2 is declared monotone submodular; greedy's bound then rests on a
  // false premise and certification must catch it.
  const std::string path =
      WriteFile("lie.json", SquaredCardinalityFile(4, R"(["normalized", "monotone", "submodular"])"));
  const CliRun r = RunCli({"solve", path, "--algorithm", "greedy", "--k", "2", "--certify"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("guarantee violated"), std::string::npos);
}

TEST(CliSolveTest, CsvHasFixedColumns) {
  const std::string path = WriteFile("csv.json", SerializeInstance(GenerateInstance({.kind = "coverage", .n = 6, .k = 2})));
  const CliRun r = RunCli({"solve", path, "--output", "csv", "--certify"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, kReportCsvHeader);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), std::count(header.begin(), header.end(), ','));
}

TEST(CliSolveTest, EveryAlgorithmOnItsKindCertifies) {
  struct Case {
    std::string kind;
    int n;
    std::vector<std::string> args;
  };
  const std::vector<Case> cases = {
      {"coverage", 9, {"--algorithm", "lazy", "--k", "3"}},
      {"coverage", 9, {"--algorithm", "greedi", "--k", "3", "--machines", "3"}},
      {"coverage", 9, {"--algorithm", "matroid", "--k", "3"}},
      {"coverage", 9, {"--algorithm", "subgradient", "--sense", "min"}},
      {"waterfilling", 6, {"--algorithm", "greedy", "--k", "3"}},
      {"regression", 7, {"--algorithm", "fs", "--k", "3"}},
      {"gaussian", 6, {"--algorithm", "supsub", "--k", "3"}},
      {"stategraph", 5, {"--algorithm", "asg", "--k", "3"}},
      {"explicit", 6, {"--algorithm", "greedy", "--k", "2"}},
  };
  for (const Case& c : cases) {
    const std::string path =
        WriteFile("all_" + c.kind + ".json", SerializeInstance(GenerateInstance({.kind = c.kind, .n = c.n, .seed = 4})));
    std::vector<std::string> args = {"solve", path, "--certify"};
    args.insert(args.end(), c.args.begin(), c.args.end());
    const CliRun r = RunCli(args);
    EXPECT_EQ(r.code, 0) << c.kind << " " << c.args[1] << ": " << r.err;
    EXPECT_TRUE(nlohmann::json::parse(r.out).contains("certification")) << c.kind << " " << c.args[1];
  }
}

TEST(CliBenchTest, UnknownSuite) {
  const CliRun r = RunCli({"bench", "no-such-suite"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("UnknownSuite"), std::string::npos);
}

TEST(CliBenchTest, DeterministicCsv) {
  const CliRun a = RunCli({"bench", "distributed-m-sweep", "--repeats", "2", "--seed", "9"});
  const CliRun b = RunCli({"bench", "distributed-m-sweep", "--repeats", "2", "--seed", "9"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind(std::string(cli::kBenchCsvHeader) + "\n", 0), 0u);
}

TEST(CliBenchTest, RegressionSweepCoversTwoToEight) {
  const auto rows = cli::RunBench("regression-k-sweep", 1, 0);
  std::set<std::string> ks;
  for (const auto& row : rows) ks.insert(row.param);
  EXPECT_EQ(ks, (std::set<std::string>{"2", "3", "4", "5", "6", "7", "8"}));
  EXPECT_EQ(rows.size(), 21u);
}

TEST(CliBenchTest, NqpFrankWolfeMonotoneInBudget) {
  const auto rows = cli::RunBench("nqp-b-sweep", 1, 3);
  double last = -1.0;
  for (const auto& row : rows) {
    if (row.algorithm != "fw") continue;
    EXPECT_GE(row.report.value, last);
    last = row.report.value;
  }
}

TEST(CliBenchTest, WritesCsvFile) {
  const std::string dir = (std::filesystem::path(::testing::TempDir()) / "bench_out").string();
  const CliRun r = RunCli({"bench", "knapsack", "--repeats", "1", "--out", dir});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(dir) / "knapsack.csv"));
  EXPECT_NE(r.out.find("0 failed"), std::string::npos);
}

TEST(CliGenerateTest, OutputParsesAndRoundTrips) {
  const CliRun r = RunCli({"generate", "--kind", "waterfilling", "--n", "4", "--seed", "3", "--partition"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(SerializeInstance(ParseInstance(r.out)), r.out);
  const CliRun k = RunCli({"generate", "--kind", "coverage", "--n", "5", "--budget", "3"});
  const InstanceFile f = ParseInstance(k.out);
  ASSERT_TRUE(f.constraint && std::holds_alternative<KnapsackSpec>(*f.constraint));
  EXPECT_EQ(std::get<KnapsackSpec>(*f.constraint).costs.size(), 5u);
}

}  // namespace
}  // namespace submod
