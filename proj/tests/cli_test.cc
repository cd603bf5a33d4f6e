// Copyright 2026 The Erasure Cost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_split.h"
#include "erasure/instance_io.h"
#include "erasure/reference_instances.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "test_util.h"

namespace erasure::cli {
namespace {

using json = nlohmann::json;
using ::erasure::testing::RefHInverse;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string TempPath(const std::string& name) {
  return ::testing::TempDir() + "/" + name;
}

std::string Fixture(const std::string& kind, const std::string& p = "0.3") {
  const std::string path = TempPath(kind + "_" + p + ".json");
  CliRun r = Invoke({"fixture", "--kind", kind, "--p", p, "--out", path});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  return path;
}

std::string ReadAll(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(CliSolveTest, BinaryZeroBudget) {
  CliRun r = Invoke({"solve", "--instance", Fixture("binary"), "--eps", "0"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  json doc = json::parse(r.out);
  EXPECT_NEAR(doc["min_cost"].get<double>(), 0.3, 1e-6);
  EXPECT_EQ(doc["status"], "Converged");
  EXPECT_EQ(doc["version"], kVersion);
  EXPECT_TRUE(doc["config"].contains("optimality_tol"));
  EXPECT_EQ(doc["channel"].size(), 2u);
  EXPECT_TRUE(doc.contains("leakage"));
  EXPECT_TRUE(doc.contains("iterations"));
}

TEST(CliSolveTest, BlocklengthDividesBudget) {
  const std::string path = Fixture("binary", "0.5");
  CliRun r = Invoke({"solve", "--instance", path, "--eps", "0.4", "--n", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  json doc = json::parse(r.out);
  EXPECT_NEAR(doc["eps_per_letter"].get<double>(), 0.2, 1e-15);
  EXPECT_NEAR(doc["min_cost"].get<double>(),
              RefHInverse(std::numbers::ln2 - 0.2), 1e-4);
}

TEST(CliSolveTest, WeaklyIndependentTernary) {
  CliRun r = Invoke(
      {"solve", "--instance", Fixture("weakly-independent"), "--eps", "0"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_LE(json::parse(r.out)["min_cost"].get<double>(), 0.5 + 1e-6);
}

TEST(CliSolveTest, IterationCapExitCode) {
  CliRun r = Invoke({"solve", "--instance", Fixture("weakly-independent"), "--eps",
                  "0.05", "--max-iters", "1", "--tol", "1e-14"});
  EXPECT_EQ(r.code, kExitIterationCap);
  EXPECT_EQ(json::parse(r.out)["status"], "IterationCap");
}

TEST(CliErrorTest, MachineReadableLines) {
  CliRun missing = Invoke({"solve", "--instance", TempPath("none.json"), "--eps",
                        "0"});
  EXPECT_EQ(missing.code, kExitValidation);
  json err = json::parse(missing.err);
  EXPECT_EQ(err["error"], "ParseError");
  EXPECT_TRUE(err.contains("message"));

  CliRun negative = Invoke({"solve", "--instance", Fixture("binary"), "--eps",
                         "-1"});
  EXPECT_EQ(negative.code, kExitValidation);
  EXPECT_EQ(json::parse(negative.err)["error"], "DomainError");

  CliRun usage = Invoke({"frobnicate"});
  EXPECT_EQ(usage.code, kExitValidation);
  EXPECT_EQ(json::parse(usage.err)["error"], "UsageError");

  CliRun bad_grid = Invoke({"sweep", "--instance", Fixture("binary"),
                         "--eps-grid", "0:1", "--out", TempPath("x.csv")});
  EXPECT_EQ(bad_grid.code, kExitValidation);
  EXPECT_EQ(json::parse(bad_grid.err)["error"], "ParseError");

  const std::string broken = TempPath("broken.json");
  std::ofstream(broken) << R"({"x_size": 2, "y_size": 2, "xhat_size": 2,
      "p_xy": [[0.5, 0], [0, 0.5]], "cost": [[0, -1], [1, 0]]})";
  CliRun invalid = Invoke({"check", "--instance", broken});
  EXPECT_EQ(invalid.code, kExitValidation);
  EXPECT_EQ(json::parse(invalid.err)["error"], "InvalidCost");
}

TEST(CliVersionTest, PrintsVersion) {
  CliRun r = Invoke({"--version"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find(kVersion), std::string::npos);
}

TEST(CliCheckTest, ReportsVerdict) {
  CliRun r = Invoke({"check", "--instance", Fixture("weakly-independent")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  json doc = json::parse(r.out);
  EXPECT_TRUE(doc["weakly_independent"].get<bool>());
  EXPECT_EQ(doc["row_rank"], 2);
  EXPECT_EQ(doc["verdict"], "NotOptimalWeaklyIndependent");

  CliRun b = Invoke({"check", "--instance", Fixture("binary"), "--eps", "0.1"});
  json bdoc = json::parse(b.out);
  EXPECT_FALSE(bdoc["weakly_independent"].get<bool>());
  EXPECT_EQ(bdoc["verdict"], "NotOptimalPositiveEps");
  CliRun z = Invoke({"check", "--instance", Fixture("binary")});
  EXPECT_EQ(json::parse(z.out)["verdict"], "Optimal");
}

TEST(CliSweepTest, BinaryCurveMatchesClosedForm) {
  const std::string csv = TempPath("sweep.csv");
  CliRun r = Invoke({"sweep", "--instance", Fixture("binary", "0.5"),
                  "--eps-grid", "0:0.7:8", "--out", csv});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::vector<std::string> lines =
      absl::StrSplit(ReadAll(csv), '\n', absl::SkipEmpty());
  ASSERT_EQ(lines.size(), 9u);
  EXPECT_EQ(lines[0], "eps,min_cost,leakage,status");
  double prev = INFINITY;
  for (size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> cells = absl::StrSplit(lines[i], ',');
    ASSERT_EQ(cells.size(), 4u);
    const double eps = std::stod(cells[0]);
    const double cost = std::stod(cells[1]);
    EXPECT_NEAR(eps, 0.1 * (i - 1), 1e-12);
    EXPECT_LE(cost, prev + 1e-12);
    prev = cost;
    EXPECT_NEAR(cost, RefHInverse(std::max(0.0, std::numbers::ln2 - eps)),
                1e-4);
    EXPECT_EQ(cells[3], "Converged");
  }
  json doc = json::parse(r.out);
  EXPECT_EQ(doc["rows"], 8);
  EXPECT_EQ(doc["version"], kVersion);
}

TEST(CliSimulateTest, RepeatedEncoder) {
  CliRun r = Invoke({"simulate", "--instance", Fixture("weakly-independent"),
                  "--encoder", "repeated", "--n", "50", "--trials", "200",
                  "--seed", "42", "--threads", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  json doc = json::parse(r.out);
  EXPECT_EQ(doc["plugin_leakage_per_letter"].get<double>(), 0.0);
  EXPECT_EQ(doc["seed"], 42);
  EXPECT_EQ(doc["threads"], 2);
  EXPECT_EQ(doc["version"], kVersion);
  EXPECT_TRUE(doc["cost_quantiles"].contains("0.9"));
}

TEST(CliSimulateTest, ChannelSources) {
  const std::string path = Fixture("weakly-independent");
  CliRun from_file = Invoke({"simulate", "--instance", path, "--encoder",
                          "product", "--n", "2", "--trials", "10", "--seed",
                          "1"});
  ASSERT_EQ(from_file.code, kExitOk) << from_file.err;
  EXPECT_LE(json::parse(from_file.out)["plugin_leakage_per_letter"].get<double>(),
            1e-12);

  CliRun solved = Invoke({"simulate", "--instance", Fixture("binary"),
                       "--encoder", "finite:256", "--channel-from-solve",
                       "--eps", "0.1", "--n", "100", "--trials", "50",
                       "--seed", "3"});
  ASSERT_EQ(solved.code, kExitOk) << solved.err;
  json doc = json::parse(solved.out);
  EXPECT_TRUE(doc.contains("solve"));
  EXPECT_EQ(doc["solve"]["status"], "Converged");

  CliRun none = Invoke({"simulate", "--instance", Fixture("binary"), "--encoder",
                     "product", "--n", "2", "--trials", "2", "--seed", "1"});
  EXPECT_EQ(none.code, kExitValidation);
  EXPECT_EQ(json::parse(none.err)["error"], "ConfigError");

  CliRun bad = Invoke({"simulate", "--instance", path, "--encoder", "finite:x",
                    "--n", "2", "--trials", "2", "--seed", "1"});
  EXPECT_EQ(bad.code, kExitValidation);
}

TEST(CliSimulateTest, ThreadCountDoesNotChangeOutput) {
  const std::string path = Fixture("binary");
  std::vector<std::string> base = {"simulate",  "--instance",
                                   path,        "--encoder",
                                   "finite:64", "--channel-from-solve",
                                   "--eps",     "0.1",
                                   "--n",       "30",
                                   "--trials",  "101",
                                   "--seed",    "5"};
  auto strip_threads = [](const std::string& out) {
    json doc = json::parse(out);
    doc.erase("threads");
    return doc.dump();
  };
  std::vector<std::string> one = base, four = base;
  one.insert(one.end(), {"--threads", "1"});
  four.insert(four.end(), {"--threads", "4"});
  EXPECT_EQ(strip_threads(Invoke(one).out), strip_threads(Invoke(four).out));
}

TEST(CliSimulateTest, EnvironmentCapsThreads) {
  setenv("ERASURE_COST_THREADS", "1", 1);
  CliRun r = Invoke({"simulate", "--instance", Fixture("binary"), "--encoder",
                  "repeated", "--n", "5", "--trials", "5", "--seed", "1"});
  unsetenv("ERASURE_COST_THREADS");
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(json::parse(r.out)["threads"], 1);
}

TEST(CliFixtureTest, RoundTripsBitwise) {
  for (const char* p : {"0.3", "0.1234567890123"}) {
    const std::string path = Fixture("binary", p);
    ASSERT_OK_AND_ASSIGN(InstanceFile f, ReadInstanceFile(path));
    EXPECT_EQ(f.p_xy, BinaryIdentityInstance(std::stod(p))->source().matrix());
    const std::string again = TempPath("again.json");
    ASSERT_TRUE(WriteInstanceFile(again, f).ok());
    EXPECT_EQ(ReadAll(path), ReadAll(again));
  }
  ASSERT_OK_AND_ASSIGN(InstanceFile t,
                       ReadInstanceFile(Fixture("weakly-independent")));
  EXPECT_EQ(*t.channel, SixthsChannel().matrix());
  EXPECT_EQ(Invoke({"fixture", "--kind", "bogus", "--out", TempPath("b.json")})
                .code,
            kExitValidation);
}

TEST(CliVerifyTest, AllClaimsPass) {
  CliRun r = Invoke({"verify-paper"});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  std::vector<std::string> lines =
      absl::StrSplit(r.out, '\n', absl::SkipEmpty());
  ASSERT_GT(lines.size(), 5u);
  for (size_t i = 0; i + 1 < lines.size(); ++i) {
    EXPECT_TRUE(lines[i].ends_with(" : PASS")) << lines[i];
  }
  EXPECT_NE(r.out.find("sixths channel cost = 0.5"), std::string::npos);
  EXPECT_NE(r.out.find("Gamma_min = 0.6667"), std::string::npos);
}

}  // namespace
}  // namespace erasure::cli
