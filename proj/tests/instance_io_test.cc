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

#include "erasure/instance_io.h"

#include <fstream>
#include <random>
#include <string>

#include "erasure/errors.h"
#include "erasure/reference_instances.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace erasure {
namespace {

using ::erasure::testing::RandomCost;
using ::erasure::testing::RandomJoint;
using ::erasure::testing::RandomStochastic;

std::string TempPath(const std::string& name) {
  return ::testing::TempDir() + "/" + name;
}

TEST(ParseProbabilityTest, DecimalsAndRatios) {
  EXPECT_EQ(*ParseProbability("0.25"), 0.25);
  EXPECT_EQ(*ParseProbability("1/6"), 1.0 / 6);
  EXPECT_EQ(*ParseProbability("2/3"), 2.0 / 3);
  EXPECT_EQ(*ParseProbability("1e-3"), 1e-3);
}

TEST(ParseProbabilityTest, Errors) {
  for (const char* bad : {"", "abc", "1/0", "1/", "/2", "0.5x", "1/2/3"}) {
    EXPECT_EQ(ErrorKindOf(ParseProbability(bad).status()), "ParseError") << bad;
  }
}

TEST(ParseInstanceJsonTest, ExactFixture) {
  const std::string text = R"({
    "format": "erasure-instance/1",
    "x_size": 3, "y_size": 2, "xhat_size": 3,
    "p_x": ["1/3", "1/3", "1/3"],
    "p_y_given_x": [[1, 0], [0, 1], [0, 1]],
    "cost": "hamming",
    "channel": [["1/3", "1/3", "1/3"], ["1/6", "2/3", "1/6"], ["1/2", 0, "1/2"]],
    "labels": {"x": ["a", "b", "c"], "y": ["u", "v"], "xhat": ["a", "b", "c"]}
  })";
  ASSERT_OK_AND_ASSIGN(InstanceFile f, ParseInstanceJson(text));
  EXPECT_EQ(f.p_xy, WeaklyIndependentTernaryInstance().source().matrix());
  EXPECT_EQ(f.cost, HammingCost(3).matrix());
  ASSERT_TRUE(f.channel.has_value());
  EXPECT_EQ(*f.channel, SixthsChannel().matrix());
  EXPECT_EQ(f.labels.y, (std::vector<std::string>{"u", "v"}));
  ASSERT_OK_AND_ASSIGN(ErasureInstance inst, ToInstance(f));
  EXPECT_EQ(inst.xhat_size(), 3);
}

TEST(ParseInstanceJsonTest, JointForm) {
  const std::string text = R"({
    "x_size": 2, "y_size": 2, "xhat_size": 2,
    "p_xy": [["0.7", 0], [0, "0.3"]],
    "cost": [[0, 1], [1, 0]]
  })";
  ASSERT_OK_AND_ASSIGN(InstanceFile f, ParseInstanceJson(text));
  EXPECT_EQ(f.p_xy, BinaryIdentityInstance(0.3)->source().matrix());
  EXPECT_FALSE(f.channel.has_value());
}

TEST(ParseInstanceJsonTest, Errors) {
  EXPECT_EQ(ErrorKindOf(ParseInstanceJson("{not json").status()),
            "ParseError");
  EXPECT_EQ(ErrorKindOf(ParseInstanceJson(R"({"x_size": 2})").status()),
            "ParseError");
  EXPECT_EQ(ErrorKindOf(ParseInstanceJson(R"({
      "x_size": 2, "y_size": 2, "xhat_size": 2,
      "p_xy": [[0.5, 0.5]], "cost": "hamming"})")
                            .status()),
            "DimensionMismatch");
  EXPECT_EQ(ErrorKindOf(ParseInstanceJson(R"({
      "x_size": 2, "y_size": 2, "xhat_size": 2,
      "p_xy": [[0.5, "x"], [0, 0.5]], "cost": "hamming"})")
                            .status()),
            "ParseError");
  EXPECT_EQ(ErrorKindOf(ParseInstanceJson(R"({
      "x_size": 2, "y_size": 2, "xhat_size": 3,
      "p_xy": [[0.5, 0], [0, 0.5]], "cost": "hamming"})")
                            .status()),
            "DimensionMismatch");
}

TEST(ToInstanceTest, ValidatesMatrices) {
  InstanceFile f;
  f.p_xy = Matrix::Constant(2, 2, 0.25);
  f.cost = Matrix::Constant(2, 2, -1.0);
  EXPECT_EQ(ErrorKindOf(ToInstance(f).status()), "InvalidCost");
  f.cost = Matrix::Zero(2, 2);
  f.p_xy(0, 0) = -0.5;
  EXPECT_EQ(ErrorKindOf(ToInstance(f).status()), "NegativeEntry");
}

TEST(RoundTripTest, FilesReloadBitwise) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 25; ++i) {
    InstanceFile f;
    f.p_xy = RandomJoint(rng, 2 + i % 3, 2 + i % 2).matrix();
    f.cost = RandomCost(rng, f.p_xy.rows(), 3).matrix();
    if (i % 2 == 0) f.channel = RandomStochastic(rng, f.p_xy.rows(), 3);
    if (i % 5 == 0) f.labels.x.assign(f.p_xy.rows(), "sym");
    const std::string path = TempPath("roundtrip.json");
    ASSERT_TRUE(WriteInstanceFile(path, f).ok());
    ASSERT_OK_AND_ASSIGN(InstanceFile g, ReadInstanceFile(path));
    EXPECT_EQ(f.p_xy, g.p_xy);
    EXPECT_EQ(f.cost, g.cost);
    EXPECT_EQ(f.channel.has_value(), g.channel.has_value());
    if (f.channel) {
      EXPECT_EQ(*f.channel, *g.channel);
    }
    EXPECT_EQ(f.labels.x, g.labels.x);
    EXPECT_EQ(SerializeInstanceJson(f), SerializeInstanceJson(g));
  }
}

TEST(RoundTripTest, MissingFile) {
  EXPECT_EQ(ErrorKindOf(ReadInstanceFile(TempPath("absent/none.json")).status()),
            "ParseError");
}

}  // namespace
}  // namespace erasure
