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

#include "erasure/weak_independence.h"

#include <random>

#include "erasure/errors.h"
#include "erasure/reference_instances.h"
#include "erasure/solver.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace erasure {
namespace {

using ::erasure::testing::RandomCost;
using ::erasure::testing::RandomDistribution;
using ::erasure::testing::RandomJoint;
using ::erasure::testing::RandomStochastic;

TEST(IsWeaklyIndependentTest, TernaryReference) {
  ASSERT_OK_AND_ASSIGN(
      WeakIndependenceReport r,
      IsWeaklyIndependent(WeaklyIndependentTernaryInstance().source()));
  EXPECT_TRUE(r.weakly_independent);
  EXPECT_EQ(r.row_rank, 2);
  EXPECT_EQ(r.row_count, 3);
  EXPECT_FALSE(r.excluded_massless_rows);
}

TEST(IsWeaklyIndependentTest, DiagonalBinaryIsNot) {
  for (double p : {0.1, 0.3, 0.5}) {
    ASSERT_OK_AND_ASSIGN(WeakIndependenceReport r,
                         IsWeaklyIndependent(BinaryIdentityInstance(p)->source()));
    EXPECT_FALSE(r.weakly_independent);
    EXPECT_EQ(r.row_rank, 2);
  }
}

TEST(IsWeaklyIndependentTest, ProductJointIs) {
  std::mt19937_64 rng(41);
  const Distribution px = RandomDistribution(rng, 2);
  const Distribution py = RandomDistribution(rng, 4);
  Matrix joint(2, 4);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 4; ++y) joint(x, y) = px[x] * py[y];
  }
  ASSERT_OK_AND_ASSIGN(WeakIndependenceReport r,
                       IsWeaklyIndependent(*JointSource::Create(joint)));
  EXPECT_TRUE(r.weakly_independent);
  EXPECT_EQ(r.row_rank, 1);
}

TEST(IsWeaklyIndependentTest, MasslessRowsExcluded) {
  Matrix joint(3, 2);
  joint << 0.5, 0.0, 0.0, 0.0, 0.0, 0.5;
  ASSERT_OK_AND_ASSIGN(WeakIndependenceReport r,
                       IsWeaklyIndependent(*JointSource::Create(joint)));
  EXPECT_TRUE(r.excluded_massless_rows);
  EXPECT_EQ(r.row_count, 2);
  EXPECT_FALSE(r.weakly_independent);
}

TEST(IsWeaklyIndependentTest, RejectsBadTolerance) {
  const JointSource src = BinaryIdentityInstance(0.3)->source();
  EXPECT_EQ(ErrorKindOf(IsWeaklyIndependent(src, 0.0).status()),
            "ConfigError");
}

TEST(IsWeaklyIndependentTest, ReportsSingularValues) {
  ASSERT_OK_AND_ASSIGN(
      WeakIndependenceReport r,
      IsWeaklyIndependent(BinaryIdentityInstance(0.3)->source(), 1e-6));
  ASSERT_EQ(r.singular_values.size(), 2u);
  EXPECT_NEAR(r.singular_values[0], 1.0, 1e-12);
  EXPECT_EQ(r.tolerance, 1e-6);
}

TEST(VerdictTest, Examples) {
  const ErasureInstance binary = *BinaryIdentityInstance(0.3);
  EXPECT_EQ(*ClassifyRepeatedSymbol(binary, 0.0),
            RepeatedSymbolVerdict::kOptimal);
  EXPECT_EQ(*ClassifyRepeatedSymbol(WeaklyIndependentTernaryInstance(), 0.0),
            RepeatedSymbolVerdict::kNotOptimalWeaklyIndependent);
  EXPECT_EQ(*ClassifyRepeatedSymbol(binary, 0.1),
            RepeatedSymbolVerdict::kNotOptimalPositiveEps);
  EXPECT_EQ(ErrorKindOf(ClassifyRepeatedSymbol(binary, -0.1).status()),
            "DomainError");
}

TEST(VerdictTest, NonOptimalVerdictsAreWitnessed) {
  const ErasureInstance ternary = WeaklyIndependentTernaryInstance();
  EXPECT_LT(SolveMinCost(ternary, 0.0)->min_cost,
            ComputeGammaMin(ternary.p_x(), ternary.cost())->value - 0.1);
  for (double p : {0.2, 0.4}) {
    const ErasureInstance binary = *BinaryIdentityInstance(p);
    EXPECT_LT(SolveMinCost(binary, 0.1)->min_cost, p - 1e-3);
  }
}

TEST(PropertyTest, ScaleInvariance) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 50; ++i) {
    const int nx = 2 + i % 3, ny = 2 + (i / 3) % 3;
    const Matrix cond = RandomStochastic(rng, nx, ny);
    const JointSource a =
        *JointSource::FromConditional(RandomDistribution(rng, nx), cond);
    const JointSource b =
        *JointSource::FromConditional(RandomDistribution(rng, nx), cond);
    ASSERT_OK_AND_ASSIGN(WeakIndependenceReport ra, IsWeaklyIndependent(a));
    ASSERT_OK_AND_ASSIGN(WeakIndependenceReport rb, IsWeaklyIndependent(b));
    EXPECT_EQ(ra.weakly_independent, rb.weakly_independent);
    EXPECT_EQ(ra.row_rank, rb.row_rank);
    EXPECT_EQ(ra.row_count, rb.row_count);
  }
}

TEST(PropertyTest, MoreRowsThanColumnsForcesWeakIndependence) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    ASSERT_OK_AND_ASSIGN(WeakIndependenceReport r,
                         IsWeaklyIndependent(RandomJoint(rng, 3, 2)));
    EXPECT_TRUE(r.weakly_independent);
    EXPECT_LE(r.row_rank, 2);
  }
}

TEST(PropertyTest, ZeroLeakageVerticesMatchRowDependence) {
  // Random linear objectives over the leakage-free polytope land on its
  // vertices. Dependent rows admit a vertex that still carries information
  // about X; independent rows confine every vertex to constant channels.
  std::mt19937_64 rng(44);
  for (int i = 0; i < 20; ++i) {
    const bool dependent_rows = i % 2 == 0;
    const JointSource src =
        dependent_rows ? RandomJoint(rng, 3, 2) : RandomJoint(rng, 2, 3);
    ASSERT_OK_AND_ASSIGN(WeakIndependenceReport rep, IsWeaklyIndependent(src));
    ASSERT_EQ(rep.weakly_independent, dependent_rows);
    double best_info = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const ErasureInstance inst = *ErasureInstance::Create(
          src, RandomCost(rng, src.x_size(), 3));
      ASSERT_OK_AND_ASSIGN(SolverResult lp, SolveZeroLeakage(inst));
      const double info =
          MutualInformation(*JointXXhat(src.marginal_x(), lp.channel));
      best_info = std::max(best_info, info);
      if (!dependent_rows) EXPECT_LE(info, 1e-9);
    }
    if (dependent_rows) EXPECT_GT(best_info, 1e-6);
  }
}

}  // namespace
}  // namespace erasure
