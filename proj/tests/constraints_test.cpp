// Copyright 2026 The pram-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pramforge/constraints.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "testing/reference.hpp"

namespace pramforge {
namespace {

RetentionVector uniform_q(std::size_t S) {
  return RetentionVector(
      std::vector<double>(S, 1.0 / static_cast<double>(S)));
}

TEST(BuildConstraintSystem, RowCounts) {
  EXPECT_EQ(build_constraint_system(10, PrivacyLevel(1.0)).rows().size(),
            270u);
  EXPECT_EQ(build_constraint_system(2, PrivacyLevel(0.7)).rows().size(), 4u);
  EXPECT_EQ(build_constraint_system(3, PrivacyLevel(0.0)).rows().size(), 18u);
  EXPECT_THROW(build_constraint_system(1, PrivacyLevel(1.0)), Error);
}

TEST(BuildConstraintSystem, RowOrderIsLexicographic) {
  const auto system = build_constraint_system(3, PrivacyLevel(0.5));
  const auto& rows = system.rows();
  // (k,l) pairs in order (0,1),(0,2),(1,0),(1,2),(2,0),(2,1), families 1..3.
  EXPECT_EQ(rows[0].k, 0u);
  EXPECT_EQ(rows[0].l, 1u);
  EXPECT_EQ(rows[0].family, 1);
  EXPECT_EQ(rows[2].family, 3);
  EXPECT_EQ(rows[3].k, 0u);
  EXPECT_EQ(rows[3].l, 2u);
  EXPECT_EQ(rows.back().k, 2u);
  EXPECT_EQ(rows.back().l, 1u);
  EXPECT_EQ(rows.back().family, 3);
}

TEST(BuildConstraintSystem, UniformPointSitsOnBoundaryAtZeroBudget) {
  const auto system = build_constraint_system(3, PrivacyLevel(0.0));
  const RetentionVector q = uniform_q(3);
  EXPECT_TRUE(is_feasible(q, system, 1e-12));
  for (const ConstraintRow& row : system.rows()) {
    EXPECT_NEAR(row.evaluate(q), row.bound, 1e-15);
  }
}

TEST(BuildConstraintSystem, UniformPointStrictlyInteriorAtPositiveBudget) {
  const auto system = build_constraint_system(3, PrivacyLevel(0.5));
  const RetentionVector q = uniform_q(3);
  EXPECT_TRUE(is_feasible(q, system, 0.0));
  for (const ConstraintRow& row : system.rows()) {
    EXPECT_LT(row.evaluate(q), row.bound - 1e-3);
  }
}

TEST(IsFeasible, UniformRetentionAlwaysFeasible) {
  for (std::size_t S : {2u, 3u, 5u, 10u}) {
    for (double a : {0.0, 0.3, 1.0, 2.0}) {
      const auto system = build_constraint_system(S, PrivacyLevel(a));
      EXPECT_TRUE(is_feasible(uniform_q(S), system, 1e-12));
    }
  }
}

TEST(IsFeasible, RejectsHighRetentionBinary) {
  const auto system = build_constraint_system(2, PrivacyLevel(1.0));
  EXPECT_FALSE(is_feasible(RetentionVector({0.9, 0.9}), system));
}

TEST(IsFeasible, BoundaryPointAtTightTolerance) {
  const double v = std::exp(1.0) / (1.0 + std::exp(1.0));
  const auto system = build_constraint_system(2, PrivacyLevel(1.0));
  EXPECT_TRUE(is_feasible(RetentionVector({v, v}), system, 1e-12));
}

TEST(IsFeasible, DimensionMismatchThrows) {
  const auto system = build_constraint_system(3, PrivacyLevel(1.0));
  EXPECT_THROW(is_feasible(RetentionVector({0.5, 0.5}), system), Error);
}

TEST(DpRatio, SymmetricUniformBinaryChannel) {
  EXPECT_DOUBLE_EQ(dp_ratio(PramMatrix{RetentionVector({0.5, 0.5})}), 1.0);
}

TEST(DpRatio, BinaryBoundaryEqualsExpAlpha) {
  const double v = std::exp(1.0) / (1.0 + std::exp(1.0));
  EXPECT_NEAR(dp_ratio(PramMatrix{RetentionVector({v, v})}), std::exp(1.0),
              1e-12);
}

TEST(DpRatio, CertainRetentionIsNotPrivate) {
  EXPECT_TRUE(std::isinf(
      dp_ratio(PramMatrix{RetentionVector({1.0, 0.5, 0.5})})));
  // Deterministic swap leaks as well: some outputs are impossible under one
  // input and certain under the other.
  EXPECT_TRUE(
      std::isinf(dp_ratio(PramMatrix{RetentionVector({0.0, 0.0})})));
}

TEST(DpRatio, ConstantOutputIsPerfectlyPrivate) {
  // q = (1,0) maps every record to category 1.
  EXPECT_DOUBLE_EQ(dp_ratio(PramMatrix{RetentionVector({1.0, 0.0})}), 1.0);
}

TEST(Certify, PassAndFailExamples) {
  const Certificate ok =
      certify(PramMatrix{RetentionVector({0.5, 0.5})}, PrivacyLevel(1.0));
  EXPECT_TRUE(ok.pass);
  EXPECT_DOUBLE_EQ(ok.dp_ratio, 1.0);
  EXPECT_NEAR(ok.exp_alpha, std::exp(1.0), 1e-15);

  const Certificate bad =
      certify(PramMatrix{RetentionVector({0.9, 0.9})}, PrivacyLevel(0.5));
  EXPECT_FALSE(bad.pass);
  EXPECT_NEAR(bad.dp_ratio, 9.0, 1e-12);
  EXPECT_GE(bad.family, 1);
  EXPECT_LE(bad.family, 3);
  EXPECT_NE(bad.k, bad.kprime);
}

// The linearized rows and the ratio test must accept exactly the same
// retention vectors.
TEST(Equivalence, RowsMatchRatioOnRandomPoints) {
  std::mt19937_64 rng(20260808);
  int checked = 0;
  for (std::size_t S = 2; S <= 8; ++S) {
    for (double a : {0.3, 1.0, 2.0}) {
      const PrivacyLevel alpha(a);
      const auto system = build_constraint_system(S, alpha);
      const double bound = std::exp(a) + 1e-9;
      for (int trial = 0; trial < 480; ++trial) {
        const RetentionVector q(testing::random_unit_vector(rng, S));
        const bool rows_ok = is_feasible(q, system, 1e-9);
        const bool ratio_ok = dp_ratio(PramMatrix{q}) <= bound;
        ASSERT_EQ(rows_ok, ratio_ok)
            << "S=" << S << " alpha=" << a << " trial=" << trial;
        ++checked;
      }
    }
  }
  EXPECT_GE(checked, 10000);
}

TEST(Monotonicity, FeasibilityIsPreservedAsBudgetGrows) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t S = 2 + rng() % 7;
    const RetentionVector q(testing::random_unit_vector(rng, S));
    bool feasible_before = false;
    for (double a : {0.2, 0.6, 1.1, 1.9, 3.0}) {
      const bool feasible =
          is_feasible(q, build_constraint_system(S, PrivacyLevel(a)));
      if (feasible_before) EXPECT_TRUE(feasible);
      feasible_before = feasible;
    }
  }
}

}  // namespace
}  // namespace pramforge
