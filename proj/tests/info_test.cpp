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

#include "pramforge/info.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "testing/reference.hpp"

namespace pramforge {
namespace {

TEST(Entropy, KnownValues) {
  EXPECT_NEAR(
      entropy(validate_distribution({0.25, 0.25, 0.25, 0.25})).value(),
      std::log(4.0), 1e-15);
  EXPECT_DOUBLE_EQ(entropy(validate_distribution({1.0, 0.0})).value(), 0.0);
  // -0.3 ln 0.3 - 0.7 ln 0.7
  EXPECT_NEAR(entropy(validate_distribution({0.3, 0.7})).value(),
              0.6108643020548935, 1e-15);
}

TEST(MarginalZ, IdentityChannelKeepsInput) {
  const auto p = validate_distribution({0.2, 0.5, 0.3});
  const auto m = marginal_z(p, RetentionVector({1.0, 1.0, 1.0}));
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(m[k], p[k], 1e-15);
}

TEST(MarginalZ, BinaryHalfRetention) {
  const auto m = marginal_z(validate_distribution({0.3, 0.7}),
                            RetentionVector({0.5, 0.5}));
  EXPECT_NEAR(m[0], 0.5, 1e-15);
  EXPECT_NEAR(m[1], 0.5, 1e-15);
}

TEST(MarginalZ, ThreeCategoryExample) {
  const auto m = marginal_z(validate_distribution({0.5, 0.3, 0.2}),
                            RetentionVector({0.4, 0.7, 0.1}));
  EXPECT_NEAR(m[0], 0.335, 1e-12);
  EXPECT_NEAR(m[1], 0.45, 1e-12);
  EXPECT_NEAR(m[2], 0.215, 1e-12);
}

TEST(MarginalZ, DimensionMismatchThrows) {
  EXPECT_THROW(marginal_z(validate_distribution({0.5, 0.5}),
                          RetentionVector({0.5, 0.5, 0.5})),
               Error);
}

TEST(MutualInformation, UniformRetentionGivesZero) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t S = 2 + rng() % 9;
    const auto p = validate_distribution(testing::random_distribution(rng, S));
    const RetentionVector q(
        std::vector<double>(S, 1.0 / static_cast<double>(S)));
    EXPECT_LE(mutual_information(p, q).value(), 1e-12);
  }
}

TEST(MutualInformation, NoiselessBinaryChannel) {
  EXPECT_NEAR(mutual_information(validate_distribution({0.5, 0.5}),
                                 RetentionVector({1.0, 1.0}))
                  .value(),
              std::log(2.0), 1e-15);
}

TEST(MutualInformation, BinaryHighRetention) {
  // log 2 - h(0.9) with h the binary entropy in nats
  EXPECT_NEAR(mutual_information(validate_distribution({0.5, 0.5}),
                                 RetentionVector({0.9, 0.9}))
                  .value(),
              0.3680642071684971, 1e-12);
}

TEST(MutualInformation, ZeroMassCategoriesDropOut) {
  // f terms of never-observed inputs vanish; the value matches the
  // three-entropy route on the degenerate joint.
  const std::vector<double> probs = {0.0, 0.5, 0.5};
  const std::vector<double> q = {0.3, 0.8, 0.6};
  const double fast = mutual_information(validate_distribution(probs),
                                         RetentionVector(q))
                          .value();
  EXPECT_NEAR(fast, testing::reference_mi(probs, q), 1e-12);
  EXPECT_TRUE(std::isfinite(fast));
}

TEST(MutualInformation, AgreesWithThreeEntropyRoute) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t S = 2 + rng() % 9;
    const auto p = testing::random_distribution(rng, S);
    const auto q = testing::random_unit_vector(rng, S);
    const double fast =
        mutual_information(validate_distribution(p), RetentionVector(q))
            .value();
    EXPECT_NEAR(fast, testing::reference_mi(p, q), 1e-10);
  }
}

TEST(MutualInformation, ConvexInRetention) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t S : {2u, 5u, 10u}) {
    const auto p = validate_distribution(testing::random_distribution(rng, S));
    for (int trial = 0; trial < 200; ++trial) {
      const auto qa = testing::random_unit_vector(rng, S);
      const auto qb = testing::random_unit_vector(rng, S);
      const double theta = unit(rng);
      std::vector<double> mix(S);
      for (std::size_t k = 0; k < S; ++k) {
        mix[k] = theta * qa[k] + (1.0 - theta) * qb[k];
      }
      const double lhs = mutual_information(p, RetentionVector(mix)).value();
      const double rhs =
          theta * mutual_information(p, RetentionVector(qa)).value() +
          (1.0 - theta) * mutual_information(p, RetentionVector(qb)).value();
      EXPECT_LE(lhs, rhs + 1e-9);
    }
  }
}

TEST(MutualInformation, BinaryFlipSymmetry) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = validate_distribution(testing::random_distribution(rng, 2));
    const double q1 = unit(rng), q2 = unit(rng);
    const double a = mutual_information(p, RetentionVector({q1, q2})).value();
    const double b =
        mutual_information(p, RetentionVector({1.0 - q1, 1.0 - q2})).value();
    EXPECT_NEAR(a, b, 1e-12);
  }
}

TEST(PluginMi, PerfectCopyRecoversEntropy) {
  const auto x = MicrodataColumn::unlabeled({1, 2, 1, 2, 1, 2, 1, 2}, 2);
  EXPECT_NEAR(plugin_mi(x, x).value(), std::log(2.0), 1e-12);
}

TEST(PluginMi, ConstantOutputHasNoInformation) {
  const auto x = MicrodataColumn::unlabeled({1, 2, 1, 2}, 2);
  const auto z = MicrodataColumn::unlabeled({2, 2, 2, 2}, 2);
  EXPECT_DOUBLE_EQ(plugin_mi(x, z).value(), 0.0);
}

TEST(PluginMi, IndependentColumnsNearZero) {
  std::mt19937_64 rng(41);
  const std::size_t n = 100000;
  std::vector<std::uint32_t> x(n), z(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = 1 + rng() % 4;
    z[i] = 1 + rng() % 4;
  }
  EXPECT_LE(plugin_mi(MicrodataColumn::unlabeled(x, 4),
                      MicrodataColumn::unlabeled(z, 4))
                .value(),
            0.01);
}

TEST(PluginMi, ErrorsOnBadInput) {
  const auto a = MicrodataColumn::unlabeled({1, 2}, 2);
  const auto b = MicrodataColumn::unlabeled({1}, 2);
  const auto empty = MicrodataColumn::unlabeled({}, 2);
  EXPECT_THROW(plugin_mi(a, b), Error);
  EXPECT_THROW(plugin_mi(empty, empty), Error);
}

// Expanding the exact joint of a rational (p, q) pair into counts makes the
// plug-in estimator reproduce the closed-form value exactly.
TEST(PluginMi, MatchesClosedFormOnExactJointCounts) {
  // p = (0.3, 0.7), q = (0.8, 0.6): joint * 100 is integral.
  std::vector<std::uint32_t> x, z;
  auto add = [&](std::uint32_t xi, std::uint32_t zi, int count) {
    for (int i = 0; i < count; ++i) {
      x.push_back(xi);
      z.push_back(zi);
    }
  };
  add(1, 1, 24);  // 0.3 * 0.8
  add(1, 2, 6);   // 0.3 * 0.2
  add(2, 1, 28);  // 0.7 * 0.4
  add(2, 2, 42);  // 0.7 * 0.6
  const double plugin = plugin_mi(MicrodataColumn::unlabeled(x, 2),
                                  MicrodataColumn::unlabeled(z, 2))
                            .value();
  const double closed = mutual_information(validate_distribution({0.3, 0.7}),
                                           RetentionVector({0.8, 0.6}))
                            .value();
  EXPECT_NEAR(plugin, closed, 1e-10);
}

}  // namespace
}  // namespace pramforge
