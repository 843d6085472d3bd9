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

#include "pramforge/mechanism.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "pramforge/info.hpp"
#include "pramforge/optimizer.hpp"
#include "testing/reference.hpp"

namespace pramforge {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("pramforge_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path file(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

MicrodataColumn sample_column(std::size_t n, const std::vector<double>& p,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::uint32_t> dist(p.begin(), p.end());
  std::vector<std::uint32_t> records(n);
  for (auto& r : records) r = dist(rng) + 1;
  return MicrodataColumn::unlabeled(std::move(records), p.size());
}

TEST(Privatize, IdentityMatrixIsNoiseless) {
  const auto x = sample_column(1000, {0.2, 0.5, 0.3}, 1);
  const auto z = privatize(x, PramMatrix{RetentionVector({1, 1, 1})}, 9);
  EXPECT_EQ(z.records(), x.records());
}

TEST(Privatize, ZeroRetentionBinarySwapsDeterministically) {
  const auto x = sample_column(1000, {0.4, 0.6}, 2);
  const auto z = privatize(x, PramMatrix{RetentionVector({0.0, 0.0})}, 9);
  for (std::size_t i = 0; i < x.record_count(); ++i) {
    EXPECT_EQ(z.records()[i], 3u - x.records()[i]);
  }
}

TEST(Privatize, RejectsRecordsBeyondMatrixSize) {
  const auto x = MicrodataColumn::unlabeled({1, 2, 3}, 3);
  EXPECT_THROW(privatize(x, PramMatrix{RetentionVector({0.5, 0.5})}, 1),
               Error);
}

TEST(Privatize, DeterministicAndScheduleIndependent) {
  const auto x = sample_column(20000, {0.3, 0.4, 0.3}, 3);
  const PramMatrix m{RetentionVector({0.6, 0.7, 0.8})};
  const auto a = privatize(x, m, 4242);
  const auto b = privatize(x, m, 4242);
  EXPECT_EQ(a.records(), b.records());

  setenv("PRAM_FORGE_THREADS", "1", 1);
  const auto serial = privatize(x, m, 4242);
  unsetenv("PRAM_FORGE_THREADS");
  EXPECT_EQ(a.records(), serial.records());

  const auto other_seed = privatize(x, m, 4243);
  EXPECT_NE(a.records(), other_seed.records());
}

TEST(Privatize, OutputLawMatchesMarginal) {
  const std::vector<double> probs = {0.3,  0.1,  0.2,  0.08, 0.02,
                                     0.04, 0.06, 0.1,  0.01, 0.09};
  const auto p = validate_distribution(probs);
  const auto report = optimize(p, PrivacyLevel(1.0));
  const PramMatrix m{report.q_star};
  const auto x = sample_column(200000, probs, 5);
  const auto z = privatize(x, m, 77);
  const auto expected = marginal_z(empirical_distribution(x), m.retention());
  const auto observed = empirical_distribution(z);
  EXPECT_LE(testing::tv_distance(observed.probs(), expected.probs()), 0.01);
}

TEST(Privatize, ChiSquareGoodnessOfFit) {
  const std::vector<double> probs = {0.3,  0.1,  0.2,  0.08, 0.02,
                                     0.04, 0.06, 0.1,  0.01, 0.09};
  const auto p = validate_distribution(probs);
  const auto report = optimize(p, PrivacyLevel(1.0));
  const PramMatrix m{report.q_star};
  const auto x = sample_column(100000, probs, 8);
  const auto z = privatize(x, m, 4711);
  const auto expected = marginal_z(empirical_distribution(x), m.retention());
  const double stat =
      testing::chi_square_statistic(frequencies(z).counts(),
                                    expected.probs());
  EXPECT_GE(testing::chi_square_survival(stat, 9.0), 0.001);
}

// Anchors the test-side chi-square helper to externally computed values so
// the goodness-of-fit checks test the mechanism, not the helper.
TEST(ChiSquareHelper, MatchesReferenceSurvivalValues) {
  EXPECT_NEAR(testing::chi_square_survival(3.841458820694124, 1.0), 0.05,
              1e-10);
  EXPECT_NEAR(testing::chi_square_survival(5.0, 3.0), 0.1717971442967335,
              1e-12);
  EXPECT_NEAR(testing::chi_square_survival(27.877164871256575, 9.0), 0.001,
              1e-12);
  EXPECT_NEAR(testing::chi_square_survival(14.684, 9.0), 0.09998974490670846,
              1e-12);
  EXPECT_NEAR(testing::chi_square_survival(49.58788447289881, 29.0), 0.01,
              1e-12);
}

TEST(LoadColumn, MapsLabelsInFirstAppearanceOrder) {
  TempDir dir;
  {
    std::ofstream out(dir.file("data.csv"));
    out << "sex\nF\nM\nF\n";
  }
  const auto column = load_column(dir.file("data.csv"), "sex");
  EXPECT_EQ(column.records(), (std::vector<std::uint32_t>{1, 2, 1}));
  EXPECT_EQ(column.label(1), "F");
  EXPECT_EQ(column.label(2), "M");
}

TEST(LoadColumn, ExplicitLabelMap) {
  TempDir dir;
  {
    std::ofstream out(dir.file("data.csv"));
    out << "sex\nF\nM\nF\n";
  }
  const std::map<std::string, std::uint32_t> labels{{"M", 1}, {"F", 2}};
  const auto column = load_column(dir.file("data.csv"), "sex", labels);
  EXPECT_EQ(column.records(), (std::vector<std::uint32_t>{2, 1, 2}));
}

TEST(LoadColumn, Errors) {
  TempDir dir;
  {
    std::ofstream out(dir.file("data.csv"));
    out << "a,b\n1,2\n";
  }
  try {
    load_column(dir.file("data.csv"), "c");
    FAIL() << "expected MissingColumn";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingColumn);
  }
  { std::ofstream out(dir.file("empty.csv")); }
  try {
    load_column(dir.file("empty.csv"), "a");
    FAIL() << "expected EmptyFile";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyFile);
  }
  const std::map<std::string, std::uint32_t> labels{{"x", 1}, {"y", 2}};
  try {
    load_column(dir.file("data.csv"), "a", labels);
    FAIL() << "expected UnknownLabel";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownLabel);
  }
  EXPECT_THROW(load_column(dir.file("absent.csv"), "a"), Error);
}

TEST(SaveColumn, RoundTripPreservesRecords) {
  TempDir dir;
  const auto column = MicrodataColumn(
      {1, 2, 3, 2, 1}, {"alpha", "beta,comma", "gamma \"quoted\""});
  save_column(column, dir.file("out.csv"), "value");
  const auto loaded = load_column(dir.file("out.csv"), "value");
  EXPECT_EQ(loaded.records(), column.records());
  EXPECT_EQ(loaded.label(2), "beta,comma");
  EXPECT_EQ(loaded.label(3), "gamma \"quoted\"");
}

TEST(SaveColumn, EmptyColumnWritesHeaderOnly) {
  TempDir dir;
  save_column(MicrodataColumn::unlabeled({}, 2), dir.file("empty.csv"),
              "value");
  std::ifstream in(dir.file("empty.csv"));
  std::string line;
  ASSERT_TRUE(std::getline(in, line));
  EXPECT_EQ(line, "value");
  EXPECT_FALSE(std::getline(in, line));
}

TEST(PrivatizationRun, RequiresPassingCertificate) {
  const auto x = sample_column(100, {0.5, 0.5}, 21);
  try {
    PrivatizationRun(x, PramMatrix{RetentionVector({0.9, 0.9})},
                     PrivacyLevel(0.5), 1);
    FAIL() << "expected CertificationFailed";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCertificationFailed);
  }
  const auto [upper, lower] = optimize_binary(PrivacyLevel(0.5));
  const PrivatizationRun run(x, PramMatrix{upper}, PrivacyLevel(0.5), 1);
  EXPECT_TRUE(run.certificate().pass);
  EXPECT_EQ(run.input_fingerprint(), column_fingerprint(x));
  EXPECT_EQ(run.run(x).record_count(), x.record_count());
}

}  // namespace
}  // namespace pramforge
