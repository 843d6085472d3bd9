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

#ifndef PRAMFORGE_TYPES_HPP_
#define PRAMFORGE_TYPES_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pramforge/error.hpp"

namespace pramforge {

// Tolerances used by the validated constructors below. Input data may be
// rounded, so distributions get a looser gate than rows we construct ourselves.
inline constexpr double kDistributionTolerance = 1e-9;
inline constexpr double kMatrixRowTolerance = 1e-12;

// Probability vector over S >= 2 categories. Categories are 1-based
// contiguous integers everywhere in this library; string labels exist only at
// the I/O boundary (see MicrodataColumn). Immutable after construction.
class CategoricalDistribution {
 public:
  // Validates and (when |sum - 1| <= 1e-9) renormalizes. Throws
  // Error{kNegativeMass, kNotNormalized, kTooFewCategories}.
  static CategoricalDistribution validate(std::vector<double> probs);

  std::size_t size() const noexcept { return probs_.size(); }
  const std::vector<double>& probs() const noexcept { return probs_; }
  double operator[](std::size_t index) const { return probs_[index]; }

 private:
  explicit CategoricalDistribution(std::vector<double> probs)
      : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

// Same operation under its interface name.
CategoricalDistribution validate_distribution(std::vector<double> probs);

// Privacy-loss budget in nats. Finite and nonnegative.
class PrivacyLevel {
 public:
  explicit PrivacyLevel(double alpha);

  double alpha() const noexcept { return alpha_; }
  double exp_alpha() const noexcept;

 private:
  double alpha_;
};

// Per-category retention probabilities q, each in [0,1]. The randomization
// matrix is entirely determined by this vector; see PramMatrix.
class RetentionVector {
 public:
  explicit RetentionVector(std::vector<double> q);

  std::size_t size() const noexcept { return q_.size(); }
  const std::vector<double>& values() const noexcept { return q_; }
  double operator[](std::size_t index) const { return q_[index]; }

  bool operator==(const RetentionVector& other) const noexcept {
    return q_ == other.q_;
  }

 private:
  std::vector<double> q_;
};

// Row-stochastic randomization matrix with M[k][k] = q_k and the remaining
// row mass spread uniformly over the other S-1 categories. Rows are implied
// by the retention vector; entries are materialized on demand.
class PramMatrix {
 public:
  explicit PramMatrix(RetentionVector retention);

  std::size_t size() const noexcept { return retention_.size(); }
  const RetentionVector& retention() const noexcept { return retention_; }

  // 0-based row/column access.
  double entry(std::size_t row, std::size_t col) const;
  std::vector<double> row(std::size_t row_index) const;

 private:
  RetentionVector retention_;
};

// An ordered sequence of category ids in {1..S} with display labels.
// n may be zero.
class MicrodataColumn {
 public:
  MicrodataColumn(std::vector<std::uint32_t> records,
                  std::vector<std::string> labels);

  // Labels default to "1".."S".
  static MicrodataColumn unlabeled(std::vector<std::uint32_t> records,
                                   std::size_t category_count);

  std::size_t category_count() const noexcept { return labels_.size(); }
  std::size_t record_count() const noexcept { return records_.size(); }
  const std::vector<std::uint32_t>& records() const noexcept { return records_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::uint32_t id) const { return labels_.at(id - 1); }

 private:
  std::vector<std::uint32_t> records_;
  std::vector<std::string> labels_;
};

// Cell counts: f_k for samples, F_k for populations.
class FrequencyTable {
 public:
  explicit FrequencyTable(std::vector<std::uint64_t> counts)
      : counts_(std::move(counts)) {}

  std::size_t size() const noexcept { return counts_.size(); }
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
  std::uint64_t operator[](std::size_t index) const { return counts_[index]; }
  std::uint64_t total() const noexcept;

 private:
  std::vector<std::uint64_t> counts_;
};

// counts[k-1] = number of records equal to k.
FrequencyTable frequencies(const MicrodataColumn& column);

// Empirical distribution counts/n of a nonempty column. Throws kEmptyInput.
CategoricalDistribution empirical_distribution(const MicrodataColumn& column);

}  // namespace pramforge

#endif  // PRAMFORGE_TYPES_HPP_
