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

#include "pramforge/types.hpp"

#include <cmath>
#include <numeric>
#include <utility>

namespace pramforge {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kNegativeMass: return "NegativeMass";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kTooFewCategories: return "TooFewCategories";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kCategoryOutOfRange: return "CategoryOutOfRange";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kEmptyFile: return "EmptyFile";
    case ErrorCode::kMissingColumn: return "MissingColumn";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kSingularMatrix: return "SingularMatrix";
    case ErrorCode::kInconsistentTables: return "InconsistentTables";
    case ErrorCode::kNotApplicable: return "NotApplicable";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kInfeasibleStrategy: return "InfeasibleStrategy";
    case ErrorCode::kCertificationFailed: return "CertificationFailed";
  }
  return "UnknownError";
}

CategoricalDistribution CategoricalDistribution::validate(
    std::vector<double> probs) {
  if (probs.size() < 2) {
    throw Error(ErrorCode::kTooFewCategories,
                "a distribution needs at least 2 categories, got " +
                    std::to_string(probs.size()));
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) {  // also rejects NaN
      throw Error(ErrorCode::kNegativeMass,
                  "probability entry " + std::to_string(p) + " is negative");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kDistributionTolerance) {
    throw Error(ErrorCode::kNotNormalized,
                "probabilities sum to " + std::to_string(sum));
  }
  for (double& p : probs) p /= sum;
  return CategoricalDistribution(std::move(probs));
}

CategoricalDistribution validate_distribution(std::vector<double> probs) {
  return CategoricalDistribution::validate(std::move(probs));
}

PrivacyLevel::PrivacyLevel(double alpha) : alpha_(alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw Error(ErrorCode::kOutOfRange,
                "privacy level must be finite and nonnegative, got " +
                    std::to_string(alpha));
  }
}

double PrivacyLevel::exp_alpha() const noexcept { return std::exp(alpha_); }

RetentionVector::RetentionVector(std::vector<double> q) : q_(std::move(q)) {
  if (q_.empty()) {
    throw Error(ErrorCode::kEmptyInput, "retention vector is empty");
  }
  for (double v : q_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kOutOfRange,
                  "retention probability " + std::to_string(v) +
                      " outside [0,1]");
    }
  }
}

PramMatrix::PramMatrix(RetentionVector retention)
    : retention_(std::move(retention)) {
  const std::size_t S = retention_.size();
  if (S < 2) {
    throw Error(ErrorCode::kTooFewCategories,
                "a randomization matrix needs at least 2 categories");
  }
  for (std::size_t k = 0; k < S; ++k) {
    const double off = (1.0 - retention_[k]) / static_cast<double>(S - 1);
    double row_sum = retention_[k];
    for (std::size_t j = 1; j < S; ++j) row_sum += off;
    if (std::abs(row_sum - 1.0) > kMatrixRowTolerance) {
      throw Error(ErrorCode::kOutOfRange,
                  "row " + std::to_string(k + 1) + " sums to " +
                      std::to_string(row_sum));
    }
  }
}

double PramMatrix::entry(std::size_t row, std::size_t col) const {
  const std::size_t S = size();
  if (row >= S || col >= S) {
    throw Error(ErrorCode::kOutOfRange, "matrix index out of range");
  }
  if (row == col) return retention_[row];
  return (1.0 - retention_[row]) / static_cast<double>(S - 1);
}

std::vector<double> PramMatrix::row(std::size_t row_index) const {
  const std::size_t S = size();
  if (row_index >= S) {
    throw Error(ErrorCode::kOutOfRange, "matrix row out of range");
  }
  std::vector<double> out(S, (1.0 - retention_[row_index]) /
                                 static_cast<double>(S - 1));
  out[row_index] = retention_[row_index];
  return out;
}

MicrodataColumn::MicrodataColumn(std::vector<std::uint32_t> records,
                                 std::vector<std::string> labels)
    : records_(std::move(records)), labels_(std::move(labels)) {
  const std::uint32_t S = static_cast<std::uint32_t>(labels_.size());
  for (std::uint32_t id : records_) {
    if (id < 1 || id > S) {
      throw Error(ErrorCode::kCategoryOutOfRange,
                  "record id " + std::to_string(id) + " outside {1.." +
                      std::to_string(S) + "}");
    }
  }
}

MicrodataColumn MicrodataColumn::unlabeled(std::vector<std::uint32_t> records,
                                           std::size_t category_count) {
  std::vector<std::string> labels(category_count);
  for (std::size_t k = 0; k < category_count; ++k) {
    labels[k] = std::to_string(k + 1);
  }
  return MicrodataColumn(std::move(records), std::move(labels));
}

std::uint64_t FrequencyTable::total() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(),
                         std::uint64_t{0});
}

FrequencyTable frequencies(const MicrodataColumn& column) {
  std::vector<std::uint64_t> counts(column.category_count(), 0);
  for (std::uint32_t id : column.records()) ++counts[id - 1];
  return FrequencyTable(std::move(counts));
}

CategoricalDistribution empirical_distribution(const MicrodataColumn& column) {
  if (column.record_count() == 0) {
    throw Error(ErrorCode::kEmptyInput, "cannot estimate from an empty column");
  }
  const FrequencyTable table = frequencies(column);
  const double n = static_cast<double>(column.record_count());
  std::vector<double> probs(table.size());
  for (std::size_t k = 0; k < table.size(); ++k) {
    probs[k] = static_cast<double>(table[k]) / n;
  }
  return CategoricalDistribution::validate(std::move(probs));
}

}  // namespace pramforge
