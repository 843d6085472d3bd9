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

#ifndef PRAMFORGE_MECHANISM_HPP_
#define PRAMFORGE_MECHANISM_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "pramforge/constraints.hpp"
#include "pramforge/types.hpp"

namespace pramforge {

// M[k][k] = q_k, M[k][j] = (1-q_k)/(S-1) for j != k.
PramMatrix build_matrix(const RetentionVector& q);

// Draws each output record independently from row x_i of the matrix. The
// randomness for record i comes from a counter-based stream keyed by
// (seed, i): identical inputs give identical output no matter how records
// are scheduled across threads. Throws kCategoryOutOfRange when a record id
// exceeds the matrix size.
MicrodataColumn privatize(const MicrodataColumn& x, const PramMatrix& matrix,
                          std::uint64_t seed);

// Reads one column of a header-style CSV. Distinct cell strings map to ids
// 1..S in first-appearance order unless an explicit label map is given.
// Throws kMissingColumn, kEmptyFile, kUnknownLabel, kIoFailure.
MicrodataColumn load_column(
    const std::filesystem::path& path, const std::string& column,
    const std::optional<std::map<std::string, std::uint32_t>>& labels =
        std::nullopt);

// Writes the column as a single-column CSV with the given header, one
// labeled value per row, order preserved. Throws kIoFailure.
void save_column(const MicrodataColumn& column,
                 const std::filesystem::path& path,
                 const std::string& column_name);

// FNV-1a hash of the record stream; identifies the input a run was made from.
std::string column_fingerprint(const MicrodataColumn& column);

// A privatization that is constructible only with a passing certificate for
// the declared privacy level.
class PrivatizationRun {
 public:
  // Throws kCertificationFailed unless certify(matrix, alpha) passes.
  PrivatizationRun(const MicrodataColumn& input, PramMatrix matrix,
                   PrivacyLevel alpha, std::uint64_t seed);

  const std::string& input_fingerprint() const noexcept {
    return fingerprint_;
  }
  const PramMatrix& matrix() const noexcept { return matrix_; }
  PrivacyLevel alpha() const noexcept { return alpha_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const Certificate& certificate() const noexcept { return certificate_; }

  // Applies the certified matrix to the column it was built for.
  MicrodataColumn run(const MicrodataColumn& input) const;

 private:
  std::string fingerprint_;
  PramMatrix matrix_;
  PrivacyLevel alpha_;
  std::uint64_t seed_;
  Certificate certificate_;
};

}  // namespace pramforge

#endif  // PRAMFORGE_MECHANISM_HPP_
