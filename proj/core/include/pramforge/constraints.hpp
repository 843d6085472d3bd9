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

#ifndef PRAMFORGE_CONSTRAINTS_HPP_
#define PRAMFORGE_CONSTRAINTS_HPP_

#include <cstddef>
#include <vector>

#include "pramforge/types.hpp"

namespace pramforge {

inline constexpr double kFeasibilityTolerance = 1e-9;

// One linear inequality coef_k * q[k] + coef_l * q[l] <= bound. Every privacy
// constraint couples exactly two coordinates.
struct ConstraintRow {
  std::size_t k;   // 0-based coordinate indices, k != l
  std::size_t l;
  int family;      // 1, 2 or 3; see build_constraint_system
  double coef_k;
  double coef_l;
  double bound;

  double evaluate(const RetentionVector& q) const {
    return coef_k * q[k] + coef_l * q[l];
  }
};

// The linearized privacy polytope for retention vectors: 3S(S-1) rows for
// S >= 3, 2S(S-1) rows for S = 2 (the third family only exists with a third
// category to land on).
class ConstraintSystem {
 public:
  ConstraintSystem(std::vector<ConstraintRow> rows, PrivacyLevel alpha,
                   std::size_t size)
      : rows_(std::move(rows)), alpha_(alpha), size_(size) {}

  const std::vector<ConstraintRow>& rows() const noexcept { return rows_; }
  PrivacyLevel alpha() const noexcept { return alpha_; }
  std::size_t size() const noexcept { return size_; }

 private:
  std::vector<ConstraintRow> rows_;
  PrivacyLevel alpha_;
  std::size_t size_;
};

// Instantiates, for every ordered pair (k,l) with x = q_k and y = q_l:
//   family 1:  (S-1)x + e^a y <= e^a
//   family 2:  -x - (S-1)e^a y <= -1
//   family 3:  -x + e^a y <= e^a - 1          (only when S >= 3)
// Row order is lexicographic in (k, l, family). Throws kTooFewCategories.
ConstraintSystem build_constraint_system(std::size_t S, PrivacyLevel alpha);

// True iff every row satisfies coefficients . q <= bound + tol (absolute).
// Throws kDimensionMismatch.
bool is_feasible(const RetentionVector& q, const ConstraintSystem& system,
                 double tol = kFeasibilityTolerance);

// Supremum over z and over neighboring inputs of the likelihood ratio of the
// randomization channel; +infinity when a denominator vanishes against a
// positive numerator. Ratios with both sides zero never distinguish inputs
// and are skipped.
double dp_ratio(const PramMatrix& matrix);

struct Certificate {
  double dp_ratio;
  double exp_alpha;
  bool pass;
  // 1-based category pair and constraint family achieving the supremum.
  std::size_t k;
  std::size_t kprime;
  int family;
};

// pass iff dp_ratio <= e^a * (1 + tol).
Certificate certify(const PramMatrix& matrix, PrivacyLevel alpha,
                    double tol = kFeasibilityTolerance);

}  // namespace pramforge

#endif  // PRAMFORGE_CONSTRAINTS_HPP_
