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
#include <limits>

namespace pramforge {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct RatioWitness {
  double ratio = 0.0;
  std::size_t k = 0;       // 0-based here; certify converts
  std::size_t kprime = 0;
  int family = 1;
};

// Ratio of two channel probabilities, with 0/0 treated as non-distinguishing.
inline double safe_ratio(double num, double den) {
  if (den > 0.0) return num / den;
  return num > 0.0 ? kInf : -1.0;  // -1 never wins the max
}

RatioWitness dp_ratio_witness(const PramMatrix& matrix) {
  const std::size_t S = matrix.size();
  const RetentionVector& q = matrix.retention();
  const double Sm1 = static_cast<double>(S - 1);
  RatioWitness best;
  best.ratio = -1.0;
  for (std::size_t k = 0; k < S; ++k) {
    for (std::size_t l = 0; l < S; ++l) {
      if (k == l) continue;
      const double r1 = safe_ratio(Sm1 * q[k], 1.0 - q[l]);
      const double r2 = safe_ratio(1.0 - q[k], Sm1 * q[l]);
      const double r3 = S >= 3 ? safe_ratio(1.0 - q[k], 1.0 - q[l]) : -1.0;
      if (r1 > best.ratio) best = {r1, k, l, 1};
      if (r2 > best.ratio) best = {r2, k, l, 2};
      if (r3 > best.ratio) best = {r3, k, l, 3};
    }
  }
  if (best.ratio < 0.0) best.ratio = 0.0;  // all-zero numerators
  return best;
}

}  // namespace

ConstraintSystem build_constraint_system(std::size_t S, PrivacyLevel alpha) {
  if (S < 2) {
    throw Error(ErrorCode::kTooFewCategories,
                "constraint system needs S >= 2, got " + std::to_string(S));
  }
  const double ea = alpha.exp_alpha();
  const double Sm1 = static_cast<double>(S - 1);
  std::vector<ConstraintRow> rows;
  rows.reserve(S * (S - 1) * (S >= 3 ? 3 : 2));
  for (std::size_t k = 0; k < S; ++k) {
    for (std::size_t l = 0; l < S; ++l) {
      if (k == l) continue;
      rows.push_back({k, l, 1, Sm1, ea, ea});
      rows.push_back({k, l, 2, -1.0, -Sm1 * ea, -1.0});
      if (S >= 3) {
        rows.push_back({k, l, 3, -1.0, ea, ea - 1.0});
      }
    }
  }
  return ConstraintSystem(std::move(rows), alpha, S);
}

bool is_feasible(const RetentionVector& q, const ConstraintSystem& system,
                 double tol) {
  if (q.size() != system.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "retention vector has " + std::to_string(q.size()) +
                    " entries, system expects " +
                    std::to_string(system.size()));
  }
  for (const ConstraintRow& row : system.rows()) {
    if (row.evaluate(q) > row.bound + tol) return false;
  }
  return true;
}

double dp_ratio(const PramMatrix& matrix) {
  return dp_ratio_witness(matrix).ratio;
}

Certificate certify(const PramMatrix& matrix, PrivacyLevel alpha, double tol) {
  const RatioWitness w = dp_ratio_witness(matrix);
  const double ea = alpha.exp_alpha();
  Certificate cert;
  cert.dp_ratio = w.ratio;
  cert.exp_alpha = ea;
  cert.pass = w.ratio <= ea * (1.0 + tol);
  cert.k = w.k + 1;
  cert.kprime = w.kprime + 1;
  cert.family = w.family;
  return cert;
}

}  // namespace pramforge
