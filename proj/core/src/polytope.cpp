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

#include "pramforge/polytope.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

namespace pramforge {
namespace {

constexpr double kOracleDedupTolerance = 1e-7;
constexpr std::size_t kOracleMaxDimension = 5;

bool valid_mixed_popcount(std::size_t S, std::uint64_t mask) {
  const int pc = std::popcount(mask);
  return pc >= 2 && pc <= static_cast<int>(S) - 2;
}

}  // namespace

VertexValues vertex_values(std::size_t S, PrivacyLevel alpha) {
  if (S < 2) {
    throw Error(ErrorCode::kTooFewCategories,
                "vertex values need S >= 2, got " + std::to_string(S));
  }
  const double ea = std::exp(alpha.alpha());
  const double ema = std::exp(-alpha.alpha());
  const double Sm1 = static_cast<double>(S - 1);
  return VertexValues{
      ea / (ea + Sm1),
      ema / (ema + Sm1),
      ema / (ea + Sm1),
      ea / (ema + Sm1),
  };
}

double prop2_threshold(std::size_t S) {
  if (S < 4) {
    throw Error(ErrorCode::kNotApplicable,
                "closed-form vertex threshold is defined for S >= 4");
  }
  const double Sd = static_cast<double>(S);
  return std::log((Sd - 2.0 + std::sqrt(Sd * (Sd - 4.0))) / 2.0);
}

bool prop2_applicable(std::size_t S, PrivacyLevel alpha) {
  if (S < 4) return false;
  return alpha.alpha() <= prop2_threshold(S);
}

Prop2Vertices::Prop2Vertices(std::size_t S, PrivacyLevel alpha)
    : S_(S), alpha_(alpha), values_{} {
  if (!prop2_applicable(S, alpha)) {
    throw Error(ErrorCode::kNotApplicable,
                "closed-form vertices need S >= 4 and alpha <= threshold");
  }
  if (S > 62) {
    throw Error(ErrorCode::kTooLarge, "2^S candidates overflow at S > 62");
  }
  values_ = vertex_values(S, alpha);
}

VertexCandidate Prop2Vertices::make_sign_candidate(
    std::uint64_t plus_mask) const {
  std::vector<double> q(S_);
  for (std::size_t k = 0; k < S_; ++k) {
    q[k] = (plus_mask >> k) & 1 ? values_.v_plus : values_.v_minus;
  }
  const std::uint64_t full = size() - 1;
  PatternKind kind = plus_mask == full  ? PatternKind::kAllPlus
                     : plus_mask == 0   ? PatternKind::kAllMinus
                                        : PatternKind::kMixed;
  return VertexCandidate{kind, plus_mask, kNoSpecial,
                         RetentionVector(std::move(q))};
}

VertexCandidate Prop2Vertices::make_special_candidate(PatternKind kind,
                                                      std::size_t index) const {
  const bool is_min = kind == PatternKind::kMinSpecial;
  std::vector<double> q(S_, is_min ? values_.v_plus : values_.v_minus);
  q[index] = is_min ? values_.v_min : values_.v_max;
  const std::uint64_t full = size() - 1;
  return VertexCandidate{kind, is_min ? (full & ~(std::uint64_t{1} << index))
                                      : 0,
                         index, RetentionVector(std::move(q))};
}

VertexCandidate Prop2Vertices::const_iterator::operator*() const {
  switch (stage_) {
    case 0:
      return parent_->make_sign_candidate(parent_->size() - 1);
    case 1:
      return parent_->make_sign_candidate(0);
    case 2:
      return parent_->make_sign_candidate(cursor_);
    case 3:
      return parent_->make_special_candidate(PatternKind::kMinSpecial,
                                             cursor_);
    default:
      return parent_->make_special_candidate(PatternKind::kMaxSpecial,
                                             cursor_);
  }
}

Prop2Vertices::const_iterator& Prop2Vertices::const_iterator::operator++() {
  const std::size_t S = parent_->dimension();
  const std::uint64_t limit = parent_->size();
  switch (stage_) {
    case 0:
      stage_ = 1;
      break;
    case 1:
      stage_ = 2;
      cursor_ = 0;
      [[fallthrough]];
    case 2:
      do {
        ++cursor_;
      } while (cursor_ < limit && !valid_mixed_popcount(S, cursor_));
      if (cursor_ >= limit) {
        stage_ = 3;
        cursor_ = 0;
      }
      break;
    case 3:
      if (++cursor_ >= S) {
        stage_ = 4;
        cursor_ = 0;
      }
      break;
    case 4:
      if (++cursor_ >= S) {
        stage_ = 5;
        cursor_ = 0;
      }
      break;
    default:
      break;
  }
  return *this;
}

Prop2Vertices::const_iterator Prop2Vertices::const_iterator::operator++(int) {
  const_iterator copy = *this;
  ++*this;
  return copy;
}

Prop2Vertices::const_iterator Prop2Vertices::begin() const {
  return const_iterator(this, 0, 0);
}

Prop2Vertices::const_iterator Prop2Vertices::end() const {
  return const_iterator(this, 5, 0);
}

Prop2Vertices enumerate_vertices_prop2(std::size_t S, PrivacyLevel alpha) {
  return Prop2Vertices(S, alpha);
}

namespace {

// Solves the S x S equality system assembled from the chosen rows in place.
// Returns false when the submatrix is numerically singular.
bool solve_equality_system(const std::vector<ConstraintRow>& rows,
                           const std::array<std::size_t, 5>& chosen,
                           std::size_t S, std::array<double, 5>* solution) {
  double a[5][6] = {};
  double scale = 0.0;
  for (std::size_t i = 0; i < S; ++i) {
    const ConstraintRow& row = rows[chosen[i]];
    a[i][row.k] = row.coef_k;
    a[i][row.l] = row.coef_l;
    a[i][S] = row.bound;
    scale = std::max({scale, std::abs(row.coef_k), std::abs(row.coef_l)});
  }
  const double pivot_floor = 1e-10 * scale;
  for (std::size_t col = 0; col < S; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < S; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) <= pivot_floor) return false;
    if (pivot != col) {
      for (std::size_t c = col; c <= S; ++c) std::swap(a[pivot][c], a[col][c]);
    }
    for (std::size_t r = 0; r < S; ++r) {
      if (r == col) continue;
      const double factor = a[r][col] / a[col][col];
      if (factor == 0.0) continue;
      for (std::size_t c = col; c <= S; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  for (std::size_t i = 0; i < S; ++i) (*solution)[i] = a[i][S] / a[i][i];
  return true;
}

}  // namespace

std::vector<RetentionVector> enumerate_vertices_oracle(std::size_t S,
                                                       PrivacyLevel alpha) {
  if (S < 2) {
    throw Error(ErrorCode::kTooFewCategories,
                "oracle needs S >= 2, got " + std::to_string(S));
  }
  if (S > kOracleMaxDimension) {
    throw Error(ErrorCode::kTooLarge,
                "oracle enumeration is combinatorial; S <= 5 required");
  }
  const ConstraintSystem system = build_constraint_system(S, alpha);
  const std::vector<ConstraintRow>& rows = system.rows();
  const std::size_t R = rows.size();

  // Coordinates touched by each row; a subset can only be nonsingular if the
  // union covers all S coordinates.
  std::vector<std::uint32_t> touch(R);
  for (std::size_t i = 0; i < R; ++i) {
    touch[i] = (1u << rows[i].k) | (1u << rows[i].l);
  }
  const std::uint32_t full = (1u << S) - 1;

  std::vector<std::vector<double>> found;
  std::array<std::size_t, 5> chosen{};
  std::array<double, 5> solution{};

  // Iterate all size-S index combinations c[0] < ... < c[S-1].
  for (std::size_t i = 0; i < S; ++i) chosen[i] = i;
  while (true) {
    std::uint32_t covered = 0;
    for (std::size_t i = 0; i < S; ++i) covered |= touch[chosen[i]];
    if (covered == full &&
        solve_equality_system(rows, chosen, S, &solution)) {
      bool in_box = true;
      std::vector<double> q(S);
      for (std::size_t i = 0; i < S; ++i) {
        if (!std::isfinite(solution[i]) ||
            solution[i] < -kFeasibilityTolerance ||
            solution[i] > 1.0 + kFeasibilityTolerance) {
          in_box = false;
          break;
        }
        q[i] = std::clamp(solution[i], 0.0, 1.0);
      }
      if (in_box &&
          is_feasible(RetentionVector(q), system, kFeasibilityTolerance)) {
        bool duplicate = false;
        for (const std::vector<double>& other : found) {
          double dist = 0.0;
          for (std::size_t i = 0; i < S; ++i) {
            dist = std::max(dist, std::abs(other[i] - q[i]));
          }
          if (dist <= kOracleDedupTolerance) {
            duplicate = true;
            break;
          }
        }
        if (!duplicate) found.push_back(std::move(q));
      }
    }
    // next combination
    std::size_t i = S;
    while (i > 0 && chosen[i - 1] == R - S + (i - 1)) --i;
    if (i == 0) break;
    ++chosen[i - 1];
    for (std::size_t j = i; j < S; ++j) chosen[j] = chosen[j - 1] + 1;
  }

  std::sort(found.begin(), found.end());
  std::vector<RetentionVector> out;
  out.reserve(found.size());
  for (std::vector<double>& q : found) out.emplace_back(std::move(q));
  return out;
}

}  // namespace pramforge
