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

#ifndef PRAMFORGE_POLYTOPE_HPP_
#define PRAMFORGE_POLYTOPE_HPP_

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <vector>

#include "pramforge/constraints.hpp"
#include "pramforge/types.hpp"

namespace pramforge {

// The four coordinate levels vertices of the privacy polytope can take.
// At alpha = 0 all four collapse to 1/S.
struct VertexValues {
  double v_plus;   // e^a  / (e^a  + S - 1)
  double v_minus;  // e^-a / (e^-a + S - 1)
  double v_min;    // e^-a / (e^a  + S - 1)
  double v_max;    // e^a  / (e^-a + S - 1)
};

VertexValues vertex_values(std::size_t S, PrivacyLevel alpha);

// Largest alpha for which the closed-form vertex list below is exhaustive:
// log((S - 2 + sqrt(S(S-4))) / 2). Defined for S >= 4.
double prop2_threshold(std::size_t S);

// True iff S >= 4 and alpha <= prop2_threshold(S).
bool prop2_applicable(std::size_t S, PrivacyLevel alpha);

enum class PatternKind {
  kAllPlus,     // every coordinate at v_plus
  kAllMinus,    // every coordinate at v_minus
  kMixed,       // v_plus / v_minus signs with 2 <= #plus <= S-2
  kMinSpecial,  // one coordinate at v_min, the rest at v_plus
  kMaxSpecial,  // one coordinate at v_max, the rest at v_minus
};

inline constexpr std::size_t kNoSpecial = static_cast<std::size_t>(-1);

struct VertexCandidate {
  PatternKind kind;
  std::uint64_t plus_mask;     // bit k set = coordinate k at v_plus
  std::size_t special_index;   // kNoSpecial unless kind is a special
  RetentionVector q;
};

// Lazy, deterministically ordered family of the 2^S closed-form vertices:
// AllPlus; AllMinus; all Mixed sign vectors in ascending mask order;
// MinSpecial(0..S-1); MaxSpecial(0..S-1). Candidates are materialized one at
// a time, so iterating never allocates the whole family.
class Prop2Vertices {
 public:
  // Throws kNotApplicable when the closed-form hypothesis fails and
  // kTooLarge for S > 62 (candidate count would overflow).
  Prop2Vertices(std::size_t S, PrivacyLevel alpha);

  std::size_t dimension() const noexcept { return S_; }
  PrivacyLevel alpha() const noexcept { return alpha_; }
  const VertexValues& values() const noexcept { return values_; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << S_; }

  VertexCandidate make_sign_candidate(std::uint64_t plus_mask) const;
  VertexCandidate make_special_candidate(PatternKind kind,
                                         std::size_t index) const;

  class const_iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = VertexCandidate;
    using difference_type = std::ptrdiff_t;

    const_iterator() = default;
    const_iterator(const Prop2Vertices* parent, int stage,
                   std::uint64_t cursor)
        : parent_(parent), stage_(stage), cursor_(cursor) {}

    VertexCandidate operator*() const;
    const_iterator& operator++();
    const_iterator operator++(int);
    bool operator==(const const_iterator& other) const noexcept {
      return stage_ == other.stage_ && cursor_ == other.cursor_;
    }

   private:
    const Prop2Vertices* parent_ = nullptr;
    // stages: 0 AllPlus, 1 AllMinus, 2 Mixed (cursor = mask),
    //         3 MinSpecial (cursor = coordinate), 4 MaxSpecial, 5 end
    int stage_ = 5;
    std::uint64_t cursor_ = 0;
  };

  const_iterator begin() const;
  const_iterator end() const;

 private:
  std::size_t S_;
  PrivacyLevel alpha_;
  VertexValues values_;
};

Prop2Vertices enumerate_vertices_prop2(std::size_t S, PrivacyLevel alpha);

// Ground-truth vertex enumeration, independent of the closed forms above:
// solves every nonsingular S-subset of constraint rows as an equality system
// and keeps solutions that are valid retention vectors feasible at 1e-9,
// deduplicated within L-infinity 1e-7 and sorted lexicographically.
// Restricted to S <= 5 (throws kTooLarge beyond).
std::vector<RetentionVector> enumerate_vertices_oracle(std::size_t S,
                                                       PrivacyLevel alpha);

}  // namespace pramforge

#endif  // PRAMFORGE_POLYTOPE_HPP_
