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

#ifndef PRAMFORGE_OPTIMIZER_HPP_
#define PRAMFORGE_OPTIMIZER_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pramforge/polytope.hpp"
#include "pramforge/types.hpp"

namespace pramforge {

enum class OptimizeMethod {
  kClosedFormBinary,
  kClosedFormSymmetric,
  kExhaustive,
  kOracle,
  kLocalSearch,
};

enum class Strategy { kAuto, kExhaustive, kLocalSearch };

// How many coordinates of the optimum sit at each vertex level. For oracle
// solutions a coordinate may match none of the levels, so the counts can sum
// to less than S.
struct PatternSummary {
  std::size_t v_plus = 0;
  std::size_t v_minus = 0;
  std::size_t v_min = 0;
  std::size_t v_max = 0;

  std::size_t total() const noexcept {
    return v_plus + v_minus + v_min + v_max;
  }
  bool operator==(const PatternSummary&) const = default;
};

// Coordinate-level signature of a candidate, e.g. "++-M". Levels sort as
// v_max < v_plus < v_minus < v_min ('M' < '+' < '-' < 'm'); '?' (last) marks
// an oracle coordinate matching no level. Ties are broken on this order.
std::string pattern_signature(const RetentionVector& q, const VertexValues& v,
                              double tol = 1e-9);
PatternSummary summarize_pattern(const RetentionVector& q,
                                 const VertexValues& v, double tol = 1e-9);

struct OptimizationReport {
  RetentionVector q_star;
  double mi_nats = 0.0;
  PatternSummary pattern_summary;
  OptimizeMethod method = OptimizeMethod::kExhaustive;
  std::uint64_t candidates_evaluated = 0;
  std::vector<std::string> ties;  // alternate optima, signature order
};

inline constexpr int kDefaultRestarts = 32;
inline constexpr std::size_t kExhaustiveMaxDimension = 24;

// Maximizes the mutual information over the privacy polytope.
//   auto dispatch: S = 2 -> closed form; S = 3 or closed-form vertices not
//   available with S <= 5 -> oracle sweep; closed forms available and
//   S <= 24 -> exhaustive sweep over the 2^S vertices; closed forms available
//   and S > 24 -> seeded local search. Throws kNotApplicable when no method
//   covers the inputs and kInfeasibleStrategy for invalid explicit choices.
OptimizationReport optimize(const CategoricalDistribution& p,
                            PrivacyLevel alpha,
                            Strategy strategy = Strategy::kAuto,
                            std::uint64_t seed = 0,
                            int restarts = kDefaultRestarts);

// The two binary optima (v,v) and (w,w), v = e^a/(1+e^a), w = 1/(1+e^a).
// Independent of p.
std::pair<RetentionVector, RetentionVector> optimize_binary(
    PrivacyLevel alpha);

// Boundary points of the symmetric family q_1 = ... = q_S: the constant
// vectors at e^-a/(S-1+e^-a) and e^a/(S-1+e^a), in that order.
std::pair<RetentionVector, RetentionVector> optimize_symmetric(
    std::size_t S, PrivacyLevel alpha);

// Seeded hill climbing over the vertex patterns: states are sign vectors
// plus an optional special coordinate; moves flip one sign or add, remove or
// relocate the special. Starts from AllPlus, AllMinus and restarts-2 random
// sign vectors. Deterministic given the seed. Throws kNotApplicable.
OptimizationReport local_search(const CategoricalDistribution& p,
                                PrivacyLevel alpha,
                                int restarts = kDefaultRestarts,
                                std::uint64_t seed = 0);

// Best objective over all vertex candidates whose level counts match the
// given summary; used for dominance checks against externally reported
// patterns. Throws kTooLarge if the pattern family is too big to sweep.
double best_objective_with_counts(const CategoricalDistribution& p,
                                  PrivacyLevel alpha,
                                  const PatternSummary& counts);

const char* optimize_method_name(OptimizeMethod method) noexcept;

}  // namespace pramforge

#endif  // PRAMFORGE_OPTIMIZER_HPP_
