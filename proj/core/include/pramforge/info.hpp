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

#ifndef PRAMFORGE_INFO_HPP_
#define PRAMFORGE_INFO_HPP_

#include "pramforge/types.hpp"

namespace pramforge {

// Entropy or mutual information in natural-log units. Nonnegative.
class NatsValue {
 public:
  explicit NatsValue(double nats);
  double value() const noexcept { return nats_; }

 private:
  double nats_;
};

// Shannon entropy -sum p log p with 0 log 0 := 0. Result in [0, log S].
NatsValue entropy(const CategoricalDistribution& d);

// Distribution of the randomized output: m_j = p_j q_j + sum_{k!=j} p_k
// (1-q_k)/(S-1), computed in O(S) through the shared swap-mass sum.
// Throws kDimensionMismatch.
CategoricalDistribution marginal_z(const CategoricalDistribution& p,
                                   const RetentionVector& q);

// Mutual information between input and randomized output:
//   f(q) = sum_x p_x (q_x log q_x + (1-q_x) log((1-q_x)/(S-1)))
//          - sum_z m_z log m_z
// O(S) time; clamped to >= 0 against rounding. Throws kDimensionMismatch.
NatsValue mutual_information(const CategoricalDistribution& p,
                             const RetentionVector& q);

// Plug-in estimate H(X) + H(Z) - H(X,Z) from the empirical joint of two
// equal-length columns. Throws kLengthMismatch, kEmptyInput.
NatsValue plugin_mi(const MicrodataColumn& x, const MicrodataColumn& z);

}  // namespace pramforge

#endif  // PRAMFORGE_INFO_HPP_
