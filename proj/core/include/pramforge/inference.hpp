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

#ifndef PRAMFORGE_INFERENCE_HPP_
#define PRAMFORGE_INFERENCE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pramforge/types.hpp"

namespace pramforge {

enum class EstimationMethod { kInversion, kEm };

struct EstimationResult {
  CategoricalDistribution p_hat;
  EstimationMethod method = EstimationMethod::kEm;
  std::size_t iterations = 0;
  std::optional<double> log_likelihood;  // EM only
  bool projected = false;  // inversion left the simplex and was projected back
};

// Moment inversion: solve transpose(M) p = m_hat and project the solution
// onto the probability simplex if any coordinate went negative. Throws
// kSingularMatrix when the condition estimate exceeds 1e12, kDimensionMismatch.
EstimationResult estimate_p_from_marginal(const std::vector<double>& m_hat,
                                          const PramMatrix& matrix);

// Same, with m_hat taken as the empirical frequencies of z. Throws kEmptyInput.
EstimationResult estimate_p_inversion(const MicrodataColumn& z,
                                      const PramMatrix& matrix);

// Maximum-likelihood estimate of p from the randomized column via EM on the
// mixture likelihood prod_i m(p)_{z_i}: starts uniform, responsibilities
// w_ik proportional to p_k M[k][z_i], mean update, stops when the
// log-likelihood gain drops below tol. The log-likelihood never decreases.
EstimationResult estimate_p_em(const MicrodataColumn& z,
                               const PramMatrix& matrix, double tol = 1e-10,
                               std::size_t max_iter = 10000);

struct CellRisk {
  double r1;  // 1 when the sample unique is also a population unique
  double r2;  // expected success of a uniform guess: 1/F_k
};

struct RiskReport {
  double tau1 = 0.0;
  double tau2 = 0.0;
  std::map<std::uint32_t, CellRisk> per_record;  // keyed by 1-based cell id
};

// File-level disclosure risk against a known population: over sample-unique
// cells, tau1 counts population uniques and tau2 sums 1/F_k. Throws
// kLengthMismatch, kInconsistentTables.
RiskReport risk_indices(const FrequencyTable& sample,
                        const FrequencyTable& population);

}  // namespace pramforge

#endif  // PRAMFORGE_INFERENCE_HPP_
