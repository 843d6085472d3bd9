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

#include "pramforge/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

namespace pramforge {
namespace {

constexpr double kConditionLimit = 1e12;

// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(const std::vector<double>& u) {
  const std::size_t S = u.size();
  std::vector<double> sorted(u);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < S; ++i) {
    cumulative += sorted[i];
    const double candidate = (1.0 - cumulative) / static_cast<double>(i + 1);
    if (sorted[i] + candidate > 0.0) theta = candidate;
  }
  std::vector<double> out(S);
  for (std::size_t i = 0; i < S; ++i) {
    out[i] = std::max(0.0, u[i] + theta);
  }
  // Rescale away the last few ulps so the validated constructor accepts it.
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& x : out) x /= total;
  return out;
}

std::vector<double> empirical_marginal(const MicrodataColumn& z,
                                       std::size_t S) {
  if (z.record_count() == 0) {
    throw Error(ErrorCode::kEmptyInput, "no records to estimate from");
  }
  std::vector<double> m(S, 0.0);
  for (std::uint32_t id : z.records()) {
    if (id > S) {
      throw Error(ErrorCode::kCategoryOutOfRange,
                  "record id exceeds matrix size");
    }
    m[id - 1] += 1.0;
  }
  const double n = static_cast<double>(z.record_count());
  for (double& x : m) x /= n;
  return m;
}

}  // namespace

EstimationResult estimate_p_from_marginal(const std::vector<double>& m_hat,
                                          const PramMatrix& matrix) {
  const std::size_t S = matrix.size();
  if (m_hat.size() != S) {
    throw Error(ErrorCode::kDimensionMismatch,
                "marginal has " + std::to_string(m_hat.size()) +
                    " entries, matrix expects " + std::to_string(S));
  }
  Eigen::MatrixXd a(S, S);
  for (std::size_t j = 0; j < S; ++j) {
    for (std::size_t k = 0; k < S; ++k) {
      a(j, k) = matrix.entry(k, j);  // transpose action on p
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(S - 1);
  if (!(smin > 0.0) || smax / smin > kConditionLimit) {
    throw Error(ErrorCode::kSingularMatrix,
                "transpose system is numerically singular (condition "
                "estimate beyond 1e12)");
  }
  Eigen::VectorXd rhs(S);
  for (std::size_t j = 0; j < S; ++j) rhs(j) = m_hat[j];
  const Eigen::VectorXd solution = svd.solve(rhs);

  std::vector<double> p(S);
  bool negative = false;
  for (std::size_t k = 0; k < S; ++k) {
    p[k] = solution(k);
    if (p[k] < 0.0) negative = true;
  }
  EstimationResult result{
      CategoricalDistribution::validate(negative ? project_to_simplex(p)
                                                 : p),
      EstimationMethod::kInversion, 1, std::nullopt, negative};
  return result;
}

EstimationResult estimate_p_inversion(const MicrodataColumn& z,
                                      const PramMatrix& matrix) {
  return estimate_p_from_marginal(empirical_marginal(z, matrix.size()),
                                  matrix);
}

EstimationResult estimate_p_em(const MicrodataColumn& z,
                               const PramMatrix& matrix, double tol,
                               std::size_t max_iter) {
  const std::size_t S = matrix.size();
  const std::vector<double> m_hat = empirical_marginal(z, S);
  const double n = static_cast<double>(z.record_count());

  std::vector<double> p(S, 1.0 / static_cast<double>(S));
  std::vector<double> m(S), next(S);

  auto refresh_marginal = [&] {
    for (std::size_t j = 0; j < S; ++j) {
      double mj = 0.0;
      for (std::size_t k = 0; k < S; ++k) mj += p[k] * matrix.entry(k, j);
      m[j] = mj;
    }
  };
  auto current_log_lik = [&] {
    double ll = 0.0;
    for (std::size_t j = 0; j < S; ++j) {
      // An observed cell with zero model mass means the data cannot come
      // from this matrix; keep the likelihood finite-but-tiny so EM still
      // terminates instead of propagating NaN.
      if (m_hat[j] > 0.0) {
        ll += n * m_hat[j] * std::log(std::max(m[j], 1e-300));
      }
    }
    return ll;
  };

  refresh_marginal();
  double log_lik = current_log_lik();
  std::size_t iterations = 0;
  while (iterations < max_iter) {
    // E-step responsibilities aggregated per output cell, then the mean
    // update; the z-cell counts are n * m_hat.
    double total = 0.0;
    for (std::size_t k = 0; k < S; ++k) {
      double w = 0.0;
      for (std::size_t j = 0; j < S; ++j) {
        if (m_hat[j] > 0.0 && m[j] > 0.0) {
          w += m_hat[j] * matrix.entry(k, j) / m[j];
        }
      }
      next[k] = p[k] * w;
      total += next[k];
    }
    if (!(total > 0.0)) {
      throw Error(ErrorCode::kNotApplicable,
                  "observed cells have no mass under this matrix");
    }
    for (double& x : next) x /= total;
    p.swap(next);
    ++iterations;
    refresh_marginal();
    const double ll = current_log_lik();
    const double gain = ll - log_lik;
    log_lik = ll;
    if (gain < tol) break;
  }

  EstimationResult result{CategoricalDistribution::validate(std::move(p)),
                          EstimationMethod::kEm, iterations, log_lik, false};
  return result;
}

RiskReport risk_indices(const FrequencyTable& sample,
                        const FrequencyTable& population) {
  const std::size_t K = sample.size();
  if (population.size() != K) {
    throw Error(ErrorCode::kLengthMismatch,
                "sample has " + std::to_string(K) + " cells, population has " +
                    std::to_string(population.size()));
  }
  for (std::size_t k = 0; k < K; ++k) {
    if (sample[k] > population[k]) {
      throw Error(ErrorCode::kInconsistentTables,
                  "cell " + std::to_string(k + 1) + " has sample count " +
                      std::to_string(sample[k]) + " above population count " +
                      std::to_string(population[k]));
    }
  }
  RiskReport report;
  for (std::size_t k = 0; k < K; ++k) {
    if (sample[k] != 1) continue;
    const double r1 = population[k] == 1 ? 1.0 : 0.0;
    const double r2 = 1.0 / static_cast<double>(population[k]);
    report.per_record.emplace(static_cast<std::uint32_t>(k + 1),
                              CellRisk{r1, r2});
    report.tau1 += r1;
    report.tau2 += r2;
  }
  return report;
}

}  // namespace pramforge
