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

#include "pramforge/info.hpp"

#include <cassert>
#include <cmath>
#include <vector>

namespace pramforge {
namespace {

inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

inline double clamp_information(double nats) {
  assert(nats >= -1e-12);
  return nats > 0.0 ? nats : 0.0;
}

// Entropy of a count table: H = log n - (1/n) sum c log c.
double count_entropy(const std::vector<std::uint64_t>& counts,
                     std::uint64_t n) {
  double acc = 0.0;
  for (std::uint64_t c : counts) acc += xlogx(static_cast<double>(c));
  return std::log(static_cast<double>(n)) - acc / static_cast<double>(n);
}

}  // namespace

NatsValue::NatsValue(double nats) : nats_(nats) {
  if (!(nats >= 0.0)) {
    throw Error(ErrorCode::kOutOfRange,
                "information value must be nonnegative, got " +
                    std::to_string(nats));
  }
}

NatsValue entropy(const CategoricalDistribution& d) {
  double h = 0.0;
  for (double p : d.probs()) h -= xlogx(p);
  return NatsValue(clamp_information(h));
}

CategoricalDistribution marginal_z(const CategoricalDistribution& p,
                                   const RetentionVector& q) {
  const std::size_t S = p.size();
  if (q.size() != S) {
    throw Error(ErrorCode::kDimensionMismatch,
                "p has " + std::to_string(S) + " entries, q has " +
                    std::to_string(q.size()));
  }
  const double Sm1 = static_cast<double>(S - 1);
  double swap_mass = 0.0;  // sum_k p_k (1-q_k)/(S-1)
  for (std::size_t k = 0; k < S; ++k) swap_mass += p[k] * (1.0 - q[k]) / Sm1;
  std::vector<double> m(S);
  for (std::size_t j = 0; j < S; ++j) {
    const double mj = p[j] * q[j] + (swap_mass - p[j] * (1.0 - q[j]) / Sm1);
    m[j] = mj > 0.0 ? mj : 0.0;
  }
  return CategoricalDistribution::validate(std::move(m));
}

NatsValue mutual_information(const CategoricalDistribution& p,
                             const RetentionVector& q) {
  const std::size_t S = p.size();
  if (q.size() != S) {
    throw Error(ErrorCode::kDimensionMismatch,
                "p has " + std::to_string(S) + " entries, q has " +
                    std::to_string(q.size()));
  }
  const double log_sm1 = std::log(static_cast<double>(S - 1));
  const CategoricalDistribution m = marginal_z(p, q);
  double acc = 0.0;
  for (std::size_t x = 0; x < S; ++x) {
    // q_x log q_x + (1-q_x) log((1-q_x)/(S-1)), with 0 log 0 := 0
    acc += p[x] * (xlogx(q[x]) + xlogx(1.0 - q[x]) - (1.0 - q[x]) * log_sm1);
  }
  for (std::size_t z = 0; z < S; ++z) acc -= xlogx(m[z]);
  return NatsValue(clamp_information(acc));
}

NatsValue plugin_mi(const MicrodataColumn& x, const MicrodataColumn& z) {
  const std::size_t n = x.record_count();
  if (n != z.record_count()) {
    throw Error(ErrorCode::kLengthMismatch,
                "columns have " + std::to_string(n) + " and " +
                    std::to_string(z.record_count()) + " records");
  }
  if (n == 0) {
    throw Error(ErrorCode::kEmptyInput, "cannot estimate from empty columns");
  }
  const std::size_t Sx = x.category_count();
  const std::size_t Sz = z.category_count();
  std::vector<std::uint64_t> cx(Sx, 0), cz(Sz, 0), cxz(Sx * Sz, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t a = x.records()[i] - 1;
    const std::uint32_t b = z.records()[i] - 1;
    ++cx[a];
    ++cz[b];
    ++cxz[static_cast<std::size_t>(a) * Sz + b];
  }
  const double mi = count_entropy(cx, n) + count_entropy(cz, n) -
                    count_entropy(cxz, n);
  return NatsValue(clamp_information(mi));
}

}  // namespace pramforge
