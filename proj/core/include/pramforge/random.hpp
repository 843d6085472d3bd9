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

#ifndef PRAMFORGE_RANDOM_HPP_
#define PRAMFORGE_RANDOM_HPP_

#include <cstdint>

namespace pramforge {

// 64-bit finalizer with full avalanche (splitmix64 increment + mix).
inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic random stream keyed by (seed, counter). Every (seed, counter)
// pair opens an independent stream, so consumers indexed by record, vertex or
// replication can be processed in any order, on any number of threads, and
// still produce identical draws.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t counter) noexcept
      : state_(mix64(seed ^ mix64(counter ^ 0x5851f42d4c957f2dULL))) {}

  std::uint64_t next_u64() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 bits of precision.
  double next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), n >= 1. Bias is < 2^-53 for the n used here.
  std::uint64_t next_below(std::uint64_t n) noexcept {
    const std::uint64_t v =
        static_cast<std::uint64_t>(next_unit() * static_cast<double>(n));
    return v < n ? v : n - 1;
  }

 private:
  std::uint64_t state_;
};

}  // namespace pramforge

#endif  // PRAMFORGE_RANDOM_HPP_
