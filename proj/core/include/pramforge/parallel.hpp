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

#ifndef PRAMFORGE_PARALLEL_HPP_
#define PRAMFORGE_PARALLEL_HPP_

#include <cstdint>
#include <functional>

namespace pramforge {

// Number of worker threads: hardware concurrency, capped by the
// PRAM_FORGE_THREADS environment variable when set to a positive integer.
unsigned worker_count();

// Runs fn(chunk_index, begin, end) over a static partition of [0, count) into
// at most worker_count() contiguous chunks. Chunk boundaries depend only on
// count and the worker count, never on scheduling, so reductions that combine
// per-chunk results in chunk order are deterministic.
void parallel_chunks(
    std::uint64_t count,
    const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& fn);

}  // namespace pramforge

#endif  // PRAMFORGE_PARALLEL_HPP_
