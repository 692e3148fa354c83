// Copyright 2026 The labs-qaoa Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>

namespace labs_qaoa {

/// Runs fn(chunk) for chunk in [0, num_chunks) on up to `workers` threads.
/// Chunks are claimed in index order; fn must only touch chunk-local data.
void parallel_chunks(std::size_t num_chunks, int workers, const std::function<void(std::size_t)>& fn);

/// Splits [0, count) into fixed-size blocks independent of the worker count,
/// so per-block reductions combined in block order are bitwise reproducible.
struct BlockRange {
    std::size_t count;
    std::size_t block;

    [[nodiscard]] std::size_t num_blocks() const { return count == 0 ? 0 : (count + block - 1) / block; }
    [[nodiscard]] std::size_t begin(std::size_t b) const { return b * block; }
    [[nodiscard]] std::size_t end(std::size_t b) const {
        const std::size_t e = (b + 1) * block;
        return e < count ? e : count;
    }
};

/// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x);

/// Derives a child seed from a parent seed and a path of integers. All
/// randomness in the project descends from one global seed through this.
std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> path);

/// Memory budget in bytes for large allocations. Read from the
/// LABS_MEM_BUDGET_GB environment variable; defaults to 4 GiB.
std::size_t memory_budget_bytes();

/// Throws ResourceError if `bytes` exceeds the budget.
void check_memory_budget(std::size_t bytes, const char* what);

}  // namespace labs_qaoa
