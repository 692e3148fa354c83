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

#include "labs/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "labs/core.hpp"

namespace labs_qaoa {

void parallel_chunks(std::size_t num_chunks, int workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || num_chunks <= 1) {
        for (std::size_t c = 0; c < num_chunks; ++c) {
            fn(c);
        }
        return;
    }
    const auto threads = static_cast<std::size_t>(workers) < num_chunks ? static_cast<std::size_t>(workers) : num_chunks;
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t c = next.fetch_add(1);
                if (c >= num_chunks) {
                    return;
                }
                try {
                    fn(c);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = mix64(parent);
    for (auto p : path) {
        h = mix64(h ^ mix64(p + 0x632BE59BD9B4E019ULL));
    }
    return h;
}

std::size_t memory_budget_bytes() {
    constexpr double kDefaultGb = 4.0;
    double gb = kDefaultGb;
    if (const char* env = std::getenv("LABS_MEM_BUDGET_GB")) {
        try {
            gb = std::stod(env);
        } catch (const std::exception&) {
            gb = kDefaultGb;
        }
    }
    if (gb <= 0) {
        gb = kDefaultGb;
    }
    return static_cast<std::size_t>(gb * 1024.0 * 1024.0 * 1024.0);
}

void check_memory_budget(std::size_t bytes, const char* what) {
    const std::size_t budget = memory_budget_bytes();
    if (bytes > budget) {
        throw ResourceError(std::string(what) + " needs " + std::to_string(bytes >> 20) + " MiB, budget is " +
                            std::to_string(budget >> 20) + " MiB; lower N or raise LABS_MEM_BUDGET_GB");
    }
}

}  // namespace labs_qaoa
