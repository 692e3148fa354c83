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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "labs/core.hpp"

namespace labs_qaoa {

enum class SolverKind { exhaustive, tabu, memetic_tabu };
std::string to_string(SolverKind kind);
SolverKind solver_kind_from_string(const std::string& text);

struct SolverConfig {
    SolverKind kind = SolverKind::memetic_tabu;
    std::uint64_t seed = 0;
    std::optional<std::int64_t> target_energy;
    long long budget = 100'000'000;  // evaluation cap

    // Tabu. Zero selects the size-dependent default.
    int tenure_min = 0;               // floor(N/10) + 1
    int tenure_max = 0;               // floor(N/2) + 1
    int max_iters_per_restart = 0;    // 10 N

    // Memetic.
    int population = 20;
    int tournament = 2;
    double crossover_rate = 0.9;
    double mutation_rate = 0.0;       // 0 means 1/N per spin
    int offspring_tabu_iters = 0;     // uniform in [N/2, 3N/2] per offspring

    bool skew_symmetric_only = false;
    // Exhaustive: enumerate only sequences with the first two spins fixed
    // to +1 and recover the rest by symmetry.
    bool fundamental_domain = false;
    // Exhaustive: also return every optimal sequence.
    bool collect_optima = false;
    // Exhaustive runs above N = 28 are refused unless this is set.
    bool allow_long = false;
    // Recompute every charged energy from scratch and check the incremental value.
    bool audit = false;
};

struct SolveResult {
    SpinSequence best_sequence;
    std::int64_t best_energy = 0;
    long long evaluations_to_best = 0;
    long long evaluations_total = 0;
    double wall_ms = 0.0;
    bool hit_target = false;
    std::vector<BasisIndex> optima;  // ascending, exhaustive with collect_optima only
};

/// Gray-code enumeration with O(N) incremental updates, starting from a
/// sequence drawn from config.seed.
SolveResult solve_exhaustive(int n, const SolverConfig& config);

/// Single-flip tabu search from a random start (charged one evaluation).
SolveResult solve_tabu(int n, const SolverConfig& config);

/// Tabu search from a given start; evaluating the start is free.
SolveResult solve_tabu(int n, const SolverConfig& config, const SpinSequence& start);

/// Evolutionary search whose offspring are refined by tabu search.
SolveResult solve_memetic_tabu(int n, const SolverConfig& config);

/// Memetic search from an explicit initial population (each member is charged once).
SolveResult solve_memetic_tabu(int n, const SolverConfig& config, const std::vector<SpinSequence>& population);

/// Dispatches on config.kind.
SolveResult solve(int n, const SolverConfig& config);

struct TtsRow {
    int n = 0;
    int seed_index = 0;
    std::uint64_t seed = 0;
    long long evaluations_to_best = 0;
    bool hit_target = false;
    double wall_ms = 0.0;
};

struct TtsSummary {
    int n = 0;
    double mean_evaluations = 0.0;  // over seeds that hit the target
    int hits = 0;
    int seeds = 0;
    [[nodiscard]] bool complete() const { return hits == seeds; }
};

struct TtsTable {
    std::vector<TtsRow> rows;
    std::vector<TtsSummary> summary;
};

/// Runs the solver to the exact optimum (from exhaustive ground truth) for
/// `seeds` derived seeds per N. Rows that miss the target are kept but
/// flagged in the summary.
TtsTable measure_tts(const SolverConfig& config, const std::vector<int>& sizes, int seeds, int workers = 1);

/// Minimum sidelobe energy for N, computed exhaustively (cached per process).
std::int64_t optimal_energy(int n);

}  // namespace labs_qaoa
