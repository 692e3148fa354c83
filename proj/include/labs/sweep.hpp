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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "labs/analysis.hpp"
#include "labs/schedules.hpp"
#include "labs/serialize.hpp"
#include "labs/solvers.hpp"

namespace labs_qaoa {

/// Cartesian sweep over N, depth and seed index. `solver` is "qaoa" or a
/// classical solver name; classical cells use depth 0.
struct SweepSpec {
    std::string solver = "memetic_tabu";
    std::vector<int> sizes;
    std::vector<int> depths{0};
    int seeds = 1;
    std::uint64_t seed = 0;
    SolverConfig solver_config;                 // kind and seed are overridden per cell
    std::map<int, FixedParams> fixed_by_depth;  // qaoa only

    void validate() const;
};

Json to_json(const SweepSpec& spec);

/// One cell. For classical solvers tts is evaluations to the optimum; for
/// QAOA it is 1/p_opt and qmf_tts is 1/sqrt(p_opt).
struct SweepRow {
    std::string solver;
    int n = 0;
    int p = 0;
    int seed_index = 0;
    std::uint64_t seed = 0;
    double tts = 0.0;
    std::optional<double> qmf_tts;
    bool hit_target = false;
    double wall_ms = 0.0;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepFailure {
    int n = 0;
    int p = 0;
    int seed_index = 0;
    std::string message;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // sorted by (N, p, seed_index)
    std::vector<SweepFailure> failures;
    int resumed = 0;             // cells taken from an existing journal
};

/// Runs all cells not already present in `out_dir`/sweep_journal.jsonl and
/// writes tts.csv (with wall time) and tts_canonical.csv (without). Cell
/// seeds are derive_seed(spec.seed, {N, p, seed_index}). An empty out_dir
/// disables all files. `max_new_cells` >= 0 stops after that many new cells,
/// which is how interrupted runs are exercised in tests.
SweepResult run_sweep(const SweepSpec& spec, int workers, const std::string& out_dir,
                      long long max_new_cells = -1);

std::string sweep_csv(const std::vector<SweepRow>& rows, bool with_wall_ms);
std::vector<SweepRow> parse_sweep_csv(const std::string& text);

/// Per-N mean of `column` ("tts" or "qmf_tts") over rows that hit the
/// target, restricted to depth p when given. Throws if the rows mix
/// solvers or depths and no depth is selected.
std::vector<FitPoint> sweep_fit_points(const std::vector<SweepRow>& rows, const std::string& column,
                                       std::optional<int> p = std::nullopt);

}  // namespace labs_qaoa
