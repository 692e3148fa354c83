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
#include <vector>

#include "labs/qaoa.hpp"

namespace labs_qaoa {

/// sin^2((2 steps + 1) arcsin sqrt(p0)). Throws unless p0 is in (0, 1].
double aa_success_probability(double p0, int steps);

/// Entry s (s = 1..max_steps) is success(s) / success(s - 1).
std::vector<double> aa_gain_curve(double p0, int max_steps);

/// Bare minimum-finding time to solution, 1 / sqrt(p_opt).
double qmf_tts(double p_opt);

/// Inputs of one Monte-Carlo minimum-finding experiment.
struct QmfRun {
    double delta = 0.1;
    double m = 1.0;  // budget parameter M
    double c = 1.0;  // search-cost constant C
    int trials = 500;
    std::uint64_t seed = 0;
    // Each search returns nothing with probability 1 / (6 * 2^N).
    bool failure_injection = false;
    // Off: the inner loop checks the budget before each search, so the last
    // search may run past 3CMN. On: a search that would overrun is skipped
    // and the remainder of the budget is charged instead.
    bool strict_budget = false;
};

struct QmfTrial {
    bool success = false;
    long long queries = 0;               // all repetitions
    long long queries_to_optimum = -1;   // -1 when never found
    std::vector<std::int64_t> samples;   // energies returned by successful searches, in order
};

struct QmfOutcome {
    int n = 0;
    int repetitions = 0;  // ceil(ln(1/delta))
    double budget = 0.0;  // per repetition, 3 C M N
    double success_rate = 0.0;
    double mean_queries = 0.0;
    double mean_queries_to_optimum = 0.0;  // over successful trials
    long long max_queries = 0;
    std::vector<QmfTrial> trials;
};

/// Levels of the uniform distribution over a table (the p = 0 baseline).
std::vector<LevelProbability> uniform_levels(const EnergyTable& table);

/// Simulates the threshold-descent search on an energy distribution. Each
/// search draws from the distribution conditioned on E < s and is charged
/// ceil(2 C N / sqrt(P(E < s))) queries. Searches continue while the charge
/// for the repetition is below 3CMN (see QmfRun::strict_budget).
QmfOutcome simulate_qmf(const std::vector<LevelProbability>& distribution, int n, std::int64_t min_energy,
                        const QmfRun& run);

/// Exact expected queries until the minimum is first drawn by an unbudgeted
/// threshold chain: 2CN for the opening search plus, for every non-minimal
/// level e, P(E = e) / P(E <= e) * 2CN / sqrt(P(E < e)).
double expected_queries_to_optimum(const std::vector<LevelProbability>& distribution, int n, double c = 1.0);

/// Runs unbudgeted threshold chains and compares the frequency with which
/// each level appears against P(E = e) / P(E <= e). Returns the largest
/// absolute deviation over levels with nonzero mass.
double sample_chain_law_check(const std::vector<LevelProbability>& distribution, int trials, std::uint64_t seed);

}  // namespace labs_qaoa
