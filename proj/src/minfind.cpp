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

#include "labs/minfind.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "labs/parallel.hpp"

namespace labs_qaoa {

double aa_success_probability(double p0, int steps) {
    if (!(p0 > 0.0 && p0 <= 1.0)) {
        throw std::domain_error("initial success probability must lie in (0, 1]");
    }
    if (steps < 0) {
        throw std::domain_error("number of amplification steps must be non-negative");
    }
    if (steps == 0) {
        return p0;
    }
    const double s = std::sin((2.0 * steps + 1.0) * std::asin(std::sqrt(p0)));
    return s * s;
}

std::vector<double> aa_gain_curve(double p0, int max_steps) {
    std::vector<double> gains;
    double prev = aa_success_probability(p0, 0);
    for (int s = 1; s <= max_steps; ++s) {
        const double cur = aa_success_probability(p0, s);
        gains.push_back(cur / prev);
        prev = cur;
    }
    return gains;
}

double qmf_tts(double p_opt) {
    if (!(p_opt > 0.0 && p_opt <= 1.0)) {
        throw std::domain_error("p_opt must lie in (0, 1]");
    }
    return 1.0 / std::sqrt(p_opt);
}

std::vector<LevelProbability> uniform_levels(const EnergyTable& table) {
    std::vector<LevelProbability> out;
    const double total = static_cast<double>(table.size());
    for (const auto& level : table.levels()) {
        out.push_back({level.energy, static_cast<double>(level.degeneracy) / total});
    }
    return out;
}

namespace {

// Ascending levels with cumulative mass; below[k] = P(E < e_k).
struct Ladder {
    std::vector<std::int64_t> energy;
    std::vector<double> mass;
    std::vector<double> below;
    double total = 0.0;

    explicit Ladder(std::vector<LevelProbability> levels) {
        std::sort(levels.begin(), levels.end(), [](const auto& a, const auto& b) { return a.energy < b.energy; });
        for (const auto& l : levels) {
            if (l.probability < 0.0) {
                throw std::invalid_argument("probabilities must be non-negative");
            }
            if (!energy.empty() && energy.back() == l.energy) {
                throw std::invalid_argument("duplicate energy level in distribution");
            }
            energy.push_back(l.energy);
            mass.push_back(l.probability);
            below.push_back(total);
            total += l.probability;
        }
        if (!(total > 0.0)) {
            throw std::invalid_argument("distribution has no probability mass");
        }
    }

    [[nodiscard]] std::size_t size() const { return energy.size(); }

    // Mass strictly below level `limit` (limit == size() means everything).
    [[nodiscard]] double mass_below(std::size_t limit) const { return limit == size() ? total : below[limit]; }

    // Draws a level index < limit proportionally to its mass.
    std::size_t draw(std::size_t limit, std::mt19937_64& rng) const {
        const double cap = mass_below(limit);
        std::uniform_real_distribution<double> u(0.0, cap);
        const double r = u(rng);
        auto it = std::upper_bound(below.begin(), below.begin() + static_cast<std::ptrdiff_t>(limit), r);
        // Zero-mass levels share their cumulative value with the next level,
        // so upper_bound never lands on them.
        return static_cast<std::size_t>(it - below.begin()) - 1;
    }
};

}  // namespace

QmfOutcome simulate_qmf(const std::vector<LevelProbability>& distribution, int n, std::int64_t min_energy,
                        const QmfRun& run) {
    if (!(run.delta > 0.0 && run.delta < 1.0)) {
        throw std::invalid_argument("delta must lie in (0, 1)");
    }
    if (!(run.c > 0.0)) {
        throw std::invalid_argument("C must be positive");
    }
    if (n < 1 || !(run.m > 0.0) || run.m > std::ldexp(1.0, n)) {
        throw std::invalid_argument("M must lie in (0, 2^N]");
    }
    if (run.trials < 1) {
        throw std::invalid_argument("need at least one trial");
    }
    const Ladder ladder(distribution);
    QmfOutcome out;
    out.n = n;
    out.repetitions = static_cast<int>(std::ceil(std::log(1.0 / run.delta)));
    out.budget = 3.0 * run.c * run.m * n;
    const long long budget = static_cast<long long>(std::floor(out.budget));
    const double fail_p = std::ldexp(1.0 / 6.0, -n);
    const double cn2 = 2.0 * run.c * n;

    long long total = 0;
    long long to_opt_sum = 0;
    int successes = 0;
    for (int t = 0; t < run.trials; ++t) {
        std::mt19937_64 rng(derive_seed(run.seed, {static_cast<std::uint64_t>(t)}));
        std::bernoulli_distribution fails(fail_p);
        QmfTrial trial;
        for (int rep = 0; rep < out.repetitions; ++rep) {
            std::size_t limit = ladder.size();  // threshold s = +infinity
            long long spent = 0;
            while (spent < budget) {
                const double p_below = ladder.mass_below(limit);
                if (p_below <= 0.0) {
                    break;  // nothing below the threshold: it is already minimal
                }
                const long long cost = static_cast<long long>(std::ceil(cn2 / std::sqrt(p_below)));
                if (run.strict_budget && spent + cost > budget) {
                    spent = budget;
                    break;
                }
                spent += cost;
                if (run.failure_injection && fails(rng)) {
                    continue;
                }
                limit = ladder.draw(limit, rng);
                trial.samples.push_back(ladder.energy[limit]);
                if (ladder.energy[limit] == min_energy && trial.queries_to_optimum < 0) {
                    trial.queries_to_optimum = trial.queries + spent;
                }
            }
            trial.queries += spent;
        }
        trial.success = trial.queries_to_optimum >= 0;
        if (trial.success) {
            ++successes;
            to_opt_sum += trial.queries_to_optimum;
        }
        total += trial.queries;
        out.max_queries = std::max(out.max_queries, trial.queries);
        out.trials.push_back(std::move(trial));
    }
    out.success_rate = static_cast<double>(successes) / run.trials;
    out.mean_queries = static_cast<double>(total) / run.trials;
    out.mean_queries_to_optimum = successes > 0 ? static_cast<double>(to_opt_sum) / successes : 0.0;
    return out;
}

double expected_queries_to_optimum(const std::vector<LevelProbability>& distribution, int n, double c) {
    const Ladder ladder(distribution);
    const double cn2 = 2.0 * c * n;
    double expected = cn2;
    for (std::size_t k = 0; k < ladder.size(); ++k) {
        if (ladder.below[k] > 0.0 && ladder.mass[k] > 0.0) {
            expected += ladder.mass[k] / (ladder.below[k] + ladder.mass[k]) * cn2 / std::sqrt(ladder.below[k]);
        }
    }
    return expected;
}

double sample_chain_law_check(const std::vector<LevelProbability>& distribution, int trials, std::uint64_t seed) {
    if (trials < 1) {
        throw std::invalid_argument("need at least one trial");
    }
    const Ladder ladder(distribution);
    std::vector<long long> seen(ladder.size(), 0);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        std::size_t limit = ladder.size();
        while (ladder.mass_below(limit) > 0.0) {
            limit = ladder.draw(limit, rng);
            ++seen[limit];
        }
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < ladder.size(); ++k) {
        if (ladder.mass[k] == 0.0) {
            continue;
        }
        const double expected = ladder.mass[k] / (ladder.below[k] + ladder.mass[k]);
        const double observed = static_cast<double>(seen[k]) / trials;
        worst = std::max(worst, std::abs(observed - expected));
    }
    return worst;
}

}  // namespace labs_qaoa
