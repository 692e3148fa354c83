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

#include "labs/qaoa.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "labs/parallel.hpp"

namespace labs_qaoa {

namespace {

constexpr std::size_t kReduceBlock = std::size_t{1} << 16;

struct Kahan {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

std::vector<std::int64_t> present_energies(const EnergyTable& table) {
    std::vector<char> seen(static_cast<std::size_t>(table.max_energy) + 1, 0);
    for (auto e : table.energies) {
        seen[static_cast<std::size_t>(e)] = 1;
    }
    std::vector<std::int64_t> out;
    for (std::size_t e = 0; e < seen.size(); ++e) {
        if (seen[e]) {
            out.push_back(static_cast<std::int64_t>(e));
        }
    }
    return out;
}

std::vector<LevelProbability> level_distribution(const Statevector& state, const EnergyTable& table,
                                                 const std::vector<std::int64_t>& present, KernelOptions opts) {
    if (table.n != state.num_qubits()) {
        throw std::invalid_argument("energy table size does not match statevector");
    }
    const auto amps = state.amplitudes();
    const std::size_t bins = static_cast<std::size_t>(table.max_energy) + 1;
    const BlockRange range{amps.size(), kReduceBlock};
    std::vector<std::vector<Kahan>> partial(range.num_blocks());
    parallel_chunks(range.num_blocks(), opts.workers, [&](std::size_t b) {
        auto& acc = partial[b];
        acc.assign(bins, Kahan{});
        for (std::size_t x = range.begin(b); x < range.end(b); ++x) {
            acc[static_cast<std::size_t>(table.energies[x])].add(std::norm(amps[x]));
        }
    });
    std::vector<LevelProbability> out;
    out.reserve(present.size());
    for (auto e : present) {
        Kahan total;
        for (const auto& acc : partial) {
            total.add(acc[static_cast<std::size_t>(e)].sum);
        }
        out.push_back({e, total.sum});
    }
    return out;
}

}  // namespace

Statevector prepare_qaoa_state(const EnergyTable& table, const Schedule& schedule, KernelOptions opts) {
    schedule.validate();
    Statevector state = init_plus_state(table.n);
    for (int l = 0; l < schedule.depth(); ++l) {
        apply_phase(state, table, schedule.gammas[static_cast<std::size_t>(l)], opts);
        apply_mixer(state, schedule.betas[static_cast<std::size_t>(l)], opts);
    }
    return state;
}

std::vector<LevelProbability> energy_level_distribution(const Statevector& state, const EnergyTable& table,
                                                        KernelOptions opts) {
    return level_distribution(state, table, present_energies(table), opts);
}

double optimal_probability(const Statevector& state, const EnergyTable& table) {
    Kahan acc;
    for (auto x : table.optimal_indices) {
        acc.add(std::norm(state[static_cast<std::size_t>(x)]));
    }
    return acc.sum;
}

double expected_merit_factor(int n, const std::vector<LevelProbability>& levels) {
    Kahan acc;
    for (const auto& level : levels) {
        if (level.probability != 0.0) {
            acc.add(level.probability * merit_factor(n, level.energy));
        }
    }
    return acc.sum;
}

QaoaResult run_qaoa(const ProblemInstance& instance, const Schedule& schedule, const EnergyTable& table,
                    KernelOptions opts) {
    if (instance.n != table.n) {
        throw std::invalid_argument("energy table does not match problem instance");
    }
    const Statevector state = prepare_qaoa_state(table, schedule, opts);
    QaoaResult r;
    r.n = table.n;
    r.p = schedule.depth();
    r.betas = schedule.betas;
    r.gammas = schedule.gammas;
    r.levels = energy_level_distribution(state, table, opts);
    r.expected_merit_factor = expected_merit_factor(table.n, r.levels);
    r.p_opt = optimal_probability(state, table);
    r.tts = r.p_opt > 0 ? 1.0 / r.p_opt : std::numeric_limits<double>::infinity();
    return r;
}

QaoaEvaluator::QaoaEvaluator(const EnergyTable& table, KernelOptions opts)
    : table_(&table), opts_(opts), state_(table.n) {}

QaoaEvaluator::Value QaoaEvaluator::evaluate(const Schedule& schedule) {
    schedule.validate();
    ++evaluations_;
    const double amp = std::pow(2.0, -0.5 * table_->n);
    for (auto& a : state_.amplitudes()) {
        a = amp;
    }
    for (int l = 0; l < schedule.depth(); ++l) {
        apply_phase(state_, *table_, schedule.gammas[static_cast<std::size_t>(l)], opts_);
        apply_mixer(state_, schedule.betas[static_cast<std::size_t>(l)], opts_);
    }
    // Merit factor only needs per-energy mass; a dense bin pass is cheaper
    // than building the level list.
    const auto amps = state_.amplitudes();
    const std::size_t bins = static_cast<std::size_t>(table_->max_energy) + 1;
    const BlockRange range{amps.size(), kReduceBlock};
    std::vector<std::vector<double>> partial(range.num_blocks());
    parallel_chunks(range.num_blocks(), opts_.workers, [&](std::size_t b) {
        auto& acc = partial[b];
        acc.assign(bins, 0.0);
        for (std::size_t x = range.begin(b); x < range.end(b); ++x) {
            acc[static_cast<std::size_t>(table_->energies[x])] += std::norm(amps[x]);
        }
    });
    Kahan mf;
    const double n2 = static_cast<double>(table_->n) * table_->n;
    for (std::size_t e = 1; e < bins; ++e) {
        Kahan mass;
        for (const auto& acc : partial) {
            mass.add(acc[e]);
        }
        if (mass.sum != 0.0) {
            mf.add(mass.sum * n2 / (2.0 * static_cast<double>(e)));
        }
    }
    return {mf.sum, optimal_probability(state_, *table_)};
}

}  // namespace labs_qaoa
