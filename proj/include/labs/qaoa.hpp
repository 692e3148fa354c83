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

#include "labs/core.hpp"
#include "labs/energy_table.hpp"
#include "labs/schedule.hpp"
#include "labs/statevector.hpp"

namespace labs_qaoa {

/// Probability mass on one sidelobe-energy value.
struct LevelProbability {
    std::int64_t energy = 0;
    double probability = 0.0;
};

struct QaoaResult {
    int n = 0;
    int p = 0;
    std::vector<double> betas;
    std::vector<double> gammas;
    double expected_merit_factor = 0.0;
    double p_opt = 0.0;
    double tts = 0.0;  // 1 / p_opt
    std::vector<LevelProbability> levels;  // ascending energy
};

/// Prepares |beta, gamma> = prod_l exp(-i beta_l B) exp(-i gamma_l H_C) |+>^N.
Statevector prepare_qaoa_state(const EnergyTable& table, const Schedule& schedule, KernelOptions opts = {});

/// Probability per distinct energy of the table, ascending. Mass is
/// accumulated with compensated summation.
std::vector<LevelProbability> energy_level_distribution(const Statevector& state, const EnergyTable& table,
                                                        KernelOptions opts = {});

/// Sum of |a_x|^2 over the optimal bitstrings, compensated.
double optimal_probability(const Statevector& state, const EnergyTable& table);

/// sum_levels Pr(E) N^2 / (2E).
double expected_merit_factor(int n, const std::vector<LevelProbability>& levels);

QaoaResult run_qaoa(const ProblemInstance& instance, const Schedule& schedule, const EnergyTable& table,
                    KernelOptions opts = {});

/// Reusable evaluator for parameter optimisation: keeps one state buffer
/// and counts evaluations.
class QaoaEvaluator {
   public:
    explicit QaoaEvaluator(const EnergyTable& table, KernelOptions opts = {});

    struct Value {
        double merit_factor = 0.0;
        double p_opt = 0.0;
    };
    Value evaluate(const Schedule& schedule);

    [[nodiscard]] const EnergyTable& table() const { return *table_; }
    [[nodiscard]] int n() const { return table_->n; }
    [[nodiscard]] long long evaluations() const { return evaluations_; }

   private:
    const EnergyTable* table_;
    KernelOptions opts_;
    Statevector state_;
    long long evaluations_ = 0;
};

}  // namespace labs_qaoa
