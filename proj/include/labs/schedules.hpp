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
#include <string>
#include <utility>
#include <vector>

#include "labs/optimizer.hpp"
#include "labs/qaoa.hpp"
#include "labs/schedule.hpp"

namespace labs_qaoa {

/// Frequency-domain QAOA angles: u drives gamma, v drives beta.
struct FourierCoeffs {
    std::vector<double> u;
    std::vector<double> v;

    [[nodiscard]] int depth() const { return static_cast<int>(u.size()); }
    friend bool operator==(const FourierCoeffs&, const FourierCoeffs&) = default;
};

/// gamma_i = sum_k u_k sin[(k-1/2)(i-1/2) pi/p], beta_i = sum_k v_k cos[...].
Schedule fourier_to_schedule(const FourierCoeffs& coeffs, int p);

/// Exact inverse of fourier_to_schedule (both bases are orthogonal).
FourierCoeffs schedule_to_fourier(const Schedule& schedule);

/// Figure of merit a schedule is optimised for. Both are maximised.
enum class ObjectiveKind { merit_factor, p_opt };
std::string to_string(ObjectiveKind kind);
ObjectiveKind objective_kind_from_string(const std::string& text);

double objective_value(const QaoaEvaluator::Value& value, ObjectiveKind kind);

struct ScheduleSearchOptions {
    LocalMethod method = LocalMethod::trust_region;
    double rel_tol = 1e-8;
    long long max_evals = 0;  // per local run, 0 means 10000 * dim
    int restarts = 400;
    std::uint64_t seed = 0;
};

/// Result of one schedule optimisation.
struct ScheduleFit {
    Schedule schedule;
    FourierCoeffs coeffs;
    double objective = 0.0;
    long long evaluations = 0;  // objective calls spent
    bool hit_eval_cap = false;
};

/// Initial-point box for p = 1 restarts; gammas are given as multiples of 1/N.
struct InitBox {
    double beta_lo, beta_hi;
    double gamma_lo_n, gamma_hi_n;
};
InitBox p1_init_box(ObjectiveKind kind);

/// Runs one local optimisation of the p = 1 angles from (beta0, gamma0).
ScheduleFit optimize_p1_from(QaoaEvaluator& evaluator, ObjectiveKind kind, double beta0, double gamma0,
                             const ScheduleSearchOptions& opts = {});

/// Best of `opts.restarts` local runs from uniform points in p1_init_box.
/// Ties go to the lowest restart index.
ScheduleFit optimize_p1_grid(QaoaEvaluator& evaluator, ObjectiveKind kind, const ScheduleSearchOptions& opts = {});

/// One FOURIER[inf,0] step: pads (u, v) with a zero and re-optimises at depth
/// p+1. If that lands below the depth-p objective, the depth-p schedule with
/// an appended identity layer is also tried, so the objective never drops.
ScheduleFit fourier_extend(QaoaEvaluator& evaluator, const ScheduleFit& previous, ObjectiveKind kind,
                           const ScheduleSearchOptions& opts = {});

/// Depths 1..p_max: p = 1 from optimize_p1_grid, then repeated fourier_extend.
std::vector<ScheduleFit> fourier_chain(QaoaEvaluator& evaluator, ObjectiveKind kind, int p_max,
                                       const ScheduleSearchOptions& opts = {});

/// Independent baseline: best of `opts.restarts` local runs at depth p from
/// uniform random angles, every layer drawn from p1_init_box(kind).
ScheduleFit optimize_direct(QaoaEvaluator& evaluator, ObjectiveKind kind, int p, const ScheduleSearchOptions& opts);

/// Size-independent parameters: mean beta and mean N_j * gamma.
struct FixedParams {
    std::vector<double> beta_fixed;
    std::vector<double> gamma_fixed_scaled;
    std::vector<int> source_sizes;

    [[nodiscard]] int depth() const { return static_cast<int>(beta_fixed.size()); }
    [[nodiscard]] int count() const { return static_cast<int>(source_sizes.size()); }
    friend bool operator==(const FixedParams&, const FixedParams&) = default;
};

FixedParams make_fixed_params(const std::vector<std::pair<int, Schedule>>& optimized);

/// (beta_fixed, gamma_fixed_scaled / N).
Schedule instantiate_fixed(const FixedParams& fixed, int n);

}  // namespace labs_qaoa
