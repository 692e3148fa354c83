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

#include <optional>
#include <span>
#include <vector>

#include "labs/energy_table.hpp"
#include "labs/schedule.hpp"

namespace labs_qaoa {

struct FitPoint {
    int n = 0;
    double tts = 0.0;
};

/// Least-squares fit of ln(tts) = a + N ln(base).
struct ScalingFit {
    double base = 0.0;
    double log_intercept = 0.0;
    double slope = 0.0;     // ln(base)
    double slope_se = 0.0;  // standard error of the slope
    double ci_low = 0.0;    // 95% interval on base
    double ci_high = 0.0;
    double r_squared = 0.0;
    int n_points = 0;
    int n_min = 0;
};

/// Uses points with N >= n_min. Needs at least three of them, all tts > 0.
ScalingFit fit_exponential(std::span<const FitPoint> points, int n_min);

struct FitQualityRow {
    int n_min = 0;
    int n_points = 0;
    double r_squared = 0.0;
    double base = 0.0;
};

/// fit_exponential for each cutoff; cutoffs leaving fewer than three points
/// are skipped.
std::vector<FitQualityRow> fit_quality_sweep(std::span<const FitPoint> points, std::span<const int> n_min_values);

/// Pearson correlation; empty if either variable is constant.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

/// Distance from every bitstring to the nearest of `targets`, by breadth-first
/// search over the hypercube.
std::vector<int> hamming_distance_to_set(int n, std::span<const BasisIndex> targets);

/// Correlation between distance to the nearest optimum and sidelobe energy
/// over all 2^N bitstrings. Empty when the energies are all equal.
std::optional<double> hamming_objective_correlation(const EnergyTable& table);

/// Same, for an arbitrary objective over 2^N bitstrings and target set.
std::optional<double> hamming_objective_correlation(int n, std::span<const double> objective,
                                                    std::span<const BasisIndex> targets);

struct GainRow {
    int step = 0;
    double qaoa_p_opt = 0.0;
    double qaoa_gain = 0.0;
    double aa_gain = 0.0;
};

/// QAOA gain p_opt(p) / p_opt(p-1) for the given depth-1..max_p schedules
/// (step 0 is the uniform state), against amplitude-amplification gains
/// from p0 = |optimal| / 2^N.
std::vector<GainRow> gain_comparison(const EnergyTable& table, std::span<const Schedule> schedules_by_depth);

}  // namespace labs_qaoa
