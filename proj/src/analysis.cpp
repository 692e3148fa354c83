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

#include "labs/analysis.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <stdexcept>

#include "labs/minfind.hpp"
#include "labs/qaoa.hpp"

namespace labs_qaoa {

ScalingFit fit_exponential(std::span<const FitPoint> points, int n_min) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& p : points) {
        if (p.n < n_min) {
            continue;
        }
        if (!(p.tts > 0.0) || !std::isfinite(p.tts)) {
            throw std::invalid_argument("time-to-solution values must be positive and finite");
        }
        xs.push_back(p.n);
        ys.push_back(std::log(p.tts));
    }
    const std::size_t k = xs.size();
    if (k < 3) {
        throw std::invalid_argument("an exponential fit needs at least three points with N >= N_min");
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(k);
    my /= static_cast<double>(k);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("an exponential fit needs at least two distinct N");
    }
    ScalingFit f;
    f.n_points = static_cast<int>(k);
    f.n_min = n_min;
    f.slope = sxy / sxx;
    f.log_intercept = my - f.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double r = ys[i] - (f.log_intercept + f.slope * xs[i]);
        sse += r * r;
    }
    const double df = static_cast<double>(k) - 2.0;
    f.slope_se = std::sqrt(sse / df / sxx);
    f.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - sse / syy) : 1.0;
    const boost::math::students_t dist(df);
    const double tq = boost::math::quantile(boost::math::complement(dist, 0.025));
    f.base = std::exp(f.slope);
    f.ci_low = std::exp(f.slope - tq * f.slope_se);
    f.ci_high = std::exp(f.slope + tq * f.slope_se);
    return f;
}

std::vector<FitQualityRow> fit_quality_sweep(std::span<const FitPoint> points, std::span<const int> n_min_values) {
    std::vector<FitQualityRow> rows;
    for (int n_min : n_min_values) {
        int count = 0;
        for (const auto& p : points) {
            count += p.n >= n_min ? 1 : 0;
        }
        if (count < 3) {
            continue;
        }
        const ScalingFit f = fit_exponential(points, n_min);
        rows.push_back({n_min, f.n_points, f.r_squared, f.base});
    }
    return rows;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("pearson needs two equally long samples of size >= 2");
    }
    const double k = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= k;
    my /= k;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) {
        return std::nullopt;
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<int> hamming_distance_to_set(int n, std::span<const BasisIndex> targets) {
    if (n < 1 || n > 30) {
        throw std::invalid_argument("hamming distances are computed exhaustively for 1 <= N <= 30");
    }
    if (targets.empty()) {
        throw std::invalid_argument("target set is empty");
    }
    const std::size_t dim = std::size_t{1} << n;
    std::vector<int> dist(dim, -1);
    std::vector<BasisIndex> frontier;
    for (auto t : targets) {
        if (t >= dim) {
            throw std::invalid_argument("target index out of range");
        }
        if (dist[t] < 0) {
            dist[t] = 0;
            frontier.push_back(t);
        }
    }
    for (int d = 1; !frontier.empty(); ++d) {
        std::vector<BasisIndex> next;
        for (auto x : frontier) {
            for (int b = 0; b < n; ++b) {
                const BasisIndex y = x ^ (BasisIndex{1} << b);
                if (dist[y] < 0) {
                    dist[y] = d;
                    next.push_back(y);
                }
            }
        }
        frontier = std::move(next);
    }
    return dist;
}

std::optional<double> hamming_objective_correlation(int n, std::span<const double> objective,
                                                    std::span<const BasisIndex> targets) {
    const auto dist = hamming_distance_to_set(n, targets);
    if (objective.size() != dist.size()) {
        throw std::invalid_argument("objective must have 2^N entries");
    }
    const std::vector<double> d(dist.begin(), dist.end());
    return pearson(d, objective);
}

std::optional<double> hamming_objective_correlation(const EnergyTable& table) {
    const std::vector<double> e(table.energies.begin(), table.energies.end());
    return hamming_objective_correlation(table.n, e, table.optimal_indices);
}

std::vector<GainRow> gain_comparison(const EnergyTable& table, std::span<const Schedule> schedules_by_depth) {
    const double p0 = table.random_guess_probability();
    const auto aa = aa_gain_curve(p0, static_cast<int>(schedules_by_depth.size()));
    std::vector<GainRow> rows;
    double prev = p0;
    for (std::size_t i = 0; i < schedules_by_depth.size(); ++i) {
        const Schedule& s = schedules_by_depth[i];
        if (s.depth() != static_cast<int>(i) + 1) {
            throw std::invalid_argument("schedule " + std::to_string(i) + " should have depth " +
                                        std::to_string(i + 1));
        }
        const Statevector state = prepare_qaoa_state(table, s);
        const double popt = optimal_probability(state, table);
        rows.push_back({static_cast<int>(i) + 1, popt, popt / prev, aa[i]});
        prev = popt;
    }
    return rows;
}

}  // namespace labs_qaoa
