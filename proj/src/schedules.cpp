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

#include "labs/schedules.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "labs/parallel.hpp"

namespace labs_qaoa {

std::string to_string(Provenance::Kind kind) {
    switch (kind) {
        case Provenance::Kind::unspecified:
            return "unspecified";
        case Provenance::Kind::directly_optimized:
            return "directly_optimized";
        case Provenance::Kind::fourier_extended:
            return "fourier_extended";
        case Provenance::Kind::fixed_rescaled:
            return "fixed_rescaled";
    }
    return "unspecified";
}

Provenance::Kind provenance_kind_from_string(const std::string& text) {
    for (auto k : {Provenance::Kind::unspecified, Provenance::Kind::directly_optimized,
                   Provenance::Kind::fourier_extended, Provenance::Kind::fixed_rescaled}) {
        if (to_string(k) == text) {
            return k;
        }
    }
    throw std::invalid_argument("unknown schedule provenance '" + text + "'");
}

void Schedule::validate() const {
    if (betas.empty() || betas.size() != gammas.size()) {
        throw std::invalid_argument("schedule needs equal, nonzero numbers of betas and gammas");
    }
}

namespace {

double basis_angle(int k, int i, int p) {
    return (k + 0.5) * (i + 0.5) * std::numbers::pi / p;
}

}  // namespace

Schedule fourier_to_schedule(const FourierCoeffs& coeffs, int p) {
    if (p < 1 || coeffs.u.size() != static_cast<std::size_t>(p) || coeffs.v.size() != static_cast<std::size_t>(p)) {
        throw std::invalid_argument("fourier coefficients must both have length p");
    }
    Schedule s;
    s.betas.assign(static_cast<std::size_t>(p), 0.0);
    s.gammas.assign(static_cast<std::size_t>(p), 0.0);
    for (int i = 0; i < p; ++i) {
        for (int k = 0; k < p; ++k) {
            const double a = basis_angle(k, i, p);
            s.gammas[static_cast<std::size_t>(i)] += coeffs.u[static_cast<std::size_t>(k)] * std::sin(a);
            s.betas[static_cast<std::size_t>(i)] += coeffs.v[static_cast<std::size_t>(k)] * std::cos(a);
        }
    }
    return s;
}

FourierCoeffs schedule_to_fourier(const Schedule& schedule) {
    schedule.validate();
    const int p = schedule.depth();
    FourierCoeffs c;
    c.u.assign(static_cast<std::size_t>(p), 0.0);
    c.v.assign(static_cast<std::size_t>(p), 0.0);
    // The DST-IV and DCT-IV matrices satisfy S S^T = (p/2) I.
    for (int k = 0; k < p; ++k) {
        for (int i = 0; i < p; ++i) {
            const double a = basis_angle(k, i, p);
            c.u[static_cast<std::size_t>(k)] += schedule.gammas[static_cast<std::size_t>(i)] * std::sin(a);
            c.v[static_cast<std::size_t>(k)] += schedule.betas[static_cast<std::size_t>(i)] * std::cos(a);
        }
        c.u[static_cast<std::size_t>(k)] *= 2.0 / p;
        c.v[static_cast<std::size_t>(k)] *= 2.0 / p;
    }
    return c;
}

std::string to_string(ObjectiveKind kind) {
    return kind == ObjectiveKind::merit_factor ? "mf" : "p_opt";
}

ObjectiveKind objective_kind_from_string(const std::string& text) {
    if (text == "mf" || text == "MF" || text == "merit_factor") {
        return ObjectiveKind::merit_factor;
    }
    if (text == "p_opt" || text == "popt") {
        return ObjectiveKind::p_opt;
    }
    throw std::invalid_argument("unknown objective '" + text + "' (expected mf or p_opt)");
}

double objective_value(const QaoaEvaluator::Value& value, ObjectiveKind kind) {
    return kind == ObjectiveKind::merit_factor ? value.merit_factor : value.p_opt;
}

// With exp(-i beta sum X) exp(-i gamma H_C) and gamma > 0, good angles have
// beta < 0, so the published beta ranges are applied with a minus sign.
InitBox p1_init_box(ObjectiveKind kind) {
    if (kind == ObjectiveKind::merit_factor) {
        return {-0.2, -0.1, 0.0, 0.85};
    }
    return {-0.3, -0.15, 0.6, 1.2};
}

namespace {

LocalOptions local_options(const ScheduleSearchOptions& opts, int n) {
    LocalOptions lo;
    lo.method = opts.method;
    lo.initial_step = 0.01 / n;
    lo.rel_tol = opts.rel_tol;
    lo.max_evals = opts.max_evals;
    return lo;
}

// Optimises directly over (betas, gammas) at depth p.
ScheduleFit optimize_angles(QaoaEvaluator& evaluator, ObjectiveKind kind, const Schedule& start,
                            const ScheduleSearchOptions& opts) {
    const int p = start.depth();
    std::vector<double> x0(start.betas);
    x0.insert(x0.end(), start.gammas.begin(), start.gammas.end());
    Schedule trial;
    trial.betas.resize(static_cast<std::size_t>(p));
    trial.gammas.resize(static_cast<std::size_t>(p));
    auto f = [&](const std::vector<double>& x) {
        std::copy(x.begin(), x.begin() + p, trial.betas.begin());
        std::copy(x.begin() + p, x.end(), trial.gammas.begin());
        return -objective_value(evaluator.evaluate(trial), kind);
    };
    const LocalResult r = optimize_local(f, x0, local_options(opts, evaluator.n()));
    ScheduleFit fit;
    fit.schedule.betas.assign(r.x.begin(), r.x.begin() + p);
    fit.schedule.gammas.assign(r.x.begin() + p, r.x.end());
    fit.schedule.provenance = {Provenance::Kind::directly_optimized, evaluator.n()};
    fit.coeffs = schedule_to_fourier(fit.schedule);
    fit.objective = -r.f;
    fit.evaluations = r.evaluations;
    fit.hit_eval_cap = r.hit_eval_cap;
    return fit;
}

// Optimises over Fourier coefficients at depth |u|.
ScheduleFit optimize_coeffs(QaoaEvaluator& evaluator, ObjectiveKind kind, const FourierCoeffs& start,
                            const ScheduleSearchOptions& opts) {
    const int p = start.depth();
    std::vector<double> x0(start.u);
    x0.insert(x0.end(), start.v.begin(), start.v.end());
    FourierCoeffs c;
    auto unpack = [&](const std::vector<double>& x) {
        c.u.assign(x.begin(), x.begin() + p);
        c.v.assign(x.begin() + p, x.end());
    };
    auto f = [&](const std::vector<double>& x) {
        unpack(x);
        return -objective_value(evaluator.evaluate(fourier_to_schedule(c, p)), kind);
    };
    const LocalResult r = optimize_local(f, x0, local_options(opts, evaluator.n()));
    unpack(r.x);
    ScheduleFit fit;
    fit.coeffs = c;
    fit.schedule = fourier_to_schedule(c, p);
    fit.schedule.provenance = {Provenance::Kind::fourier_extended, evaluator.n()};
    fit.objective = -r.f;
    fit.evaluations = r.evaluations;
    fit.hit_eval_cap = r.hit_eval_cap;
    return fit;
}

template <typename Draw>
ScheduleFit best_of_restarts(QaoaEvaluator& evaluator, ObjectiveKind kind, const ScheduleSearchOptions& opts,
                             Draw draw) {
    if (opts.restarts < 1) {
        throw std::invalid_argument("need at least one restart");
    }
    ScheduleFit best;
    long long spent = 0;
    bool any_capped = false;
    for (int r = 0; r < opts.restarts; ++r) {
        std::mt19937_64 rng(derive_seed(opts.seed, {static_cast<std::uint64_t>(r)}));
        ScheduleFit fit = optimize_angles(evaluator, kind, draw(rng), opts);
        spent += fit.evaluations;
        any_capped = any_capped || fit.hit_eval_cap;
        // Strict comparison keeps the lowest restart index on ties.
        if (r == 0 || fit.objective > best.objective) {
            best = std::move(fit);
        }
    }
    best.evaluations = spent;
    best.hit_eval_cap = any_capped;
    return best;
}

}  // namespace

ScheduleFit optimize_p1_from(QaoaEvaluator& evaluator, ObjectiveKind kind, double beta0, double gamma0,
                             const ScheduleSearchOptions& opts) {
    Schedule start;
    start.betas = {beta0};
    start.gammas = {gamma0};
    return optimize_angles(evaluator, kind, start, opts);
}

ScheduleFit optimize_p1_grid(QaoaEvaluator& evaluator, ObjectiveKind kind, const ScheduleSearchOptions& opts) {
    const InitBox box = p1_init_box(kind);
    const double n = evaluator.n();
    return best_of_restarts(evaluator, kind, opts, [&](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> ub(box.beta_lo, box.beta_hi);
        std::uniform_real_distribution<double> ug(box.gamma_lo_n / n, box.gamma_hi_n / n);
        Schedule s;
        s.betas = {ub(rng)};
        s.gammas = {ug(rng)};
        return s;
    });
}

ScheduleFit optimize_direct(QaoaEvaluator& evaluator, ObjectiveKind kind, int p, const ScheduleSearchOptions& opts) {
    if (p < 1) {
        throw std::invalid_argument("depth must be at least 1");
    }
    const double n = evaluator.n();
    const InitBox box = p1_init_box(kind);
    return best_of_restarts(evaluator, kind, opts, [&](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> ub(box.beta_lo, box.beta_hi);
        std::uniform_real_distribution<double> ug(box.gamma_lo_n / n, box.gamma_hi_n / n);
        Schedule s;
        for (int l = 0; l < p; ++l) {
            s.betas.push_back(ub(rng));
            s.gammas.push_back(ug(rng));
        }
        return s;
    });
}

ScheduleFit fourier_extend(QaoaEvaluator& evaluator, const ScheduleFit& previous, ObjectiveKind kind,
                           const ScheduleSearchOptions& opts) {
    FourierCoeffs padded = previous.coeffs;
    if (padded.depth() == 0) {
        padded = schedule_to_fourier(previous.schedule);
    }
    padded.u.push_back(0.0);
    padded.v.push_back(0.0);
    ScheduleFit fit = optimize_coeffs(evaluator, kind, padded, opts);
    if (fit.objective < previous.objective) {
        // An identity layer reproduces the shallower state exactly, so this
        // start is at least as good as the previous depth.
        Schedule identity_padded = previous.schedule;
        identity_padded.betas.push_back(0.0);
        identity_padded.gammas.push_back(0.0);
        ScheduleFit alt = optimize_coeffs(evaluator, kind, schedule_to_fourier(identity_padded), opts);
        alt.evaluations += fit.evaluations;
        alt.hit_eval_cap = alt.hit_eval_cap || fit.hit_eval_cap;
        if (alt.objective > fit.objective) {
            fit = std::move(alt);
        } else {
            fit.evaluations = alt.evaluations;
        }
        if (fit.objective < previous.objective) {
            // Only reachable through rounding in the coefficient transform:
            // keep the identity-padded angles themselves.
            fit.schedule = identity_padded;
            fit.schedule.provenance = {Provenance::Kind::fourier_extended, evaluator.n()};
            fit.coeffs = schedule_to_fourier(identity_padded);
            fit.objective = objective_value(evaluator.evaluate(identity_padded), kind);
            ++fit.evaluations;
        }
    }
    return fit;
}

std::vector<ScheduleFit> fourier_chain(QaoaEvaluator& evaluator, ObjectiveKind kind, int p_max,
                                       const ScheduleSearchOptions& opts) {
    if (p_max < 1) {
        throw std::invalid_argument("p_max must be at least 1");
    }
    std::vector<ScheduleFit> out;
    out.push_back(optimize_p1_grid(evaluator, kind, opts));
    for (int p = 2; p <= p_max; ++p) {
        out.push_back(fourier_extend(evaluator, out.back(), kind, opts));
    }
    return out;
}

FixedParams make_fixed_params(const std::vector<std::pair<int, Schedule>>& optimized) {
    if (optimized.empty()) {
        throw std::invalid_argument("fixed parameters need at least one source schedule");
    }
    const int p = optimized.front().second.depth();
    FixedParams fp;
    fp.beta_fixed.assign(static_cast<std::size_t>(p), 0.0);
    fp.gamma_fixed_scaled.assign(static_cast<std::size_t>(p), 0.0);
    for (const auto& [n, s] : optimized) {
        s.validate();
        if (s.depth() != p) {
            throw std::invalid_argument("fixed-parameter sources must share one depth");
        }
        fp.source_sizes.push_back(n);
        for (std::size_t l = 0; l < static_cast<std::size_t>(p); ++l) {
            fp.beta_fixed[l] += s.betas[l];
            fp.gamma_fixed_scaled[l] += n * s.gammas[l];
        }
    }
    const double m = static_cast<double>(optimized.size());
    for (std::size_t l = 0; l < static_cast<std::size_t>(p); ++l) {
        fp.beta_fixed[l] /= m;
        fp.gamma_fixed_scaled[l] /= m;
    }
    return fp;
}

Schedule instantiate_fixed(const FixedParams& fixed, int n) {
    if (n < 2) {
        throw std::invalid_argument("sequence length must be at least 2");
    }
    if (fixed.beta_fixed.empty() || fixed.beta_fixed.size() != fixed.gamma_fixed_scaled.size()) {
        throw std::invalid_argument("fixed parameters have mismatched lengths");
    }
    Schedule s;
    s.betas = fixed.beta_fixed;
    for (double g : fixed.gamma_fixed_scaled) {
        s.gammas.push_back(g / n);
    }
    s.provenance = {Provenance::Kind::fixed_rescaled, n};
    return s;
}

}  // namespace labs_qaoa
