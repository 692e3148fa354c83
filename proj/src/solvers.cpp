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

#include "labs/solvers.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

#include "labs/parallel.hpp"

namespace labs_qaoa {

std::string to_string(SolverKind kind) {
    switch (kind) {
        case SolverKind::exhaustive:
            return "exhaustive";
        case SolverKind::tabu:
            return "tabu";
        case SolverKind::memetic_tabu:
            return "memetic_tabu";
    }
    return "memetic_tabu";
}

SolverKind solver_kind_from_string(const std::string& text) {
    if (text == "exhaustive") {
        return SolverKind::exhaustive;
    }
    if (text == "tabu") {
        return SolverKind::tabu;
    }
    if (text == "memetic_tabu" || text == "memetic-tabu" || text == "memetic") {
        return SolverKind::memetic_tabu;
    }
    throw std::invalid_argument("unknown solver '" + text + "'");
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

SpinSequence to_sequence(const std::vector<std::int8_t>& spins) {
    return SpinSequence(std::vector<int>(spins.begin(), spins.end()));
}

void check_size(int n) {
    if (n < 2 || n > kMaxSequenceLength) {
        throw std::invalid_argument("sequence length must lie in [2, " + std::to_string(kMaxSequenceLength) + "]");
    }
}

// Free variables of the search. Plain search has one per spin; the
// skew-symmetric subspace of odd N = 2k - 1 has k, and flipping variable l
// flips positions c - l and c + l around the centre c together.
struct Layout {
    int n = 0;
    bool skew = false;
    std::vector<std::vector<int>> moves;

    Layout(int n_, bool skew_) : n(n_), skew(skew_) {
        if (!skew) {
            for (int i = 0; i < n; ++i) {
                moves.push_back({i});
            }
            return;
        }
        if (n % 2 == 0) {
            throw std::invalid_argument("skew-symmetric search needs odd N");
        }
        const int c = (n - 1) / 2;
        moves.push_back({c});
        for (int l = 1; l <= c; ++l) {
            moves.push_back({c - l, c + l});
        }
    }

    [[nodiscard]] int size() const { return static_cast<int>(moves.size()); }

    // Genome bit g holds the spin at moves[g][0].
    [[nodiscard]] std::vector<std::int8_t> expand(const std::vector<std::int8_t>& genome) const {
        std::vector<std::int8_t> spins(static_cast<std::size_t>(n), 1);
        const int c = (n - 1) / 2;
        for (int g = 0; g < size(); ++g) {
            const auto& m = moves[static_cast<std::size_t>(g)];
            spins[static_cast<std::size_t>(m[0])] = genome[static_cast<std::size_t>(g)];
            if (m.size() == 2) {
                const int l = m[1] - c;
                spins[static_cast<std::size_t>(m[1])] =
                    static_cast<std::int8_t>((l % 2 == 0 ? 1 : -1) * genome[static_cast<std::size_t>(g)]);
            }
        }
        return spins;
    }

    [[nodiscard]] std::vector<std::int8_t> genome_of(const std::vector<std::int8_t>& spins) const {
        std::vector<std::int8_t> genome;
        for (const auto& m : moves) {
            genome.push_back(spins[static_cast<std::size_t>(m[0])]);
        }
        return genome;
    }
};

struct State {
    std::vector<std::int8_t> spins;
    std::vector<std::int64_t> autocorr;
    std::int64_t energy = 0;
};

State make_state(const std::vector<std::int8_t>& spins) {
    State s;
    s.spins = spins;
    s.autocorr = autocorrelations(to_sequence(spins));
    for (auto a : s.autocorr) {
        s.energy += a * a;
    }
    return s;
}

// Shared search context: evaluation counter, budget, target and incumbent.
class Search {
   public:
    Search(int n, const SolverConfig& cfg)
        : n_(n), cfg_(cfg), layout_(n, cfg.skew_symmetric_only), rng_(cfg.seed) {
        if (cfg.budget <= 0) {
            throw std::invalid_argument("evaluation budget must be positive");
        }
        check_size(n);
    }

    [[nodiscard]] const Layout& layout() const { return layout_; }
    std::mt19937_64& rng() { return rng_; }
    [[nodiscard]] bool done() const { return evals_ >= cfg_.budget || hit_; }

    // Records a state reached at the current evaluation count.
    void offer(const State& s) { offer(s.spins, s.energy, evals_); }

    void offer(const std::vector<std::int8_t>& spins, std::int64_t energy, long long at) {
        if (!have_best_ || energy < best_energy_) {
            have_best_ = true;
            best_energy_ = energy;
            best_spins_ = spins;
            evals_to_best_ = at;
        }
        if (cfg_.target_energy && energy <= *cfg_.target_energy) {
            hit_ = true;
        }
    }

    [[nodiscard]] bool beats_best(std::int64_t energy) const { return !have_best_ || energy < best_energy_; }

    State charged_state(const std::vector<std::int8_t>& genome) {
        State s = make_state(layout_.expand(genome));
        ++evals_;
        offer(s);
        return s;
    }

    std::vector<std::int8_t> random_genome() {
        std::bernoulli_distribution coin(0.5);
        std::vector<std::int8_t> g(static_cast<std::size_t>(layout_.size()));
        for (auto& x : g) {
            x = coin(rng_) ? 1 : -1;
        }
        return g;
    }

    // Energy change for a move, charged as one evaluation.
    std::int64_t evaluate_move(const State& s, int move) {
        const auto& pos = layout_.moves[static_cast<std::size_t>(move)];
        std::int64_t delta = 0;
        if (pos.size() == 1) {
            delta = flip_delta(s.spins, s.autocorr, pos[0]);
        } else {
            auto spins = s.spins;
            auto ac = s.autocorr;
            for (int p : pos) {
                delta += apply_flip(spins, ac, p);
            }
        }
        ++evals_;
        if (cfg_.audit) {
            auto spins = s.spins;
            for (int p : pos) {
                spins[static_cast<std::size_t>(p)] = static_cast<std::int8_t>(-spins[static_cast<std::size_t>(p)]);
            }
            if (sidelobe_energy(to_sequence(spins)) != s.energy + delta) {
                throw std::logic_error("incremental energy disagrees with recomputation");
            }
        }
        return delta;
    }

    void apply_move(State& s, int move, std::int64_t delta) {
        for (int p : layout_.moves[static_cast<std::size_t>(move)]) {
            apply_flip(s.spins, s.autocorr, p);
        }
        s.energy += delta;
    }

    int draw_tenure() {
        const int lo = cfg_.tenure_min > 0 ? cfg_.tenure_min : n_ / 10 + 1;
        const int hi = cfg_.tenure_max > 0 ? cfg_.tenure_max : n_ / 2 + 1;
        if (lo > hi) {
            throw std::invalid_argument("tabu tenure range is empty");
        }
        return std::uniform_int_distribution<int>(lo, hi)(rng_);
    }

    // Tabu walk of at most `iters` iterations; returns the best state it visited.
    State tabu_walk(State s, int iters) {
        const int m = layout_.size();
        const int tenure = draw_tenure();
        std::vector<long long> tabu_until(static_cast<std::size_t>(m), 0);
        State local_best = s;
        for (int it = 0; it < iters && !done(); ++it) {
            int chosen = -1;
            std::int64_t chosen_delta = 0;
            long long chosen_at = 0;
            for (int mv = 0; mv < m && !done(); ++mv) {
                const std::int64_t delta = evaluate_move(s, mv);
                const std::int64_t cand = s.energy + delta;
                const bool allowed = tabu_until[static_cast<std::size_t>(mv)] <= it || beats_best(cand);
                if (allowed && (chosen < 0 || delta < chosen_delta)) {
                    chosen = mv;
                    chosen_delta = delta;
                    chosen_at = evals_;
                }
            }
            if (chosen < 0) {
                continue;
            }
            apply_move(s, chosen, chosen_delta);
            tabu_until[static_cast<std::size_t>(chosen)] = it + 1 + tenure;
            offer(s.spins, s.energy, chosen_at);
            if (s.energy < local_best.energy) {
                local_best = s;
            }
        }
        return local_best;
    }

    [[nodiscard]] SolveResult result(Clock::time_point t0) const {
        SolveResult r;
        r.best_sequence = to_sequence(best_spins_);
        r.best_energy = best_energy_;
        r.evaluations_to_best = evals_to_best_;
        r.evaluations_total = evals_;
        r.hit_target = hit_;
        r.wall_ms = elapsed_ms(t0);
        return r;
    }

    [[nodiscard]] int iters_per_walk() const {
        return cfg_.max_iters_per_restart > 0 ? cfg_.max_iters_per_restart : 10 * n_;
    }
    // Default walk length is drawn per offspring from [N/2, 3N/2].
    int offspring_iters() {
        if (cfg_.offspring_tabu_iters > 0) {
            return cfg_.offspring_tabu_iters;
        }
        std::uniform_int_distribution<int> len(std::max(1, n_ / 2), std::max(1, 3 * n_ / 2));
        return len(rng_);
    }

   private:
    int n_;
    const SolverConfig& cfg_;
    Layout layout_;
    std::mt19937_64 rng_;
    long long evals_ = 0;
    bool hit_ = false;
    bool have_best_ = false;
    std::int64_t best_energy_ = 0;
    std::vector<std::int8_t> best_spins_;
    long long evals_to_best_ = 0;
};

void check_start(const SpinSequence& start, int n, bool skew) {
    if (start.size() != n) {
        throw std::invalid_argument("start sequence has the wrong length");
    }
    if (skew && !is_skew_symmetric(start)) {
        throw std::invalid_argument("start sequence is not skew-symmetric");
    }
}

}  // namespace

SolveResult solve_exhaustive(int n, const SolverConfig& config) {
    check_size(n);
    if (n > 28 && !config.allow_long) {
        throw ResourceError("exhaustive search above N = 28 is long-running; pass allow_long to proceed");
    }
    if (config.skew_symmetric_only && config.fundamental_domain) {
        throw std::invalid_argument("skew-symmetric and fundamental-domain enumeration cannot be combined");
    }
    const auto t0 = Clock::now();
    const Layout layout(n, config.skew_symmetric_only);
    // Variables that the Gray code walks over.
    std::vector<int> free_vars;
    for (int g = config.fundamental_domain ? 2 : 0; g < layout.size(); ++g) {
        free_vars.push_back(g);
    }
    if (free_vars.size() > 62) {
        throw ResourceError("enumeration space too large");
    }

    // The walk starts from a seed-dependent point so that the evaluations
    // needed to reach a target average over start positions.
    std::vector<std::int8_t> start(static_cast<std::size_t>(layout.size()), 1);
    std::mt19937_64 rng(config.seed);
    std::bernoulli_distribution coin(0.5);
    for (int g : free_vars) {
        start[static_cast<std::size_t>(g)] = coin(rng) ? -1 : 1;
    }
    State s = make_state(layout.expand(start));
    long long evals = 1;
    SolveResult r;
    r.best_energy = s.energy;
    r.best_sequence = to_sequence(s.spins);
    r.evaluations_to_best = 1;
    std::vector<BasisIndex> optima;
    auto index_of = [](const std::vector<std::int8_t>& spins) {
        BasisIndex x = 0;
        for (std::size_t i = 0; i < spins.size(); ++i) {
            if (spins[i] < 0) {
                x |= BasisIndex{1} << i;
            }
        }
        return x;
    };
    if (config.collect_optima) {
        optima.push_back(index_of(s.spins));
    }
    const bool early_stop = config.target_energy.has_value() && !config.collect_optima;
    bool hit = config.target_energy && s.energy <= *config.target_energy;

    const std::uint64_t total = std::uint64_t{1} << free_vars.size();
    for (std::uint64_t g = 1; g < total && !(early_stop && hit); ++g) {
        const int var = free_vars[static_cast<std::size_t>(std::countr_zero(g))];
        for (int p : layout.moves[static_cast<std::size_t>(var)]) {
            s.energy += apply_flip(s.spins, s.autocorr, p);
        }
        ++evals;
        if (s.energy < r.best_energy) {
            r.best_energy = s.energy;
            r.best_sequence = to_sequence(s.spins);
            r.evaluations_to_best = evals;
            optima.clear();
        }
        if (config.collect_optima && s.energy == r.best_energy) {
            optima.push_back(index_of(s.spins));
        }
        if (config.target_energy && s.energy <= *config.target_energy) {
            hit = true;
        }
    }
    if (config.collect_optima) {
        if (config.fundamental_domain) {
            std::vector<BasisIndex> expanded;
            for (auto x : optima) {
                for (const auto& g : SymmetryAction::group()) {
                    expanded.push_back(apply_symmetry(n, x, g));
                }
            }
            optima = std::move(expanded);
        }
        std::sort(optima.begin(), optima.end());
        optima.erase(std::unique(optima.begin(), optima.end()), optima.end());
        r.optima = std::move(optima);
    }
    r.evaluations_total = evals;
    r.hit_target = config.target_energy ? hit : true;
    r.wall_ms = elapsed_ms(t0);
    return r;
}

SolveResult solve_tabu(int n, const SolverConfig& config, const SpinSequence& start) {
    const auto t0 = Clock::now();
    Search search(n, config);
    check_start(start, n, config.skew_symmetric_only);
    const std::vector<std::int8_t> spins(start.spins().begin(), start.spins().end());
    State s = make_state(spins);
    search.offer(s);
    while (!search.done()) {
        search.tabu_walk(s, search.iters_per_walk());
        if (search.done()) {
            break;
        }
        s = search.charged_state(search.random_genome());
    }
    return search.result(t0);
}

SolveResult solve_tabu(int n, const SolverConfig& config) {
    const auto t0 = Clock::now();
    Search search(n, config);
    State s = search.charged_state(search.random_genome());
    while (!search.done()) {
        search.tabu_walk(s, search.iters_per_walk());
        if (search.done()) {
            break;
        }
        s = search.charged_state(search.random_genome());
    }
    return search.result(t0);
}

namespace {

SolveResult run_memetic(int n, const SolverConfig& config, Search& search, std::vector<State> pop,
                        Clock::time_point t0) {
    if (config.population < 2 || config.tournament < 1) {
        throw std::invalid_argument("memetic search needs population >= 2 and tournament >= 1");
    }
    const Layout& layout = search.layout();
    const double mutation = config.mutation_rate > 0 ? config.mutation_rate : 1.0 / layout.size();
    auto& rng = search.rng();
    std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
    std::bernoulli_distribution do_cross(config.crossover_rate);
    std::bernoulli_distribution coin(0.5);
    std::bernoulli_distribution do_mutate(mutation);

    auto tournament = [&]() -> const State& {
        std::size_t best = pick(rng);
        for (int t = 1; t < config.tournament; ++t) {
            const std::size_t other = pick(rng);
            if (pop[other].energy < pop[best].energy) {
                best = other;
            }
        }
        return pop[best];
    };

    while (!search.done()) {
        const auto a = layout.genome_of(tournament().spins);
        const auto b = layout.genome_of(tournament().spins);
        auto child = a;
        if (do_cross(rng)) {
            for (std::size_t i = 0; i < child.size(); ++i) {
                if (coin(rng)) {
                    child[i] = b[i];
                }
            }
        }
        for (auto& x : child) {
            if (do_mutate(rng)) {
                x = static_cast<std::int8_t>(-x);
            }
        }
        State c = search.charged_state(child);
        if (search.done()) {
            break;
        }
        c = search.tabu_walk(std::move(c), search.offspring_iters());
        auto worst = std::max_element(pop.begin(), pop.end(),
                                      [](const State& x, const State& y) { return x.energy < y.energy; });
        if (c.energy < worst->energy) {
            *worst = std::move(c);
        }
    }
    (void)n;
    return search.result(t0);
}

}  // namespace

SolveResult solve_memetic_tabu(int n, const SolverConfig& config) {
    const auto t0 = Clock::now();
    Search search(n, config);
    std::vector<State> pop;
    for (int i = 0; i < config.population && !search.done(); ++i) {
        pop.push_back(search.charged_state(search.random_genome()));
    }
    if (search.done()) {
        return search.result(t0);
    }
    return run_memetic(n, config, search, std::move(pop), t0);
}

SolveResult solve_memetic_tabu(int n, const SolverConfig& config, const std::vector<SpinSequence>& population) {
    const auto t0 = Clock::now();
    Search search(n, config);
    if (static_cast<int>(population.size()) < 2) {
        throw std::invalid_argument("memetic search needs population >= 2");
    }
    std::vector<State> pop;
    for (const auto& seq : population) {
        check_start(seq, n, config.skew_symmetric_only);
        pop.push_back(search.charged_state(search.layout().genome_of({seq.spins().begin(), seq.spins().end()})));
        if (search.done()) {
            return search.result(t0);
        }
    }
    return run_memetic(n, config, search, std::move(pop), t0);
}

SolveResult solve(int n, const SolverConfig& config) {
    switch (config.kind) {
        case SolverKind::exhaustive:
            return solve_exhaustive(n, config);
        case SolverKind::tabu:
            return solve_tabu(n, config);
        case SolverKind::memetic_tabu:
            return solve_memetic_tabu(n, config);
    }
    throw std::invalid_argument("unknown solver kind");
}

std::int64_t optimal_energy(int n) {
    static std::mutex mu;
    static std::map<int, std::int64_t> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(n); it != cache.end()) {
            return it->second;
        }
    }
    SolverConfig cfg;
    cfg.kind = SolverKind::exhaustive;
    cfg.fundamental_domain = n >= 4;
    const std::int64_t e = solve_exhaustive(n, cfg).best_energy;
    std::lock_guard<std::mutex> lock(mu);
    cache[n] = e;
    return e;
}

TtsTable measure_tts(const SolverConfig& config, const std::vector<int>& sizes, int seeds, int workers) {
    if (seeds < 1) {
        throw std::invalid_argument("need at least one seed");
    }
    std::vector<std::int64_t> targets;
    for (int n : sizes) {
        targets.push_back(optimal_energy(n));
    }
    TtsTable table;
    table.rows.resize(sizes.size() * static_cast<std::size_t>(seeds));
    parallel_chunks(table.rows.size(), workers, [&](std::size_t cell) {
        const std::size_t which = cell / static_cast<std::size_t>(seeds);
        const int s = static_cast<int>(cell % static_cast<std::size_t>(seeds));
        const int n = sizes[which];
        SolverConfig cfg = config;
        cfg.seed = derive_seed(config.seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s)});
        cfg.target_energy = targets[which];
        const SolveResult r = solve(n, cfg);
        table.rows[cell] = {n, s, cfg.seed, r.evaluations_to_best, r.hit_target, r.wall_ms};
    });
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        TtsSummary sum;
        sum.n = sizes[i];
        sum.seeds = seeds;
        double acc = 0.0;
        for (int s = 0; s < seeds; ++s) {
            const auto& row = table.rows[i * static_cast<std::size_t>(seeds) + static_cast<std::size_t>(s)];
            if (row.hit_target) {
                ++sum.hits;
                acc += static_cast<double>(row.evaluations_to_best);
            }
        }
        sum.mean_evaluations = sum.hits > 0 ? acc / sum.hits : 0.0;
        table.summary.push_back(sum);
    }
    return table;
}

}  // namespace labs_qaoa
