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

#include "labs/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "labs/analysis.hpp"
#include "labs/compiler.hpp"
#include "labs/core.hpp"
#include "labs/energy_table.hpp"
#include "labs/errdetect.hpp"
#include "labs/minfind.hpp"
#include "labs/parallel.hpp"
#include "labs/qaoa.hpp"
#include "labs/schedules.hpp"
#include "labs/serialize.hpp"
#include "labs/solvers.hpp"
#include "labs/sweep.hpp"

namespace labs_qaoa {

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        try {
            const auto colon = item.find(':');
            if (colon == std::string::npos) {
                values.push_back(std::stoi(item));
                continue;
            }
            const int lo = std::stoi(item.substr(0, colon));
            const int hi = std::stoi(item.substr(colon + 1));
            if (hi < lo) {
                throw std::invalid_argument("empty range " + item);
            }
            for (int v = lo; v <= hi; ++v) {
                values.push_back(v);
            }
        } catch (const std::logic_error&) {
            throw std::invalid_argument("cannot parse integer list '" + text + "'");
        }
    }
    if (values.empty()) {
        throw std::invalid_argument("integer list '" + text + "' is empty");
    }
    return values;
}

namespace {

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        try {
            values.push_back(std::stod(item));
        } catch (const std::logic_error&) {
            throw std::invalid_argument("cannot parse number list '" + text + "'");
        }
    }
    return values;
}

struct Context {
    std::uint64_t seed = 0;
    int workers = 1;
    std::string out_dir;
    std::string format;
    std::ostream* out = nullptr;
    std::vector<std::string> outputs;

    [[nodiscard]] bool csv() const { return format == "csv"; }

    void write_file(const std::string& name, const std::string& text) {
        if (out_dir.empty()) {
            return;
        }
        std::filesystem::create_directories(out_dir);
        write_text_file((std::filesystem::path(out_dir) / name).string(), text);
        outputs.push_back(name);
    }

    /// Prints the result (CSV when requested and available) and saves both forms under --out.
    void emit(const std::string& stem, const Json& j, const std::optional<std::string>& csv_text = std::nullopt) {
        if (csv() && csv_text) {
            *out << *csv_text;
        } else {
            *out << j.dump(2) << '\n';
        }
        write_file(stem + ".json", j.dump(2) + "\n");
        if (csv_text) {
            write_file(stem + ".csv", *csv_text);
        }
    }
};

Schedule schedule_from_args(const std::string& params, const std::string& betas, const std::string& gammas, int n,
                            int p) {
    Schedule s;
    if (!params.empty()) {
        s = schedule_for_size(read_json_file(params), n);
    } else if (!betas.empty() || !gammas.empty()) {
        s.betas = parse_double_list(betas);
        s.gammas = parse_double_list(gammas);
    } else {
        throw std::invalid_argument("give --params or both --betas and --gammas");
    }
    s.validate();
    if (p > 0 && s.depth() != p) {
        throw std::invalid_argument("--p " + std::to_string(p) + " does not match the schedule depth " +
                                    std::to_string(s.depth()));
    }
    return s;
}

void require_n(int n) {
    if (n < 1) {
        throw std::invalid_argument("--n is required and must be positive");
    }
}

Json fit_row_json(int p, const ScheduleFit& fit) {
    Json j;
    j["p"] = p;
    j["objective"] = fit.objective;
    j["evaluations"] = fit.evaluations;
    j["hit_eval_cap"] = fit.hit_eval_cap;
    j["schedule"] = to_json(fit.schedule);
    return j;
}

Json manifest_options(const CLI::App* app) {
    Json j = Json::object();
    for (const CLI::Option* o : app->get_options()) {
        const std::string name = o->get_single_name();
        if (name.empty() || name == "help" || name == "version") {
            continue;
        }
        if (o->count() > 0) {
            const auto& res = o->results();
            if (o->get_expected_max() > 1) {
                j[name] = res;
            } else {
                j[name] = res.empty() ? std::string{} : res.back();
            }
        } else {
            j[name] = o->get_default_str();
        }
    }
    return j;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Low-autocorrelation binary sequences: QAOA simulation, classical solvers and circuit tools", "labs"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);

    Context ctx;
    ctx.out = &out;
    app.add_option("--seed", ctx.seed, "Global 64-bit seed")->capture_default_str();
    app.add_option("--workers", ctx.workers, "Worker threads")->capture_default_str()->check(CLI::Range(1, 1024));
    app.add_option("--out", ctx.out_dir, "Output directory for result files and manifest.json");
    app.add_option("--format", ctx.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));

    // Options shared by many subcommands.
    int n = 0;
    int p = 0;
    std::string params, betas_text, gammas_text;
    std::map<std::string, std::function<void()>> handlers;

    auto add_n = [&](CLI::App* sc, bool required) {
        auto* o = sc->add_option("--n", n, "Sequence length N");
        if (required) {
            o->required();
        }
        return o;
    };
    auto add_schedule = [&](CLI::App* sc) {
        sc->add_option("--params", params, "Schedule or fixed-parameter JSON file");
        sc->add_option("--betas", betas_text, "Comma-separated betas");
        sc->add_option("--gammas", gammas_text, "Comma-separated gammas");
    };

    // energy
    {
        struct Opts {
            std::string seq;
            std::string hex;
        };
        auto o = std::make_shared<Opts>();
        auto* sc = app.add_subcommand("energy", "Sidelobe energy and merit factor of one sequence");
        add_n(sc, false);
        sc->add_option("--seq", o->seq, "Sequence as +/- characters");
        sc->add_option("--hex", o->hex, "Sequence as a hex bitstring (bit j is position j+1, 1 means -1)");
        handlers["energy"] = [&, o] {
            auto& seq = o->seq;
            auto& hex = o->hex;
            if (seq.empty() == hex.empty()) {
                throw std::invalid_argument("give exactly one of --seq and --hex");
            }
            SpinSequence s;
            if (!seq.empty()) {
                s = SpinSequence::from_string(seq);
                if (n > 0 && n != s.size()) {
                    throw std::invalid_argument("--n does not match the sequence length");
                }
            } else {
                require_n(n);
                s = SpinSequence::from_index(n, hex_to_index(n, hex));
            }
            const std::int64_t e = sidelobe_energy(s);
            const double f = merit_factor(s);
            if (ctx.format.empty() || ctx.format == "text") {
                out << "E=" << e << " F=" << format_double(f) << '\n';
                return;
            }
            Json j;
            j["N"] = s.size();
            j["sequence"] = s.to_string();
            j["hex"] = index_to_hex(s.size(), s.to_index());
            j["energy"] = e;
            j["merit_factor"] = f;
            j["autocorrelations"] = autocorrelations(s);
            ctx.emit("energy", j, "N,sequence,energy,merit_factor\n" + std::to_string(s.size()) + "," + s.to_string() +
                                      "," + std::to_string(e) + "," + format_double(f) + "\n");
        };
    }

    // table
    {
        auto* sc = app.add_subcommand("table", "Exhaustive energy table with JSON summary and binary export");
        add_n(sc, true);
        handlers["table"] = [&] {
            const EnergyTable t = build_energy_table(n, ctx.workers);
            if (!ctx.out_dir.empty()) {
                std::ostringstream bin(std::ios::binary);
                write_energy_table_binary(t, bin);
                ctx.write_file("energy_table_N" + std::to_string(n) + ".bin", bin.str());
            }
            ctx.emit("table_summary", energy_table_summary(t));
        };
    }

    // optimal
    {
        struct Opts {
            bool allow_long = false;
        };
        auto o = std::make_shared<Opts>();
        auto* sc = app.add_subcommand("optimal", "Exhaustive optimum with all optimal sequences");
        add_n(sc, true);
        sc->add_flag("--allow-long", o->allow_long, "Permit N > 28");
        handlers["optimal"] = [&, o] {
            auto& allow_long = o->allow_long;
            SolverConfig cfg;
            cfg.kind = SolverKind::exhaustive;
            cfg.fundamental_domain = n >= 4;
            cfg.collect_optima = true;
            cfg.allow_long = allow_long;
            ctx.emit("optimal", to_json(solve_exhaustive(n, cfg)));
        };
    }

    // qaoa
    {
        auto* sc = app.add_subcommand("qaoa", "Simulate one QAOA schedule");
        add_n(sc, true);
        sc->add_option("--p", p, "Expected depth (checked against the schedule)");
        add_schedule(sc);
        handlers["qaoa"] = [&] {
            const Schedule s = schedule_from_args(params, betas_text, gammas_text, n, p);
            const EnergyTable t = build_energy_table(n, ctx.workers);
            const QaoaResult r = run_qaoa(enumerate_terms(n), s, t, KernelOptions{ctx.workers});
            std::string csv = "energy,probability\n";
            for (const auto& l : r.levels) {
                csv += std::to_string(l.energy) + "," + format_double(l.probability) + "\n";
            }
            ctx.emit("qaoa", to_json(r), csv);
        };
    }

    // optimize
    {
        struct Opts {
            std::string objective = "mf";
            std::string method = "trust_region";
            std::string scheme = "fourier";
            int restarts = 400;
            double rel_tol = 1e-8;
            long long max_evals = 0;
        };
        auto o = std::make_shared<Opts>();
        auto* sc = app.add_subcommand("optimize", "Optimise schedules at depths 1..p");
        add_n(sc, true);
        sc->add_option("--p", p, "Maximum depth")->required();
        sc->add_option("--objective", o->objective, "mf or p_opt")->capture_default_str();
        sc->add_option("--method", o->method, "trust_region or simplex")->capture_default_str();
        sc->add_option("--scheme", o->scheme, "fourier or direct")->capture_default_str()
            ->check(CLI::IsMember({"fourier", "direct"}));
        sc->add_option("--restarts", o->restarts, "Random restarts (p = 1 grid, or per depth for direct)")
            ->capture_default_str();
        sc->add_option("--rel-tol", o->rel_tol, "Relative tolerance")->capture_default_str();
        sc->add_option("--max-evals", o->max_evals, "Evaluation cap per local run (0: 10000 * dim)")
            ->capture_default_str();
        handlers["optimize"] = [&, o] {
            auto& objective = o->objective;
            auto& method = o->method;
            auto& scheme = o->scheme;
            auto& restarts = o->restarts;
            auto& rel_tol = o->rel_tol;
            auto& max_evals = o->max_evals;
            const ObjectiveKind kind = objective_kind_from_string(objective);
            ScheduleSearchOptions so;
            so.method = local_method_from_string(method);
            so.rel_tol = rel_tol;
            so.max_evals = max_evals;
            so.restarts = restarts;
            so.seed = ctx.seed;
            const EnergyTable t = build_energy_table(n, ctx.workers);
            QaoaEvaluator ev(t, KernelOptions{ctx.workers});
            std::vector<ScheduleFit> fits;
            if (scheme == "fourier") {
                fits = fourier_chain(ev, kind, p, so);
            } else {
                for (int d = 1; d <= p; ++d) {
                    ScheduleSearchOptions sd = so;
                    sd.seed = derive_seed(ctx.seed, {static_cast<std::uint64_t>(d)});
                    fits.push_back(optimize_direct(ev, kind, d, sd));
                }
            }
            Json j;
            j["N"] = n;
            j["objective"] = to_string(kind);
            j["scheme"] = scheme;
            j["method"] = to_string(so.method);
            Json rows = Json::array();
            std::string csv = "p,objective,evaluations\n";
            for (std::size_t i = 0; i < fits.size(); ++i) {
                const int d = static_cast<int>(i) + 1;
                rows.push_back(fit_row_json(d, fits[i]));
                csv += std::to_string(d) + "," + format_double(fits[i].objective) + "," +
                       std::to_string(fits[i].evaluations) + "\n";
                ctx.write_file("schedule_p" + std::to_string(d) + ".json", to_json(fits[i].schedule).dump(2) + "\n");
            }
            j["fits"] = std::move(rows);
            ctx.emit("optimize", j, csv);
        };
    }

    // fixed-params
    {
        struct Opts {
            std::string sources = "8:12";
            std::string objective = "p_opt";
            std::string method = "trust_region";
            int restarts = 400;
            std::vector<std::string> schedule_files;
        };
        auto o = std::make_shared<Opts>();
        auto* sc = app.add_subcommand("fixed-params", "Average optimised schedules into size-independent parameters");
        sc->add_option("--p", p, "Maximum depth");
        sc->add_option("--sources", o->sources, "Source sizes N_j, e.g. 8:12")->capture_default_str();
        sc->add_option("--objective", o->objective, "mf or p_opt")->capture_default_str();
        sc->add_option("--method", o->method, "trust_region or simplex")->capture_default_str();
        sc->add_option("--restarts", o->restarts, "Random restarts of the p = 1 grid")->capture_default_str();
        sc->add_option("--schedules", o->schedule_files,
                       "Average these schedule files (with provenance n) instead of optimising");
        handlers["fixed-params"] = [&, o] {
            auto& sources = o->sources;
            auto& objective = o->objective;
            auto& method = o->method;
            auto& restarts = o->restarts;
            auto& schedule_files = o->schedule_files;
            std::map<int, std::vector<std::pair<int, Schedule>>> by_depth;
            Json j;
            if (!schedule_files.empty()) {
                for (const auto& f : schedule_files) {
                    const Schedule s = schedule_from_json(read_json_file(f));
                    if (s.provenance.n < 1) {
                        throw std::invalid_argument(f + ": schedule has no source size in its provenance");
                    }
                    by_depth[s.depth()].emplace_back(s.provenance.n, s);
                }
            } else {
                if (p < 1) {
                    throw std::invalid_argument("--p is required when optimising sources");
                }
                const ObjectiveKind kind = objective_kind_from_string(objective);
                ScheduleSearchOptions so;
                so.method = local_method_from_string(method);
                so.restarts = restarts;
                for (int nj : parse_int_list(sources)) {
                    so.seed = derive_seed(ctx.seed, {static_cast<std::uint64_t>(nj)});
                    const EnergyTable t = build_energy_table(nj, ctx.workers);
                    QaoaEvaluator ev(t, KernelOptions{ctx.workers});
                    const auto fits = fourier_chain(ev, kind, p, so);
                    for (const auto& f : fits) {
                        by_depth[f.schedule.depth()].emplace_back(nj, f.schedule);
                    }
                }
                j["objective"] = to_string(kind);
            }
            Json all = Json::array();
            for (const auto& [d, list] : by_depth) {
                const FixedParams fp = make_fixed_params(list);
                all.push_back(to_json(fp));
                ctx.write_file("fixed_p" + std::to_string(d) + ".json", to_json(fp).dump(2) + "\n");
            }
            j["fixed_params"] = std::move(all);
            ctx.emit("fixed_params", j);
        };
    }

    // qmf
    {
        struct Opts {
            QmfRun run;
            double m_param = 0.0;
        };
        auto o = std::make_shared<Opts>();
        auto* sc = app.add_subcommand("qmf", "Monte-Carlo minimum finding on a QAOA (or uniform, p = 0) distribution");
        add_n(sc, true);
        sc->add_option("--p", p, "QAOA depth; 0 uses the uniform distribution")->capture_default_str();
        add_schedule(sc);
        sc->add_option("--delta", o->run.delta, "Failure probability")->capture_default_str();
        sc->add_option("--M", o->m_param, "Budget parameter M (0: ceil(1/sqrt(p_opt)))")->capture_default_str();
        sc->add_option("--C", o->run.c, "Search-cost constant C")->capture_default_str();
        sc->add_option("--trials", o->run.trials, "Monte-Carlo trials")->capture_default_str();
        sc->add_flag("--failure-injection", o->run.failure_injection, "Searches fail with probability 1/(6 2^N)");
        sc->add_flag("--strict-budget", o->run.strict_budget, "Never start a search that would overrun 3CMN");
        handlers["qmf"] = [&, o] {
            auto& run = o->run;
            auto& m_param = o->m_param;
            const EnergyTable t = build_energy_table(n, ctx.workers);
            std::vector<LevelProbability> dist;
            double popt = 0.0;
            if (p == 0 && params.empty() && betas_text.empty()) {
                dist = uniform_levels(t);
                popt = t.random_guess_probability();
            } else {
                const Schedule s = schedule_from_args(params, betas_text, gammas_text, n, p);
                const Statevector st = prepare_qaoa_state(t, s, KernelOptions{ctx.workers});
                dist = energy_level_distribution(st, t, KernelOptions{ctx.workers});
                popt = optimal_probability(st, t);
                p = s.depth();
            }
            QmfRun r = run;
            r.seed = ctx.seed;
            r.m = m_param > 0.0 ? m_param : std::ceil(1.0 / std::sqrt(popt));
            const QmfOutcome outcome = simulate_qmf(dist, n, t.min_energy, r);
            Json j = to_json(outcome, p, r);
            j["p_opt"] = popt;
            j["expected_queries_to_optimum"] = expected_queries_to_optimum(dist, n, r.c);
            ctx.emit("qmf", j);
        };
    }

    // aa
    {
        struct Opts {
            double p0 = 0.0;
            int steps = 10;
        };
        auto o = std::make_shared<Opts>();
        auto* sc = app.add_subcommand("aa", "Amplitude-amplification success and gain curve");
        add_n(sc, false);
        sc->add_option("--p0", o->p0, "Initial success probability (default |optimal|/2^N)");
        sc->add_option("--steps", o->steps, "Number of steps")->capture_default_str();
        handlers["aa"] = [&, o] {
            auto& p0 = o->p0;
            auto& steps = o->steps;
            double q = p0;
            if (q <= 0.0) {
                require_n(n);
                q = build_energy_table(n, ctx.workers).random_guess_probability();
            }
            const auto gains = aa_gain_curve(q, steps);
            Json rows = Json::array();
            std::string csv = "step,success,gain\n";
            for (int s = 0; s <= steps; ++s) {
                const double succ = aa_success_probability(q, s);
                const double g = s == 0 ? 1.0 : gains[static_cast<std::size_t>(s - 1)];
                rows.push_back({{"step", s}, {"success", succ}, {"gain", g}});
                csv += std::to_string(s) + "," + format_double(succ) + "," + format_double(g) + "\n";
            }
            ctx.emit("aa", Json{{"p0", q}, {"steps", rows}}, csv);
        };
    }

    // solve
    {
        struct Opts {
            std::string solver = "memetic_tabu";
            SolverConfig cfg;
            std::optional<std::int64_t> target;
            bool to_optimum = false;
        };
        auto o = std::make_shared<Opts>();
        auto* sc = app.add_subcommand("solve", "Run one classical solver");
        add_n(sc, true);
        sc->add_option("--solver", o->solver, "exhaustive, tabu or memetic_tabu")->capture_default_str();
        sc->add_option("--budget", o->cfg.budget, "Evaluation cap")->capture_default_str();
        sc->add_option("--target", o->target, "Stop at this energy");
        sc->add_flag("--to-optimum", o->to_optimum, "Stop at the exhaustively known optimum");
        sc->add_flag("--skew", o->cfg.skew_symmetric_only, "Search skew-symmetric sequences only (odd N)");
        sc->add_option("--population", o->cfg.population, "Memetic population")->capture_default_str();
        sc->add_flag("--allow-long", o->cfg.allow_long, "Permit exhaustive N > 28");
        sc->add_flag("--audit", o->cfg.audit, "Recompute every charged energy from scratch");
        handlers["solve"] = [&, o] {
            auto& solver = o->solver;
            auto& cfg = o->cfg;
            auto& target = o->target;
            auto& to_optimum = o->to_optimum;
            SolverConfig c = cfg;
            c.kind = solver_kind_from_string(solver);
            c.seed = ctx.seed;
            c.target_energy = target;
            if (to_optimum) {
                c.target_energy = optimal_energy(n);
            }
            if (c.kind == SolverKind::exhaustive) {
                c.fundamental_domain = n >= 4;
            }
            Json j = to_json(solve(n, c));
            j["config"] = to_json(c);
            ctx.emit("solve", j);
        };
    }

    // tts-sweep
    {
        struct Opts {
            std::string solver = "memetic_tabu";
            std::string sizes = "";
            std::string depths = "0";
            int seeds = 1;
            std::vector<std::string> fixed_files;
            SolverConfig cfg;
        };
        auto o = std::make_shared<Opts>();
        auto* sc = app.add_subcommand("tts-sweep", "Resumable time-to-solution sweep over N, p and seeds");
        sc->add_option("--solver", o->solver, "qaoa, exhaustive, tabu or memetic_tabu")->capture_default_str();
        sc->add_option("--sizes", o->sizes, "Sizes, e.g. 10:20")->required();
        sc->add_option("--p", o->depths, "Depths for qaoa, e.g. 1,12")->capture_default_str();
        sc->add_option("--seeds", o->seeds, "Seeds per cell")->capture_default_str();
        sc->add_option("--fixed", o->fixed_files, "Fixed-parameter files for qaoa, one per depth");
        sc->add_option("--budget", o->cfg.budget, "Evaluation cap per run")->capture_default_str();
        sc->add_flag("--skew", o->cfg.skew_symmetric_only, "Skew-symmetric search");
        handlers["tts-sweep"] = [&, o] {
            auto& solver = o->solver;
            auto& sizes = o->sizes;
            auto& depths = o->depths;
            auto& seeds = o->seeds;
            auto& fixed_files = o->fixed_files;
            auto& cfg = o->cfg;
            SweepSpec spec;
            spec.solver = solver;
            spec.sizes = parse_int_list(sizes);
            spec.depths = parse_int_list(depths);
            spec.seeds = seeds;
            spec.seed = ctx.seed;
            spec.solver_config = cfg;
            for (const auto& f : fixed_files) {
                const FixedParams fp = fixed_params_from_json(read_json_file(f));
                spec.fixed_by_depth[fp.depth()] = fp;
            }
            const SweepResult r = run_sweep(spec, ctx.workers, ctx.out_dir);
            if (!ctx.out_dir.empty()) {
                ctx.outputs.insert(ctx.outputs.end(), {"sweep_journal.jsonl", "tts.csv", "tts_canonical.csv"});
            }
            Json j;
            j["cells"] = r.rows.size();
            j["resumed"] = r.resumed;
            Json fails = Json::array();
            for (const auto& f : r.failures) {
                fails.push_back({{"N", f.n}, {"p", f.p}, {"seed_index", f.seed_index}, {"error", f.message}});
            }
            j["failed"] = std::move(fails);
            if (ctx.csv()) {
                out << sweep_csv(r.rows, false);
            } else {
                out << j.dump(2) << '\n';
            }
            if (!r.failures.empty()) {
                throw std::runtime_error(std::to_string(r.failures.size()) + " sweep cells failed");
            }
        };
    }

    // fit
    {
        struct Opts {
            std::string input;
            std::string column = "tts";
            std::string nmin_sweep;
            int nmin = 10;
            std::optional<int> depth;
        };
        auto o = std::make_shared<Opts>();
        auto* sc = app.add_subcommand("fit", "Exponential fit of mean time to solution against N");
        sc->add_option("--input", o->input, "Sweep CSV")->required();
        sc->add_option("--nmin", o->nmin, "Smallest N included")->capture_default_str();
        sc->add_option("--column", o->column, "tts or qmf_tts")->capture_default_str();
        sc->add_option("--p", o->depth, "Depth to select when the CSV has several");
        sc->add_option("--nmin-sweep", o->nmin_sweep, "Also report fit quality for these cutoffs, e.g. 8:14");
        handlers["fit"] = [&, o] {
            auto& input = o->input;
            auto& column = o->column;
            auto& nmin_sweep = o->nmin_sweep;
            auto& nmin = o->nmin;
            auto& depth = o->depth;
            std::ifstream in(input);
            if (!in) {
                throw std::invalid_argument("cannot open " + input);
            }
            std::stringstream buf;
            buf << in.rdbuf();
            const auto pts = sweep_fit_points(parse_sweep_csv(buf.str()), column, depth);
            Json j = to_json(fit_exponential(pts, nmin));
            j["column"] = column;
            if (nmin < 28) {
                j["note"] = "small-N fit; not comparable with fits restricted to N >= 28";
            }
            if (!nmin_sweep.empty()) {
                const auto cutoffs = parse_int_list(nmin_sweep);
                Json q = Json::array();
                for (const auto& row : fit_quality_sweep(pts, cutoffs)) {
                    q.push_back({{"N_min", row.n_min}, {"n", row.n_points}, {"r2", row.r_squared}, {"base", row.base}});
                }
                j["quality"] = std::move(q);
            }
            ctx.emit("fit", j);
        };
    }

    // correlate
    {
        struct Opts {
            std::string sizes;
        };
        auto o = std::make_shared<Opts>();
        auto* sc = app.add_subcommand("correlate", "Correlation of energy with Hamming distance to the optima");
        add_n(sc, false);
        sc->add_option("--sizes", o->sizes, "Several sizes, e.g. 10:16");
        handlers["correlate"] = [&, o] {
            auto& sizes = o->sizes;
            std::vector<int> list;
            if (!sizes.empty()) {
                list = parse_int_list(sizes);
            } else {
                require_n(n);
                list = {n};
            }
            Json rows = Json::array();
            std::string csv = "N,correlation\n";
            for (int k : list) {
                if (k > 24) {
                    throw ResourceError("correlation is computed exhaustively; N <= 24 only");
                }
                const auto c = hamming_objective_correlation(build_energy_table(k, ctx.workers));
                rows.push_back({{"N", k}, {"correlation", c ? Json(*c) : Json(nullptr)}, {"defined", c.has_value()}});
                csv += std::to_string(k) + "," + (c ? format_double(*c) : std::string("undefined")) + "\n";
            }
            ctx.emit("correlate", rows, csv);
        };
    }

    // compile
    {
        struct Opts {
            double gamma = 0.1;
            std::string ordering = "greedy";
        };
        auto o = std::make_shared<Opts>();
        auto* sc = app.add_subcommand("compile", "Compile one phase layer to CNOT/RZZ gates");
        add_n(sc, true);
        sc->add_option("--gamma", o->gamma, "Phase angle")->capture_default_str();
        sc->add_option("--ordering", o->ordering, "greedy or random")->capture_default_str()
            ->check(CLI::IsMember({"greedy", "random"}));
        handlers["compile"] = [&, o] {
            auto& gamma = o->gamma;
            auto& ordering = o->ordering;
            const Circuit c = compile_phase(enumerate_terms(n), gamma, ctx.seed,
                                            ordering == "greedy" ? TermOrdering::greedy : TermOrdering::random);
            ctx.emit("circuit", to_json(c));
        };
    }

    // gate-count
    {
        struct Opts {
            std::string sizes;
            int seeds = 20;
        };
        auto o = std::make_shared<Opts>();
        auto* sc = app.add_subcommand("gate-count", "Two-qubit gate counts, greedy against random ordering");
        sc->add_option("--sizes", o->sizes, "Sizes, e.g. 8:18")->required();
        sc->add_option("--seeds", o->seeds, "Seeds per size")->capture_default_str();
        handlers["gate-count"] = [&, o] {
            auto& sizes = o->sizes;
            auto& seeds = o->seeds;
            Json rows = Json::array();
            std::string csv = "N,seed,ordering,two_qubit_count\n";
            for (int k : parse_int_list(sizes)) {
                const CountReport r = count_report(enumerate_terms(k), seeds, ctx.seed);
                for (int s = 0; s < seeds; ++s) {
                    csv += std::to_string(k) + "," + std::to_string(s) + ",greedy," +
                           std::to_string(r.greedy_counts[static_cast<std::size_t>(s)]) + "\n";
                    csv += std::to_string(k) + "," + std::to_string(s) + ",random," +
                           std::to_string(r.random_counts[static_cast<std::size_t>(s)]) + "\n";
                }
                rows.push_back({{"N", k},
                                {"seeds", seeds},
                                {"greedy_mean", r.greedy_mean},
                                {"greedy_min", r.greedy_min},
                                {"greedy_max", r.greedy_max},
                                {"random_mean", r.random_mean},
                                {"random_std", r.random_std},
                                {"reduction_ratio", r.reduction_ratio}});
            }
            ctx.emit("gate_count", rows, csv);
        };
    }

    // checks
    {
        struct Opts {
            int m = 3;
            int trials = 0;
            double gamma = 0.1;
        };
        auto o = std::make_shared<Opts>();
        auto* sc = app.add_subcommand("checks", "Insert parity checks and verify single-error detection");
        add_n(sc, true);
        sc->add_option("--m", o->m, "Number of checked parts")->capture_default_str();
        sc->add_option("--gamma", o->gamma, "Phase angle")->capture_default_str();
        sc->add_option("--trials", o->trials, "Random injections (0: exhaustive)")->capture_default_str();
        handlers["checks"] = [&, o] {
            auto& m = o->m;
            auto& trials = o->trials;
            auto& gamma = o->gamma;
            const Circuit base = compile_phase(enumerate_terms(n), gamma, ctx.seed);
            const CheckedCircuit cc = insert_checks(base, m);
            const DetectionReport rep =
                trials > 0 ? detection_theorem_check(cc, trials, ctx.seed) : detection_theorem_check(cc, ctx.seed);
            const Circuit flat = cc.flatten();
            Json j;
            j["N"] = n;
            j["m"] = m;
            j["base_two_qubit_count"] = two_qubit_count(base.gates, n);
            j["checked_two_qubit_count"] = two_qubit_count(flat.gates, n);
            j["injections"] = rep.injections;
            j["detected"] = rep.detected;
            j["detection_rate"] = rep.rate();
            ctx.write_file("checked_circuit.json", to_json(flat).dump(2) + "\n");
            ctx.emit("checks", j);
        };
    }

    // noisy-sim
    {
        struct Opts {
            int m = 3;
            long long shots = 5000;
            NoiseModel noise;
            bool keep_shots = false;
        };
        auto o = std::make_shared<Opts>();
        auto* sc = app.add_subcommand("noisy-sim", "Noisy p = 1 simulation with parity-check post-selection");
        add_n(sc, true);
        add_schedule(sc);
        sc->add_option("--m", o->m, "Number of checked parts")->capture_default_str();
        sc->add_option("--shots", o->shots, "Shots")->capture_default_str();
        sc->add_option("--p2", o->noise.p2, "Two-qubit gate error probability")->capture_default_str();
        sc->add_option("--wx", o->noise.wx, "Relative weight of X errors")->capture_default_str();
        sc->add_option("--wy", o->noise.wy, "Relative weight of Y errors")->capture_default_str();
        sc->add_option("--wz", o->noise.wz, "Relative weight of Z errors")->capture_default_str();
        sc->add_flag("--noisy-checks", o->noise.noisy_checks, "Also apply noise to check gates");
        sc->add_flag("--shots-csv", o->keep_shots, "Write per-shot records");
        handlers["noisy-sim"] = [&, o] {
            auto& m = o->m;
            auto& shots = o->shots;
            auto& noise = o->noise;
            auto& keep_shots = o->keep_shots;
            const Schedule s = schedule_from_args(params, betas_text, gammas_text, n, 1);
            const Circuit base = compile_phase(enumerate_terms(n), s.gammas[0], ctx.seed);
            const CheckedCircuit cc = insert_checks(base, m);
            NoiseModel nm = noise;
            nm.seed = ctx.seed;
            const EnergyTable t = build_energy_table(n, ctx.workers);
            NoisySimOptions so;
            so.beta = s.betas[0];
            so.keep_shots = keep_shots;
            const PostSelectionStats st = simulate_noisy(cc, nm, shots, t, so);
            if (keep_shots) {
                ctx.write_file("shots.csv", shots_csv(st));
            }
            ctx.emit("noisy_sim", to_json(st));
        };
    }

    // time-model
    {
        struct Opts {
            double t0 = 1.0;
            std::string plist;
        };
        auto o = std::make_shared<Opts>();
        auto* sc = app.add_subcommand("time-model", "Average time with and without early stopping");
        sc->add_option("--t0", o->t0, "Time of one full run")->capture_default_str();
        sc->add_option("--p-list", o->plist, "Per-part no-error probabilities, comma-separated")->required();
        handlers["time-model"] = [&, o] {
            auto& t0 = o->t0;
            auto& plist = o->plist;
            const auto ps = parse_double_list(plist);
            const TimeModel tm = avg_time_models(t0, ps);
            Json j;
            j["t0"] = t0;
            j["p_list"] = ps;
            j["infinite"] = tm.infinite;
            j["t1"] = tm.infinite ? Json(nullptr) : Json(tm.t1);
            j["t2"] = tm.infinite ? Json(nullptr) : Json(tm.t2);
            ctx.emit("time_model", j);
        };
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    int code = kExitOk;
    std::string error;
    try {
        handlers.at(name)();
    } catch (const ResourceError& e) {
        error = e.what();
        code = kExitResource;
    } catch (const std::invalid_argument& e) {
        error = e.what();
        code = kExitUsage;
    } catch (const std::domain_error& e) {
        error = e.what();
        code = kExitUsage;
    } catch (const std::exception& e) {
        error = e.what();
        code = kExitFailure;
    }
    if (!error.empty()) {
        err << "labs " << name << ": " << error << '\n';
    }

    if (!ctx.out_dir.empty()) {
        Json m;
        m["tool"] = "labs";
        m["version"] = kVersion;
        m["command"] = name;
        std::vector<std::string> args(argv, argv + argc);
        m["argv"] = args;
        m["global"] = {{"seed", ctx.seed}, {"workers", ctx.workers}, {"out", ctx.out_dir}, {"format", ctx.format}};
        m["options"] = manifest_options(sub);
        m["mem_budget_bytes"] = memory_budget_bytes();
        m["outputs"] = ctx.outputs;
        m["exit_code"] = code;
        if (!error.empty()) {
            m["error"] = error;
        }
        try {
            std::filesystem::create_directories(ctx.out_dir);
            write_text_file((std::filesystem::path(ctx.out_dir) / "manifest.json").string(), m.dump(2) + "\n");
        } catch (const std::exception& e) {
            err << "labs: " << e.what() << '\n';
            if (code == kExitOk) {
                code = kExitFailure;
            }
        }
    }
    return code;
}

}  // namespace labs_qaoa
