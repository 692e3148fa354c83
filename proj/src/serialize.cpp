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

#include "labs/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace labs_qaoa {

std::string format_double(double x) {
    if (!std::isfinite(x)) {
        return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, res.ptr};
}

namespace {

template <class T>
T required(const Json& j, const char* key) {
    if (!j.contains(key)) {
        throw std::invalid_argument(std::string("missing field '") + key + "'");
    }
    return j.at(key).get<T>();
}

}  // namespace

Json to_json(const Schedule& schedule) {
    Json j;
    j["p"] = schedule.depth();
    j["betas"] = schedule.betas;
    j["gammas"] = schedule.gammas;
    j["provenance"] = {{"kind", to_string(schedule.provenance.kind)}, {"n", schedule.provenance.n}};
    return j;
}

Schedule schedule_from_json(const Json& j) {
    Schedule s;
    s.betas = required<std::vector<double>>(j, "betas");
    s.gammas = required<std::vector<double>>(j, "gammas");
    if (j.contains("provenance")) {
        const Json& pv = j.at("provenance");
        if (pv.is_string()) {
            s.provenance.kind = provenance_kind_from_string(pv.get<std::string>());
        } else {
            s.provenance.kind = provenance_kind_from_string(pv.value("kind", std::string("unspecified")));
            s.provenance.n = pv.value("n", 0);
        }
    }
    s.validate();
    if (j.contains("p") && j.at("p").get<int>() != s.depth()) {
        throw std::invalid_argument("schedule 'p' does not match the number of angles");
    }
    return s;
}

Json to_json(const FixedParams& fixed) {
    Json j;
    j["p"] = fixed.depth();
    j["beta_fixed"] = fixed.beta_fixed;
    j["gamma_fixed_scaled"] = fixed.gamma_fixed_scaled;
    j["source_sizes"] = fixed.source_sizes;
    return j;
}

FixedParams fixed_params_from_json(const Json& j) {
    FixedParams f;
    f.beta_fixed = required<std::vector<double>>(j, "beta_fixed");
    f.gamma_fixed_scaled = required<std::vector<double>>(j, "gamma_fixed_scaled");
    f.source_sizes = j.value("source_sizes", std::vector<int>{});
    if (f.beta_fixed.size() != f.gamma_fixed_scaled.size() || f.beta_fixed.empty()) {
        throw std::invalid_argument("fixed parameters need equally many, nonzero beta and gamma values");
    }
    if (j.contains("p") && j.at("p").get<int>() != f.depth()) {
        throw std::invalid_argument("fixed-parameter 'p' does not match the number of angles");
    }
    return f;
}

Schedule schedule_for_size(const Json& j, int n) {
    if (j.contains("beta_fixed")) {
        return instantiate_fixed(fixed_params_from_json(j), n);
    }
    return schedule_from_json(j);
}

Json to_json(const QaoaResult& result) {
    Json j;
    j["N"] = result.n;
    j["p"] = result.p;
    j["beta"] = result.betas;
    j["gamma"] = result.gammas;
    j["expected_merit_factor"] = result.expected_merit_factor;
    j["p_opt"] = result.p_opt;
    j["tts"] = result.tts;
    Json levels = Json::array();
    for (const auto& l : result.levels) {
        levels.push_back({{"energy", l.energy}, {"probability", l.probability}});
    }
    j["levels"] = std::move(levels);
    return j;
}

Json energy_table_summary(const EnergyTable& table) {
    Json j;
    j["N"] = table.n;
    j["min_energy"] = table.min_energy;
    j["max_energy"] = table.max_energy;
    j["optimal_merit_factor"] = merit_factor(table.n, table.min_energy);
    j["optimal_count"] = table.optimal_indices.size();
    Json hex = Json::array();
    for (auto idx : table.optimal_indices) {
        hex.push_back(index_to_hex(table.n, idx));
    }
    j["optimal_bitstrings"] = std::move(hex);
    return j;
}

Json to_json(const QmfOutcome& outcome, int p, const QmfRun& run) {
    Json j;
    j["N"] = outcome.n;
    j["p"] = p;
    j["delta"] = run.delta;
    j["M"] = run.m;
    j["C"] = run.c;
    j["trials"] = run.trials;
    j["repetitions"] = outcome.repetitions;
    j["success_rate"] = outcome.success_rate;
    j["mean_queries"] = outcome.mean_queries;
    j["mean_queries_to_optimum"] = outcome.mean_queries_to_optimum;
    j["max_queries"] = outcome.max_queries;
    j["budget"] = outcome.budget;
    j["failure_injection"] = run.failure_injection;
    j["strict_budget"] = run.strict_budget;
    j["seed"] = run.seed;
    return j;
}

Json to_json(const ScalingFit& fit) {
    Json j;
    j["base"] = fit.base;
    j["ci"] = {fit.ci_low, fit.ci_high};
    j["r2"] = fit.r_squared;
    j["n"] = fit.n_points;
    j["N_min"] = fit.n_min;
    j["log_intercept"] = fit.log_intercept;
    j["slope"] = fit.slope;
    j["slope_se"] = fit.slope_se;
    return j;
}

Json to_json(const Circuit& circuit) {
    Json j;
    j["n_data"] = circuit.n_data;
    j["n_ancilla"] = circuit.n_ancilla;
    Json gates = Json::array();
    for (const auto& g : circuit.gates) {
        Json gj;
        gj["kind"] = to_string(g.kind);
        std::vector<int> qs{g.qubits[0]};
        if (g.arity() == 2) {
            qs.push_back(g.qubits[1]);
        }
        gj["qubits"] = qs;
        if (g.kind == GateKind::rzz || g.kind == GateKind::rz || g.kind == GateKind::rx) {
            gj["angle"] = g.angle;
        }
        gates.push_back(std::move(gj));
    }
    j["gates"] = std::move(gates);
    const auto& m = circuit.metadata;
    j["metadata"] = {{"N", m.n},
                     {"p", m.p},
                     {"gamma_convention", m.gamma_convention},
                     {"ordering", m.ordering},
                     {"seed", m.seed},
                     {"two_qubit_count", m.two_qubit_count}};
    return j;
}

Circuit circuit_from_json(const Json& j) {
    Circuit c;
    c.n_data = required<int>(j, "n_data");
    c.n_ancilla = j.value("n_ancilla", 0);
    for (const auto& gj : required<Json>(j, "gates")) {
        Gate g;
        g.kind = gate_kind_from_string(required<std::string>(gj, "kind"));
        const auto qs = required<std::vector<int>>(gj, "qubits");
        if (qs.empty() || qs.size() > 2 || static_cast<int>(qs.size()) != g.arity()) {
            throw std::invalid_argument("gate " + to_string(g.kind) + " has the wrong number of qubits");
        }
        g.qubits[0] = qs[0];
        if (qs.size() == 2) {
            g.qubits[1] = qs[1];
        }
        g.angle = gj.value("angle", 0.0);
        c.gates.push_back(g);
    }
    if (j.contains("metadata")) {
        const Json& m = j.at("metadata");
        c.metadata.n = m.value("N", c.n_data);
        c.metadata.p = m.value("p", 0);
        c.metadata.gamma_convention = m.value("gamma_convention", c.metadata.gamma_convention);
        c.metadata.ordering = m.value("ordering", std::string{});
        c.metadata.seed = m.value("seed", std::uint64_t{0});
        c.metadata.two_qubit_count = m.value("two_qubit_count", 0LL);
    }
    c.validate();
    return c;
}

Json to_json(const PostSelectionStats& stats) {
    Json j;
    j["N"] = stats.n;
    j["p"] = stats.p;
    j["m"] = stats.m;
    j["p2"] = stats.p2;
    j["shots"] = stats.shots_total;
    j["shots_kept"] = stats.shots_kept;
    j["ratio"] = stats.ratio;
    j["mf_all"] = stats.mf_all;
    j["mf_kept"] = stats.mf_kept;
    j["detections_per_check"] = stats.detections_per_check;
    return j;
}

std::string shots_csv(const PostSelectionStats& stats) {
    std::ostringstream out;
    out << "bitstring,kept,syndrome\n";
    for (const auto& s : stats.shots) {
        out << index_to_hex(stats.n, s.bitstring) << ',' << (s.kept ? 1 : 0) << ',';
        for (int b : s.syndrome) {
            out << b;
        }
        out << '\n';
    }
    return out.str();
}

Json to_json(const SolveResult& result) {
    Json j;
    j["N"] = result.best_sequence.size();
    j["best_sequence"] = result.best_sequence.to_string();
    j["best_hex"] = index_to_hex(result.best_sequence.size(), result.best_sequence.to_index());
    j["best_energy"] = result.best_energy;
    j["merit_factor"] = merit_factor(result.best_sequence.size(), result.best_energy);
    j["evaluations_to_best"] = result.evaluations_to_best;
    j["evaluations_total"] = result.evaluations_total;
    j["hit_target"] = result.hit_target;
    j["wall_ms"] = result.wall_ms;
    if (!result.optima.empty()) {
        Json hex = Json::array();
        for (auto idx : result.optima) {
            hex.push_back(index_to_hex(result.best_sequence.size(), idx));
        }
        j["optima"] = std::move(hex);
    }
    return j;
}

Json to_json(const SolverConfig& c) {
    Json j;
    j["solver"] = to_string(c.kind);
    j["seed"] = c.seed;
    j["target_energy"] = c.target_energy ? Json(*c.target_energy) : Json(nullptr);
    j["budget"] = c.budget;
    j["tenure_min"] = c.tenure_min;
    j["tenure_max"] = c.tenure_max;
    j["max_iters_per_restart"] = c.max_iters_per_restart;
    j["population"] = c.population;
    j["tournament"] = c.tournament;
    j["crossover_rate"] = c.crossover_rate;
    j["mutation_rate"] = c.mutation_rate;
    j["offspring_tabu_iters"] = c.offspring_tabu_iters;
    j["skew_symmetric_only"] = c.skew_symmetric_only;
    j["fundamental_domain"] = c.fundamental_domain;
    j["collect_optima"] = c.collect_optima;
    j["allow_long"] = c.allow_long;
    return j;
}

std::string tts_csv(const TtsTable& table) {
    std::ostringstream out;
    out << "N,seed,evaluations_to_best,hit_target,wall_ms\n";
    for (const auto& r : table.rows) {
        out << r.n << ',' << r.seed << ',' << r.evaluations_to_best << ',' << (r.hit_target ? 1 : 0) << ','
            << format_double(r.wall_ms) << '\n';
    }
    return out.str();
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open " + path);
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write failed for " + path);
    }
}

}  // namespace labs_qaoa
