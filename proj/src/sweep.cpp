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

#include "labs/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "labs/minfind.hpp"
#include "labs/parallel.hpp"
#include "labs/qaoa.hpp"

namespace labs_qaoa {

namespace {

constexpr const char* kJournal = "sweep_journal.jsonl";

using CellKey = std::tuple<int, int, int>;

CellKey key_of(const SweepRow& r) { return {r.n, r.p, r.seed_index}; }

Json row_to_json(const SweepRow& r) {
    Json j;
    j["solver"] = r.solver;
    j["N"] = r.n;
    j["p"] = r.p;
    j["seed_index"] = r.seed_index;
    j["seed"] = r.seed;
    j["tts"] = r.tts;
    j["qmf_tts"] = r.qmf_tts ? Json(*r.qmf_tts) : Json(nullptr);
    j["hit_target"] = r.hit_target;
    j["wall_ms"] = r.wall_ms;
    return j;
}

SweepRow row_from_json(const Json& j) {
    SweepRow r;
    r.solver = j.at("solver").get<std::string>();
    r.n = j.at("N").get<int>();
    r.p = j.at("p").get<int>();
    r.seed_index = j.at("seed_index").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.tts = j.at("tts").get<double>();
    if (!j.at("qmf_tts").is_null()) {
        r.qmf_tts = j.at("qmf_tts").get<double>();
    }
    r.hit_target = j.at("hit_target").get<bool>();
    r.wall_ms = j.at("wall_ms").get<double>();
    return r;
}

SweepRow run_cell(const SweepSpec& spec, int n, int p, int seed_index) {
    SweepRow row;
    row.solver = spec.solver;
    row.n = n;
    row.p = p;
    row.seed_index = seed_index;
    row.seed = derive_seed(spec.seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(p),
                                       static_cast<std::uint64_t>(seed_index)});
    const auto t0 = std::chrono::steady_clock::now();
    if (spec.solver == "qaoa") {
        const EnergyTable table = build_energy_table(n, 1);
        const Schedule s = instantiate_fixed(spec.fixed_by_depth.at(p), n);
        const Statevector state = prepare_qaoa_state(table, s);
        const double popt = optimal_probability(state, table);
        row.hit_target = popt > 0.0;
        row.tts = 1.0 / popt;
        row.qmf_tts = qmf_tts(popt);
    } else {
        SolverConfig cfg = spec.solver_config;
        cfg.kind = solver_kind_from_string(spec.solver);
        cfg.seed = row.seed;
        cfg.target_energy = optimal_energy(n);
        const SolveResult r = solve(n, cfg);
        row.tts = static_cast<double>(r.evaluations_to_best);
        row.hit_target = r.hit_target;
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

}  // namespace

void SweepSpec::validate() const {
    if (sizes.empty() || depths.empty()) {
        throw std::invalid_argument("sweep needs at least one N and one depth");
    }
    if (seeds < 1) {
        throw std::invalid_argument("sweep needs at least one seed");
    }
    for (int n : sizes) {
        if (n < 2 || n > kMaxSequenceLength) {
            throw std::invalid_argument("sweep N out of range: " + std::to_string(n));
        }
    }
    if (solver == "qaoa") {
        for (int p : depths) {
            if (!fixed_by_depth.contains(p)) {
                throw std::invalid_argument("no fixed parameters for depth " + std::to_string(p));
            }
            if (fixed_by_depth.at(p).depth() != p) {
                throw std::invalid_argument("fixed parameters for depth " + std::to_string(p) + " have depth " +
                                            std::to_string(fixed_by_depth.at(p).depth()));
            }
        }
    } else {
        (void)solver_kind_from_string(solver);
        if (depths != std::vector<int>{0}) {
            throw std::invalid_argument("classical sweeps use depth 0 only");
        }
    }
}

Json to_json(const SweepSpec& spec) {
    Json j;
    j["solver"] = spec.solver;
    j["sizes"] = spec.sizes;
    j["depths"] = spec.depths;
    j["seeds"] = spec.seeds;
    j["seed"] = spec.seed;
    if (spec.solver == "qaoa") {
        Json fixed = Json::object();
        for (const auto& [p, f] : spec.fixed_by_depth) {
            fixed[std::to_string(p)] = to_json(f);
        }
        j["fixed_params"] = std::move(fixed);
    } else {
        Json cfg = to_json(spec.solver_config);
        cfg.erase("solver");
        cfg.erase("seed");
        cfg.erase("target_energy");
        j["solver_config"] = std::move(cfg);
    }
    return j;
}

SweepResult run_sweep(const SweepSpec& spec, int workers, const std::string& out_dir, long long max_new_cells) {
    spec.validate();
    const Json spec_json = to_json(spec);
    namespace fs = std::filesystem;

    std::map<CellKey, SweepRow> done;
    std::ofstream journal;
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        const fs::path jpath = fs::path(out_dir) / kJournal;
        bool fresh = true;
        if (fs::exists(jpath)) {
            std::ifstream in(jpath);
            std::string line;
            if (std::getline(in, line)) {
                Json head;
                try {
                    head = Json::parse(line);
                } catch (const nlohmann::json::parse_error&) {
                    head = nullptr;
                }
                if (!head.is_object() || !head.contains("spec") || head.at("spec") != spec_json) {
                    throw std::invalid_argument("existing journal in " + out_dir +
                                                " belongs to a different sweep configuration");
                }
                fresh = false;
                while (std::getline(in, line)) {
                    try {
                        const SweepRow r = row_from_json(Json::parse(line));
                        done[key_of(r)] = r;
                    } catch (const std::exception&) {
                        // A torn final line from an interrupted write; the cell is simply rerun.
                        break;
                    }
                }
            }
        }
        if (fresh) {
            journal.open(jpath, std::ios::trunc);
            journal << Json{{"spec", spec_json}}.dump() << '\n';
        } else {
            // Rewrite without any torn tail so later appends start on a clean line.
            journal.open(jpath, std::ios::trunc);
            journal << Json{{"spec", spec_json}}.dump() << '\n';
            for (const auto& [k, r] : done) {
                journal << row_to_json(r).dump() << '\n';
            }
        }
        journal.flush();
    }

    SweepResult result;
    std::vector<CellKey> pending;
    for (int n : spec.sizes) {
        for (int p : spec.depths) {
            for (int s = 0; s < spec.seeds; ++s) {
                const CellKey k{n, p, s};
                if (done.contains(k)) {
                    ++result.resumed;
                } else {
                    pending.push_back(k);
                }
            }
        }
    }
    if (max_new_cells >= 0 && static_cast<long long>(pending.size()) > max_new_cells) {
        pending.resize(static_cast<std::size_t>(max_new_cells));
    }
    // Warm the ground-truth cache up front so workers do not race to fill it.
    if (spec.solver != "qaoa") {
        std::set<int> sizes;
        for (const auto& [n, p, s] : pending) {
            sizes.insert(n);
        }
        for (int n : sizes) {
            try {
                (void)optimal_energy(n);
            } catch (const std::exception&) {
                // Reported per cell below, where the same call throws again.
            }
        }
    }

    std::mutex mu;
    parallel_chunks(pending.size(), workers, [&](std::size_t i) {
        const auto [n, p, s] = pending[i];
        try {
            const SweepRow row = run_cell(spec, n, p, s);
            std::lock_guard<std::mutex> lock(mu);
            done[key_of(row)] = row;
            if (journal.is_open()) {
                journal << row_to_json(row).dump() << '\n';
                journal.flush();
            }
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(mu);
            result.failures.push_back({n, p, s, e.what()});
        }
    });
    std::sort(result.failures.begin(), result.failures.end(), [](const SweepFailure& a, const SweepFailure& b) {
        return std::tie(a.n, a.p, a.seed_index) < std::tie(b.n, b.p, b.seed_index);
    });

    for (const auto& [k, r] : done) {
        result.rows.push_back(r);
    }
    if (!out_dir.empty()) {
        write_text_file((fs::path(out_dir) / "tts.csv").string(), sweep_csv(result.rows, true));
        write_text_file((fs::path(out_dir) / "tts_canonical.csv").string(), sweep_csv(result.rows, false));
    }
    return result;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, bool with_wall_ms) {
    std::vector<SweepRow> sorted = rows;
    std::sort(sorted.begin(), sorted.end(),
              [](const SweepRow& a, const SweepRow& b) { return key_of(a) < key_of(b); });
    std::ostringstream out;
    out << "solver,N,p,seed_index,seed,tts,qmf_tts,hit_target";
    if (with_wall_ms) {
        out << ",wall_ms";
    }
    out << '\n';
    for (const auto& r : sorted) {
        out << r.solver << ',' << r.n << ',' << r.p << ',' << r.seed_index << ',' << r.seed << ','
            << format_double(r.tts) << ',' << (r.qmf_tts ? format_double(*r.qmf_tts) : std::string{}) << ','
            << (r.hit_target ? 1 : 0);
        if (with_wall_ms) {
            out << ',' << format_double(r.wall_ms);
        }
        out << '\n';
    }
    return out.str();
}

std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("empty sweep CSV");
    }
    const std::string header = "solver,N,p,seed_index,seed,tts,qmf_tts,hit_target";
    const bool with_wall = line == header + ",wall_ms";
    if (line != header && !with_wall) {
        throw std::invalid_argument("unrecognised sweep CSV header: " + line);
    }
    std::vector<SweepRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            f.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            f.emplace_back();
        }
        if (f.size() != (with_wall ? 9u : 8u)) {
            throw std::invalid_argument("sweep CSV line " + std::to_string(line_no) + " has " +
                                        std::to_string(f.size()) + " fields");
        }
        try {
            SweepRow r;
            r.solver = f[0];
            r.n = std::stoi(f[1]);
            r.p = std::stoi(f[2]);
            r.seed_index = std::stoi(f[3]);
            r.seed = std::stoull(f[4]);
            r.tts = std::stod(f[5]);
            if (!f[6].empty()) {
                r.qmf_tts = std::stod(f[6]);
            }
            r.hit_target = f[7] == "1";
            if (with_wall) {
                r.wall_ms = std::stod(f[8]);
            }
            rows.push_back(r);
        } catch (const std::logic_error&) {
            throw std::invalid_argument("sweep CSV line " + std::to_string(line_no) + " is malformed");
        }
    }
    return rows;
}

std::vector<FitPoint> sweep_fit_points(const std::vector<SweepRow>& rows, const std::string& column,
                                       std::optional<int> p) {
    if (column != "tts" && column != "qmf_tts") {
        throw std::invalid_argument("fit column must be tts or qmf_tts");
    }
    std::set<std::string> solvers;
    std::set<int> depths;
    std::map<int, std::pair<double, int>> acc;
    for (const auto& r : rows) {
        if (p && r.p != *p) {
            continue;
        }
        solvers.insert(r.solver);
        depths.insert(r.p);
        if (!r.hit_target) {
            continue;
        }
        double v = r.tts;
        if (column == "qmf_tts") {
            if (!r.qmf_tts) {
                throw std::invalid_argument("rows have no qmf_tts values");
            }
            v = *r.qmf_tts;
        }
        auto& a = acc[r.n];
        a.first += v;
        a.second += 1;
    }
    if (solvers.size() > 1) {
        throw std::invalid_argument("rows mix several solvers");
    }
    if (depths.size() > 1) {
        throw std::invalid_argument("rows mix several depths; select one with --p");
    }
    std::vector<FitPoint> pts;
    for (const auto& [n, a] : acc) {
        pts.push_back({n, a.first / a.second});
    }
    return pts;
}

}  // namespace labs_qaoa
