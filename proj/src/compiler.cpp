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

#include "labs/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

#include "labs/parallel.hpp"

namespace labs_qaoa {

std::string to_string(GateKind kind) {
    switch (kind) {
        case GateKind::cnot:
            return "CNOT";
        case GateKind::cz:
            return "CZ";
        case GateKind::rzz:
            return "RZZ";
        case GateKind::rz:
            return "RZ";
        case GateKind::rx:
            return "RX";
        case GateKind::h:
            return "H";
        case GateKind::parity_check_z:
            return "PARITY_CHECK_Z";
        case GateKind::parity_check_x:
            return "PARITY_CHECK_X";
        case GateKind::measure:
            return "MEASURE";
    }
    return "H";
}

GateKind gate_kind_from_string(const std::string& text) {
    for (auto k : {GateKind::cnot, GateKind::cz, GateKind::rzz, GateKind::rz, GateKind::rx, GateKind::h,
                   GateKind::parity_check_z, GateKind::parity_check_x, GateKind::measure}) {
        if (to_string(k) == text) {
            return k;
        }
    }
    throw std::invalid_argument("unknown gate kind '" + text + "'");
}

int Gate::arity() const {
    switch (kind) {
        case GateKind::cnot:
        case GateKind::cz:
        case GateKind::rzz:
            return 2;
        default:
            return 1;
    }
}

void Circuit::validate() const {
    const int total = num_qubits();
    for (const auto& g : gates) {
        for (int i = 0; i < g.arity(); ++i) {
            if (g.qubits[static_cast<std::size_t>(i)] < 0 || g.qubits[static_cast<std::size_t>(i)] >= total) {
                throw std::invalid_argument("gate " + to_string(g.kind) + " refers to a qubit outside the register");
            }
        }
        if (g.arity() == 2 && g.qubits[0] == g.qubits[1]) {
            throw std::invalid_argument("two-qubit gate acts twice on one qubit");
        }
        if (!std::isfinite(g.angle)) {
            throw std::invalid_argument("gate angle is not finite");
        }
        const bool meta = g.kind == GateKind::parity_check_z || g.kind == GateKind::parity_check_x ||
                          g.kind == GateKind::measure;
        if (meta && g.qubits[0] < n_data) {
            throw std::invalid_argument("parity checks and measurements act on ancillas only");
        }
    }
}

std::vector<Gate> expand_meta_gates(const std::vector<Gate>& gates, int n_data) {
    std::vector<Gate> out;
    out.reserve(gates.size());
    for (const auto& g : gates) {
        if (g.kind == GateKind::parity_check_z) {
            for (int q = 0; q < n_data; ++q) {
                out.push_back(Gate::cz(g.qubits[0], q));
            }
        } else if (g.kind == GateKind::parity_check_x) {
            for (int q = 0; q < n_data; ++q) {
                out.push_back(Gate::cnot(g.qubits[0], q));
            }
        } else {
            out.push_back(g);
        }
    }
    return out;
}

long long two_qubit_count(const std::vector<Gate>& gates, int n_data) {
    long long c = 0;
    for (const auto& g : gates) {
        if (g.arity() == 2) {
            ++c;
        } else if (g.kind == GateKind::parity_check_z || g.kind == GateKind::parity_check_x) {
            c += n_data;
        }
    }
    return c;
}

long long cnot_count(const std::vector<Gate>& gates) {
    return std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.kind == GateKind::cnot; });
}

std::vector<Gate> decompose_four_body(const std::array<int, 4>& quad, double gamma, int coefficient) {
    const auto [i, j, k, l] = quad;
    if (!(0 <= i && i < j && j < k && k < l)) {
        throw std::invalid_argument("four-body term needs 0 <= i < j < k < l");
    }
    const double theta = 2.0 * gamma * coefficient;
    return {Gate::cnot(i, j), Gate::cnot(l, k), Gate::rzz(j, k, theta), Gate::cnot(l, k), Gate::cnot(i, j)};
}

std::vector<OrderedTerm> greedy_order(const ProblemInstance& instance, std::uint64_t seed) {
    using Pair = std::pair<int, int>;
    using Quad = std::array<int, 4>;
    std::map<int, std::vector<Quad>> groups;
    for (const auto& q : instance.four_body) {
        if (q[1] - q[0] != q[3] - q[2]) {
            throw std::logic_error("four-body term with unequal top and bottom locality");
        }
        groups[q[1] - q[0]].push_back(q);
    }
    std::mt19937_64 rng(seed);
    std::vector<OrderedTerm> circuit;
    for (auto& [d, terms] : groups) {
        std::sort(terms.begin(), terms.end());
        std::uniform_int_distribution<std::size_t> pick(0, terms.size() - 1);
        const std::size_t first = pick(rng);
        Quad current = terms[first];
        terms.erase(terms.begin() + static_cast<std::ptrdiff_t>(first));
        circuit.push_back({{current.begin(), current.end()}});
        std::set<Pair> tops{{current[0], current[1]}};
        std::set<Pair> bottoms{{current[2], current[3]}};
        // Second elements present in each list, for the stranded-CNOT penalty.
        std::multiset<int> bottom_seconds{current[3]};
        std::multiset<int> top_seconds{current[1]};
        while (!terms.empty()) {
            std::size_t best = 0;
            int best_score = 0;
            for (std::size_t idx = 0; idx < terms.size(); ++idx) {
                const auto& [r, s, t, v] = terms[idx];
                int score = (tops.count({r, s}) || bottoms.count({t, v})) ? 1 : -1;
                if (bottom_seconds.count(r) || top_seconds.count(t)) {
                    score -= 1;
                }
                // Terms are sorted, so the first maximum is the smallest tuple.
                if (idx == 0 || score > best_score) {
                    best = idx;
                    best_score = score;
                }
            }
            current = terms[best];
            terms.erase(terms.begin() + static_cast<std::ptrdiff_t>(best));
            circuit.push_back({{current.begin(), current.end()}});
            if (tops.insert({current[0], current[1]}).second) {
                top_seconds.insert(current[1]);
            }
            if (bottoms.insert({current[2], current[3]}).second) {
                bottom_seconds.insert(current[3]);
            }
        }
    }
    for (const auto& pair : instance.two_body) {
        bool inserted = false;
        for (std::size_t pos = 0; pos < circuit.size(); ++pos) {
            const auto& ix = circuit[pos].indices;
            if (ix.size() != 4) {
                continue;
            }
            if ((pair[0] == ix[0] && pair[1] == ix[1]) || (pair[0] == ix[2] && pair[1] == ix[3])) {
                circuit.insert(circuit.begin() + static_cast<std::ptrdiff_t>(pos) + 1, {{pair[0], pair[1]}});
                inserted = true;
                break;
            }
        }
        if (!inserted) {
            circuit.push_back({{pair[0], pair[1]}});
        }
    }
    return circuit;
}

std::vector<OrderedTerm> random_order(const ProblemInstance& instance, std::uint64_t seed) {
    std::vector<OrderedTerm> terms;
    for (const auto& q : instance.four_body) {
        terms.push_back({{q.begin(), q.end()}});
    }
    for (const auto& p : instance.two_body) {
        terms.push_back({{p.begin(), p.end()}});
    }
    std::mt19937_64 rng(seed);
    std::shuffle(terms.begin(), terms.end(), rng);
    return terms;
}

std::vector<Gate> cancel_pass(const std::vector<Gate>& gates) {
    std::vector<Gate> current;
    current.reserve(gates.size());
    for (const auto& g : gates) {
        const bool rotation = g.kind == GateKind::rzz || g.kind == GateKind::rz || g.kind == GateKind::rx;
        if (!(rotation && g.angle == 0.0)) {
            current.push_back(g);
        }
    }
    while (true) {
        int max_q = -1;
        for (const auto& g : current) {
            max_q = std::max({max_q, g.qubits[0], g.qubits[1]});
        }
        std::vector<char> alive(current.size(), 1);
        std::vector<std::vector<std::size_t>> stacks(static_cast<std::size_t>(max_q + 1));
        bool changed = false;
        for (std::size_t idx = 0; idx < current.size(); ++idx) {
            const Gate& g = current[idx];
            if (g.kind == GateKind::cnot) {
                auto& sc = stacks[static_cast<std::size_t>(g.qubits[0])];
                auto& st = stacks[static_cast<std::size_t>(g.qubits[1])];
                if (!sc.empty() && !st.empty() && sc.back() == st.back() && current[sc.back()] == g) {
                    alive[sc.back()] = 0;
                    alive[idx] = 0;
                    sc.pop_back();
                    st.pop_back();
                    changed = true;
                    continue;
                }
            }
            if (g.kind == GateKind::parity_check_z || g.kind == GateKind::parity_check_x) {
                // Fan-outs touch every data qubit; treat them as a barrier.
                for (auto& s : stacks) {
                    s.push_back(idx);
                }
                continue;
            }
            for (int i = 0; i < g.arity(); ++i) {
                stacks[static_cast<std::size_t>(g.qubits[static_cast<std::size_t>(i)])].push_back(idx);
            }
        }
        if (!changed) {
            return current;
        }
        std::vector<Gate> next;
        next.reserve(current.size());
        for (std::size_t idx = 0; idx < current.size(); ++idx) {
            if (alive[idx]) {
                next.push_back(current[idx]);
            }
        }
        current = std::move(next);
    }
}

std::vector<Gate> lower_terms(const std::vector<OrderedTerm>& order, double gamma) {
    std::vector<Gate> gates;
    for (const auto& term : order) {
        if (term.indices.size() == 4) {
            const std::array<int, 4> q{term.indices[0] - 1, term.indices[1] - 1, term.indices[2] - 1,
                                       term.indices[3] - 1};
            const auto g = decompose_four_body(q, gamma, 2);
            gates.insert(gates.end(), g.begin(), g.end());
        } else if (term.indices.size() == 2) {
            gates.push_back(Gate::rzz(term.indices[0] - 1, term.indices[1] - 1, 2.0 * gamma));
        } else {
            throw std::invalid_argument("terms must have two or four indices");
        }
    }
    return gates;
}

Circuit compile_phase(const ProblemInstance& instance, double gamma, std::uint64_t seed, TermOrdering ordering) {
    const auto order = ordering == TermOrdering::greedy ? greedy_order(instance, seed) : random_order(instance, seed);
    Circuit c;
    c.n_data = instance.n;
    c.gates = cancel_pass(lower_terms(order, gamma));
    c.metadata.n = instance.n;
    c.metadata.p = 1;
    c.metadata.ordering = ordering == TermOrdering::greedy ? "greedy" : "random";
    c.metadata.seed = seed;
    c.metadata.two_qubit_count = two_qubit_count(c.gates, c.n_data);
    return c;
}

CountReport count_report(const ProblemInstance& instance, int seeds, std::uint64_t base_seed) {
    if (seeds < 1) {
        throw std::invalid_argument("need at least one seed");
    }
    CountReport r;
    r.n = instance.n;
    r.seeds = seeds;
    // The angle does not affect counts; any nonzero value keeps RZZ gates.
    const double gamma = 0.1;
    for (int s = 0; s < seeds; ++s) {
        const std::uint64_t seed = derive_seed(base_seed, {static_cast<std::uint64_t>(s)});
        r.greedy_counts.push_back(compile_phase(instance, gamma, seed, TermOrdering::greedy).metadata.two_qubit_count);
        r.random_counts.push_back(compile_phase(instance, gamma, seed, TermOrdering::random).metadata.two_qubit_count);
    }
    auto mean = [](const std::vector<long long>& v) {
        double acc = 0.0;
        for (auto x : v) {
            acc += static_cast<double>(x);
        }
        return acc / static_cast<double>(v.size());
    };
    r.greedy_mean = mean(r.greedy_counts);
    r.greedy_min = *std::min_element(r.greedy_counts.begin(), r.greedy_counts.end());
    r.greedy_max = *std::max_element(r.greedy_counts.begin(), r.greedy_counts.end());
    r.random_mean = mean(r.random_counts);
    double var = 0.0;
    for (auto x : r.random_counts) {
        var += (static_cast<double>(x) - r.random_mean) * (static_cast<double>(x) - r.random_mean);
    }
    r.random_std = seeds > 1 ? std::sqrt(var / (seeds - 1)) : 0.0;
    r.reduction_ratio = r.greedy_mean > 0 ? r.random_mean / r.greedy_mean : 1.0;
    return r;
}

}  // namespace labs_qaoa
