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

#include "labs/errdetect.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "labs/parallel.hpp"

namespace labs_qaoa {

namespace {

// Linear map x -> F x over GF(2); rows[i] is the mask of input bits that
// make up output bit i.
struct Frame {
    std::vector<std::uint64_t> rows;

    explicit Frame(int n) : rows(static_cast<std::size_t>(n)) {
        for (int i = 0; i < n; ++i) {
            rows[static_cast<std::size_t>(i)] = std::uint64_t{1} << i;
        }
    }
    void cnot(int c, int t) { rows[static_cast<std::size_t>(t)] ^= rows[static_cast<std::size_t>(c)]; }
    [[nodiscard]] bool identity() const {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i] != (std::uint64_t{1} << i)) {
                return false;
            }
        }
        return true;
    }
};

// CNOTs (in time order) that take frame F back to the identity.
std::vector<Gate> frame_inverse(Frame f) {
    const int n = static_cast<int>(f.rows.size());
    std::vector<Gate> ops;
    auto op = [&](int c, int t) {
        f.cnot(c, t);
        ops.push_back(Gate::cnot(c, t));
    };
    for (int col = 0; col < n; ++col) {
        const std::uint64_t bit = std::uint64_t{1} << col;
        if (!(f.rows[static_cast<std::size_t>(col)] & bit)) {
            int r = col + 1;
            while (r < n && !(f.rows[static_cast<std::size_t>(r)] & bit)) {
                ++r;
            }
            if (r == n) {
                throw std::logic_error("CNOT frame is singular");
            }
            op(r, col);
        }
        for (int r = 0; r < n; ++r) {
            if (r != col && (f.rows[static_cast<std::size_t>(r)] & bit)) {
                op(col, r);
            }
        }
    }
    return ops;
}

bool is_frame_gate(const Gate& g) {
    switch (g.kind) {
        case GateKind::cnot:
        case GateKind::rzz:
        case GateKind::rz:
            return true;
        default:
            return false;
    }
}

std::vector<Gate> check_open(int n, int az, int ax) {
    std::vector<Gate> g{Gate::hadamard(az), Gate::hadamard(ax)};
    g.push_back({GateKind::parity_check_z, {az, -1}, 0.0});
    g.push_back({GateKind::parity_check_x, {ax, -1}, 0.0});
    (void)n;
    return g;
}

std::vector<Gate> check_close(int az, int ax) {
    return {{GateKind::parity_check_x, {ax, -1}, 0.0},
            {GateKind::parity_check_z, {az, -1}, 0.0},
            Gate::hadamard(az),
            Gate::hadamard(ax),
            {GateKind::measure, {az, -1}, 0.0},
            {GateKind::measure, {ax, -1}, 0.0}};
}

constexpr std::size_t kOpenLen = 4;
constexpr std::size_t kCloseLen = 6;

}  // namespace

Circuit CheckedCircuit::flatten() const {
    Circuit c;
    c.n_data = base.n_data;
    c.n_ancilla = 2;
    c.metadata = base.metadata;
    for (const auto& s : splits) {
        const auto open = check_open(n_data(), ancilla_z(), ancilla_x());
        c.gates.insert(c.gates.end(), open.begin(), open.end());
        c.gates.insert(c.gates.end(), s.gates.begin(), s.gates.end());
        const auto close = check_close(ancilla_z(), ancilla_x());
        c.gates.insert(c.gates.end(), close.begin(), close.end());
    }
    c.metadata.two_qubit_count = two_qubit_count(c.gates, c.n_data);
    return c;
}

std::size_t CheckedCircuit::split_offset(int k) const {
    std::size_t off = 0;
    for (int i = 0; i < k; ++i) {
        off += kOpenLen + splits[static_cast<std::size_t>(i)].gates.size() + kCloseLen;
    }
    return off + kOpenLen;
}

CheckedCircuit insert_checks(const Circuit& circuit, int m) {
    const int n = circuit.n_data;
    if (n < 1 || n > 62) {
        throw std::invalid_argument("checked circuits need 1..62 data qubits");
    }
    if (circuit.n_ancilla != 0) {
        throw std::invalid_argument("insert_checks expects a circuit without ancillas");
    }
    for (const auto& g : circuit.gates) {
        if (!is_frame_gate(g)) {
            throw std::invalid_argument("parity checks need a circuit of CNOT and diagonal gates, found " +
                                        to_string(g.kind));
        }
    }
    const long long total = two_qubit_count(circuit.gates, n);
    if (m < 1 || m > total) {
        throw std::invalid_argument("number of splits must lie in [1, two-qubit gate count]");
    }
    CheckedCircuit out;
    out.base = circuit;
    out.m = m;
    out.splits.resize(static_cast<std::size_t>(m));
    std::vector<long long> quota(static_cast<std::size_t>(m), total / m);
    for (long long k = 0; k < total % m; ++k) {
        ++quota[static_cast<std::size_t>(k)];
    }

    Frame frame(n);
    int k = 0;
    for (const auto& g : circuit.gates) {
        auto& split = out.splits[static_cast<std::size_t>(k)];
        split.gates.push_back(g);
        if (g.kind == GateKind::cnot) {
            frame.cnot(g.qubits[0], g.qubits[1]);
        }
        if (g.arity() == 2) {
            ++split.base_two_qubit;
        }
        if (split.base_two_qubit == quota[static_cast<std::size_t>(k)] && k + 1 < m) {
            const auto restore = frame_inverse(frame);
            split.gates.insert(split.gates.end(), restore.begin(), restore.end());
            split.restore_out = restore.size();
            ++k;
            auto& next = out.splits[static_cast<std::size_t>(k)];
            next.gates.assign(restore.rbegin(), restore.rend());
            next.restore_in = restore.size();
        }
    }
    if (!frame.identity()) {
        throw std::logic_error("circuit does not end in the computational frame");
    }
    for (auto& split : out.splits) {
        Frame rel(n);
        split.clean_positions.push_back(0);
        for (std::size_t p = 0; p < split.gates.size(); ++p) {
            const auto& g = split.gates[p];
            if (g.kind == GateKind::cnot) {
                rel.cnot(g.qubits[0], g.qubits[1]);
            }
            if (rel.identity()) {
                split.clean_positions.push_back(static_cast<int>(p + 1));
            }
        }
        if (!rel.identity()) {
            throw std::logic_error("split does not close its CNOT frame");
        }
    }
    return out;
}

char to_char(Pauli p) {
    switch (p) {
        case Pauli::x:
            return 'X';
        case Pauli::y:
            return 'Y';
        case Pauli::z:
            return 'Z';
    }
    return '?';
}

void apply_pauli(Statevector& state, int qubit, Pauli p) {
    switch (p) {
        case Pauli::x:
            apply_x(state, qubit);
            break;
        case Pauli::y:
            apply_y(state, qubit);
            break;
        case Pauli::z:
            apply_z(state, qubit);
            break;
    }
}

namespace {

void apply_gate(Statevector& state, const Gate& g, int n_data, std::mt19937_64& rng, std::vector<int>& outcomes) {
    switch (g.kind) {
        case GateKind::cnot:
            apply_cnot(state, g.qubits[0], g.qubits[1]);
            break;
        case GateKind::cz:
            apply_cz(state, g.qubits[0], g.qubits[1]);
            break;
        case GateKind::rzz:
            apply_rzz(state, g.qubits[0], g.qubits[1], g.angle);
            break;
        case GateKind::rz:
            apply_rz(state, g.qubits[0], g.angle);
            break;
        case GateKind::rx:
            apply_rx(state, g.qubits[0], g.angle);
            break;
        case GateKind::h:
            apply_h(state, g.qubits[0]);
            break;
        case GateKind::parity_check_z:
            for (int q = 0; q < n_data; ++q) {
                apply_cz(state, g.qubits[0], q);
            }
            break;
        case GateKind::parity_check_x:
            for (int q = 0; q < n_data; ++q) {
                apply_cnot(state, g.qubits[0], q);
            }
            break;
        case GateKind::measure: {
            const int r = measure_qubit(state, g.qubits[0], rng);
            if (r == 1) {
                apply_x(state, g.qubits[0]);
            }
            outcomes.push_back(r);
            break;
        }
    }
}

}  // namespace

std::vector<int> run_circuit(Statevector& state, const std::vector<Gate>& gates, int n_data,
                             std::span<const Injection> injections, std::mt19937_64& rng) {
    std::vector<Injection> inj(injections.begin(), injections.end());
    std::stable_sort(inj.begin(), inj.end(), [](const auto& a, const auto& b) { return a.position < b.position; });
    for (const auto& e : inj) {
        if (e.position > gates.size() || e.qubit < 0 || e.qubit >= state.num_qubits()) {
            throw std::invalid_argument("injection outside the circuit");
        }
    }
    std::vector<int> outcomes;
    std::size_t next = 0;
    for (std::size_t idx = 0; idx <= gates.size(); ++idx) {
        while (next < inj.size() && inj[next].position == idx) {
            apply_pauli(state, inj[next].qubit, inj[next].pauli);
            ++next;
        }
        if (idx < gates.size()) {
            apply_gate(state, gates[idx], n_data, rng, outcomes);
        }
    }
    return outcomes;
}

void NoiseModel::validate() const {
    if (!(p2 >= 0.0 && p2 <= 1.0)) {
        throw std::invalid_argument("p2 must lie in [0, 1]");
    }
    if (wx < 0 || wy < 0 || wz < 0 || !(wx + wy + wz > 0)) {
        throw std::invalid_argument("Pauli channel weights must be non-negative with positive sum");
    }
}

std::vector<Amplitude> split_diagonal(const CheckedCircuit& checked, int k) {
    const int n = checked.n_data();
    if (k < 0 || k >= checked.m) {
        throw std::invalid_argument("split index out of range");
    }
    Frame frame(n);
    std::map<std::uint64_t, double> half_angles;  // parity mask -> theta / 2
    for (const auto& g : checked.splits[static_cast<std::size_t>(k)].gates) {
        if (g.kind == GateKind::cnot) {
            frame.cnot(g.qubits[0], g.qubits[1]);
        } else if (g.kind == GateKind::rzz) {
            half_angles[frame.rows[static_cast<std::size_t>(g.qubits[0])] ^
                        frame.rows[static_cast<std::size_t>(g.qubits[1])]] += 0.5 * g.angle;
        } else if (g.kind == GateKind::rz) {
            half_angles[frame.rows[static_cast<std::size_t>(g.qubits[0])]] += 0.5 * g.angle;
        }
    }
    const std::size_t dim = std::size_t{1} << n;
    std::vector<Amplitude> diag(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        double phase = 0.0;
        for (const auto& [mask, a] : half_angles) {
            phase += (std::popcount(mask & x) & 1) ? a : -a;
        }
        diag[x] = std::polar(1.0, phase);
    }
    return diag;
}

namespace {

// Gate list of one split including both checks, with meta-gates expanded so
// noise can follow individual check gates.
std::vector<Gate> explicit_split(const CheckedCircuit& checked, int k) {
    std::vector<Gate> g = check_open(checked.n_data(), checked.ancilla_z(), checked.ancilla_x());
    const auto& s = checked.splits[static_cast<std::size_t>(k)].gates;
    g.insert(g.end(), s.begin(), s.end());
    const auto close = check_close(checked.ancilla_z(), checked.ancilla_x());
    g.insert(g.end(), close.begin(), close.end());
    return expand_meta_gates(g, checked.n_data());
}

std::size_t sample_index(std::span<const Amplitude> amps, std::size_t count, std::mt19937_64& rng) {
    double total = 0.0;
    for (std::size_t x = 0; x < count; ++x) {
        total += std::norm(amps[x]);
    }
    const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
    double acc = 0.0;
    for (std::size_t x = 0; x < count; ++x) {
        acc += std::norm(amps[x]);
        if (u < acc) {
            return x;
        }
    }
    return count - 1;
}

}  // namespace

PostSelectionStats simulate_noisy(const CheckedCircuit& checked, const NoiseModel& noise, long long shots,
                                  const EnergyTable& table, const NoisySimOptions& opts) {
    noise.validate();
    const int n = checked.n_data();
    if (table.n != n) {
        throw std::invalid_argument("energy table does not match the circuit");
    }
    if (n + 2 > kMaxStatevectorQubits) {
        throw ResourceError("too many qubits for trajectory simulation");
    }
    if (shots < 1) {
        throw std::invalid_argument("need at least one shot");
    }
    const int m = checked.m;
    const std::size_t dim = std::size_t{1} << n;

    std::vector<std::vector<Amplitude>> diags;
    std::vector<std::vector<Amplitude>> ideal;  // data state entering split k
    {
        Statevector psi = init_plus_state(n);
        for (int k = 0; k < m; ++k) {
            ideal.emplace_back(psi.amplitudes().begin(), psi.amplitudes().end());
            diags.push_back(split_diagonal(checked, k));
            for (std::size_t x = 0; x < dim; ++x) {
                psi[x] *= diags.back()[x];
            }
        }
        apply_mixer(psi, opts.beta);
        ideal.emplace_back(psi.amplitudes().begin(), psi.amplitudes().end());
    }
    std::vector<double> ideal_cdf(dim);
    {
        double acc = 0.0;
        for (std::size_t x = 0; x < dim; ++x) {
            acc += std::norm(ideal.back()[x]);
            ideal_cdf[x] = acc;
        }
    }

    // Noisy locations: (split, position in explicit list after which the error acts).
    std::vector<std::vector<Gate>> explicit_gates;
    struct Site {
        int split;
        std::size_t after;
        int qa, qb;
    };
    std::vector<Site> sites;
    for (int k = 0; k < m; ++k) {
        explicit_gates.push_back(explicit_split(checked, k));
        const auto& gl = explicit_gates.back();
        const std::size_t data_begin = kOpenLen - 2 + 2 * static_cast<std::size_t>(n);
        const std::size_t data_end = data_begin + checked.splits[static_cast<std::size_t>(k)].gates.size();
        for (std::size_t p = 0; p < gl.size(); ++p) {
            if (gl[p].arity() != 2) {
                continue;
            }
            const bool data_gate = p >= data_begin && p < data_end;
            if (data_gate || noise.noisy_checks) {
                sites.push_back({k, p + 1, gl[p].qubits[0], gl[p].qubits[1]});
            }
        }
    }

    PostSelectionStats st;
    st.n = n;
    st.m = m;
    st.p2 = noise.p2;
    st.shots_total = shots;
    st.detections_per_check.assign(2 * static_cast<std::size_t>(m), 0);
    double mf_all = 0.0;
    double mf_kept = 0.0;

    Statevector full(n + 2);
    Statevector data(n);
    std::discrete_distribution<int> which_pauli({noise.wx, noise.wy, noise.wz});
    for (long long shot = 0; shot < shots; ++shot) {
        std::mt19937_64 rng(derive_seed(noise.seed, {static_cast<std::uint64_t>(shot)}));
        std::vector<std::vector<Injection>> errs(static_cast<std::size_t>(m));
        bool any = false;
        if (noise.p2 > 0.0 && !sites.empty()) {
            std::geometric_distribution<long long> gap(noise.p2);
            std::bernoulli_distribution coin(0.5);
            long long pos = gap(rng);
            while (pos < static_cast<long long>(sites.size())) {
                const Site& s = sites[static_cast<std::size_t>(pos)];
                const Pauli pl = static_cast<Pauli>(which_pauli(rng) + 1);
                const int q = coin(rng) ? s.qb : s.qa;
                errs[static_cast<std::size_t>(s.split)].push_back({s.after, q, pl});
                any = true;
                pos += 1 + gap(rng);
            }
        }

        ShotRecord rec;
        rec.syndrome.assign(2 * static_cast<std::size_t>(m), 0);
        if (!any && !opts.force_gate_level) {
            const double u = std::uniform_real_distribution<double>(0.0, ideal_cdf.back())(rng);
            const auto it = std::upper_bound(ideal_cdf.begin(), ideal_cdf.end(), u);
            rec.bitstring = static_cast<BasisIndex>(std::min<std::size_t>(it - ideal_cdf.begin(), dim - 1));
        } else {
            int k0 = 0;
            if (!opts.force_gate_level) {
                while (errs[static_cast<std::size_t>(k0)].empty()) {
                    ++k0;
                }
            }
            auto amps = full.amplitudes();
            std::fill(amps.begin(), amps.end(), Amplitude{0.0, 0.0});
            std::copy(ideal[static_cast<std::size_t>(k0)].begin(), ideal[static_cast<std::size_t>(k0)].end(),
                      amps.begin());
            for (int k = k0; k < m; ++k) {
                const auto& e = errs[static_cast<std::size_t>(k)];
                if (e.empty() && !opts.force_gate_level) {
                    // Ancillas are reset, so the state lives on the first 2^N entries.
                    const auto& d = diags[static_cast<std::size_t>(k)];
                    for (std::size_t x = 0; x < dim; ++x) {
                        amps[x] *= d[x];
                    }
                    continue;
                }
                const auto out = run_circuit(full, explicit_gates[static_cast<std::size_t>(k)], n, e, rng);
                rec.syndrome[2 * static_cast<std::size_t>(k)] = out[0];
                rec.syndrome[2 * static_cast<std::size_t>(k) + 1] = out[1];
            }
            auto d = data.amplitudes();
            std::copy(amps.begin(), amps.begin() + static_cast<std::ptrdiff_t>(dim), d.begin());
            apply_mixer(data, opts.beta);
            rec.bitstring = sample_index(data.amplitudes(), dim, rng);
        }
        for (std::size_t i = 0; i < rec.syndrome.size(); ++i) {
            if (rec.syndrome[i]) {
                rec.kept = false;
                ++st.detections_per_check[i];
            }
        }
        const double mf = merit_factor(n, table.energies[static_cast<std::size_t>(rec.bitstring)]);
        mf_all += mf;
        if (rec.kept) {
            ++st.shots_kept;
            mf_kept += mf;
        }
        if (opts.keep_shots) {
            st.shots.push_back(std::move(rec));
        }
    }
    st.ratio = static_cast<double>(st.shots_kept) / static_cast<double>(shots);
    st.mf_all = mf_all / static_cast<double>(shots);
    st.mf_kept = st.shots_kept > 0 ? mf_kept / static_cast<double>(st.shots_kept) : 0.0;
    return st;
}

std::vector<int> checked_syndrome(const CheckedCircuit& checked, std::span<const Injection> injections,
                                  std::uint64_t seed) {
    const int n = checked.n_data();
    Statevector s(n + 2);
    for (int q = 0; q < n; ++q) {
        apply_h(s, q);
    }
    std::mt19937_64 rng(seed);
    return run_circuit(s, checked.flatten().gates, n, injections, rng);
}

namespace {

bool detected(const std::vector<int>& syndrome) {
    return std::any_of(syndrome.begin(), syndrome.end(), [](int b) { return b != 0; });
}

}  // namespace

DetectionReport detection_theorem_check(const CheckedCircuit& checked, std::uint64_t seed) {
    DetectionReport r;
    for (int k = 0; k < checked.m; ++k) {
        const std::size_t off = checked.split_offset(k);
        for (int pos : checked.splits[static_cast<std::size_t>(k)].clean_positions) {
            for (int q = 0; q < checked.n_data(); ++q) {
                for (Pauli p : {Pauli::x, Pauli::y, Pauli::z}) {
                    const Injection inj{off + static_cast<std::size_t>(pos), q, p};
                    ++r.injections;
                    if (detected(checked_syndrome(checked, std::span(&inj, 1), seed))) {
                        ++r.detected;
                    }
                }
            }
        }
    }
    return r;
}

DetectionReport detection_theorem_check(const CheckedCircuit& checked, int trials, std::uint64_t seed) {
    DetectionReport r;
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        const int k = std::uniform_int_distribution<int>(0, checked.m - 1)(rng);
        const auto& clean = checked.splits[static_cast<std::size_t>(k)].clean_positions;
        const int pos = clean[std::uniform_int_distribution<std::size_t>(0, clean.size() - 1)(rng)];
        const int q = std::uniform_int_distribution<int>(0, checked.n_data() - 1)(rng);
        const auto p = static_cast<Pauli>(std::uniform_int_distribution<int>(1, 3)(rng));
        const Injection inj{checked.split_offset(k) + static_cast<std::size_t>(pos), q, p};
        ++r.injections;
        if (detected(checked_syndrome(checked, std::span(&inj, 1), rng()))) {
            ++r.detected;
        }
    }
    return r;
}

TimeModel avg_time_models(double t0, std::span<const double> p_list) {
    if (p_list.empty()) {
        throw std::invalid_argument("need at least one split probability");
    }
    TimeModel tm;
    double all = 1.0;
    for (double p : p_list) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("split success probabilities must lie in [0, 1]");
        }
        all *= p;
    }
    if (all == 0.0) {
        tm.infinite = true;
        tm.t1 = tm.t2 = std::numeric_limits<double>::infinity();
        return tm;
    }
    const std::size_t m = p_list.size();
    tm.t1 = t0 / all;
    // Expected fraction of the circuit run per attempt when stopping at the
    // first failed check; the last check never stops early.
    double fraction = 0.0;
    double reach = 1.0;
    for (std::size_t i = 1; i < m; ++i) {
        fraction += reach * (1.0 - p_list[i - 1]) * static_cast<double>(i) / static_cast<double>(m);
        reach *= p_list[i - 1];
    }
    fraction += reach;
    tm.t2 = tm.t1 * fraction;
    return tm;
}

bool symmetry_commutation_check(int n, std::span<const Term> terms) {
    if (n < 1 || n > 30) {
        throw std::invalid_argument("exhaustive commutation check needs 1 <= N <= 30");
    }
    const BasisIndex all = (BasisIndex{1} << n) - 1;
    for (BasisIndex x = 0; x <= all; ++x) {
        if (evaluate_terms(terms, x) != evaluate_terms(terms, x ^ all)) {
            return false;
        }
    }
    return true;
}

bool symmetry_commutation_check(const ProblemInstance& instance) {
    const auto terms = instance.terms();
    return symmetry_commutation_check(instance.n, terms);
}

}  // namespace labs_qaoa
