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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "labs/core.hpp"

namespace labs_qaoa {

enum class GateKind {
    cnot,            // qubits {control, target}
    cz,              // qubits {a, b}
    rzz,             // exp(-i angle/2 Z_a Z_b)
    rz,              // exp(-i angle/2 Z)
    rx,              // exp(-i angle/2 X)
    h,
    parity_check_z,  // ancilla; CZ from the ancilla onto every data qubit
    parity_check_x,  // ancilla; CNOT from the ancilla onto every data qubit
    measure,         // ancilla, Z basis
};

std::string to_string(GateKind kind);
GateKind gate_kind_from_string(const std::string& text);

struct Gate {
    GateKind kind = GateKind::h;
    std::array<int, 2> qubits{-1, -1};
    double angle = 0.0;

    [[nodiscard]] int arity() const;
    [[nodiscard]] bool touches(int q) const { return qubits[0] == q || qubits[1] == q; }

    static Gate cnot(int c, int t) { return {GateKind::cnot, {c, t}, 0.0}; }
    static Gate cz(int a, int b) { return {GateKind::cz, {a, b}, 0.0}; }
    static Gate rzz(int a, int b, double theta) { return {GateKind::rzz, {a, b}, theta}; }
    static Gate rz(int q, double theta) { return {GateKind::rz, {q, -1}, theta}; }
    static Gate rx(int q, double theta) { return {GateKind::rx, {q, -1}, theta}; }
    static Gate hadamard(int q) { return {GateKind::h, {q, -1}, 0.0}; }

    friend bool operator==(const Gate&, const Gate&) = default;
};

struct CircuitMetadata {
    int n = 0;
    int p = 0;
    std::string gamma_convention = "rzz(theta)=exp(-i theta/2 ZZ); theta=2*gamma*coefficient";
    std::string ordering;
    std::uint64_t seed = 0;
    long long two_qubit_count = 0;

    friend bool operator==(const CircuitMetadata&, const CircuitMetadata&) = default;
};

struct Circuit {
    int n_data = 0;
    int n_ancilla = 0;
    std::vector<Gate> gates;
    CircuitMetadata metadata;

    [[nodiscard]] int num_qubits() const { return n_data + n_ancilla; }
    /// Throws if any gate refers to a qubit outside the register or has a
    /// non-finite angle.
    void validate() const;

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Replaces parity-check meta-gates by their CZ / CNOT fan-outs.
std::vector<Gate> expand_meta_gates(const std::vector<Gate>& gates, int n_data);

/// CNOT, CZ and RZZ count, with parity-check meta-gates counted as n_data each.
long long two_qubit_count(const std::vector<Gate>& gates, int n_data);
long long cnot_count(const std::vector<Gate>& gates);

/// exp(-i gamma coeff Z_i Z_j Z_k Z_l) for 0-based qubits i < j < k < l:
/// CNOT(i->j), CNOT(l->k), RZZ(j, k, 2 gamma coeff), CNOT(l->k), CNOT(i->j).
std::vector<Gate> decompose_four_body(const std::array<int, 4>& quad, double gamma, int coefficient = 2);

/// Ordered cost-operator terms. Indices are 1-based as in ProblemInstance.
struct OrderedTerm {
    std::vector<int> indices;  // two or four positions
    friend bool operator==(const OrderedTerm&, const OrderedTerm&) = default;
};

/// Greedy scheduling of the four-body terms for CNOT cancellation, grouped
/// by locality d = j - i, followed by placement of the two-body terms next
/// to a four-body term that shares their pair. Ties go to the
/// lexicographically smallest tuple.
std::vector<OrderedTerm> greedy_order(const ProblemInstance& instance, std::uint64_t seed);

/// Uniformly random order of all terms.
std::vector<OrderedTerm> random_order(const ProblemInstance& instance, std::uint64_t seed);

/// Drops zero-angle rotations, then removes pairs of identical CNOTs with
/// no gate between them on either qubit, repeatedly, until nothing changes.
std::vector<Gate> cancel_pass(const std::vector<Gate>& gates);

enum class TermOrdering { greedy, random };

/// Gates for exp(-i gamma H_C) from an ordered term list, before cancellation.
std::vector<Gate> lower_terms(const std::vector<OrderedTerm>& order, double gamma);

/// Ordering, lowering and cancellation of one phase layer.
Circuit compile_phase(const ProblemInstance& instance, double gamma, std::uint64_t seed,
                      TermOrdering ordering = TermOrdering::greedy);

struct CountReport {
    int n = 0;
    int seeds = 0;
    double greedy_mean = 0.0;
    long long greedy_min = 0;
    long long greedy_max = 0;
    double random_mean = 0.0;
    double random_std = 0.0;
    double reduction_ratio = 0.0;  // random_mean / greedy_mean
    std::vector<long long> greedy_counts;
    std::vector<long long> random_counts;
};

/// Two-qubit counts after cancellation, greedy and random, for `seeds` seeds.
CountReport count_report(const ProblemInstance& instance, int seeds, std::uint64_t base_seed = 0);

}  // namespace labs_qaoa
