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

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "labs/compiler.hpp"
#include "labs/energy_table.hpp"
#include "labs/statevector.hpp"

namespace labs_qaoa {

/// One part of a checked phase operator. `gates` are the data gates between
/// the opening and closing checks: CNOTs that move the running CNOT frame
/// back into place, the base gates of the part, and CNOTs that restore the
/// computational frame at the cut. Together they form a diagonal unitary.
struct Split {
    std::vector<Gate> gates;
    long long base_two_qubit = 0;        // two-qubit gates taken from the base circuit
    std::vector<int> clean_positions;    // positions (before gate p) where the frame is the identity
    std::size_t restore_in = 0;          // leading frame CNOTs
    std::size_t restore_out = 0;         // trailing frame CNOTs
};

/// A phase circuit cut into m parts, each wrapped in a Z-parity check
/// (ancilla n_data, CZ fan-out) and an X-parity check (ancilla n_data + 1,
/// CNOT fan-out). Ancillas start in |+>, are measured after a Hadamard and
/// are reset for reuse.
struct CheckedCircuit {
    Circuit base;
    int m = 0;
    std::vector<Split> splits;

    [[nodiscard]] int n_data() const { return base.n_data; }
    [[nodiscard]] int ancilla_z() const { return base.n_data; }
    [[nodiscard]] int ancilla_x() const { return base.n_data + 1; }

    /// Gate-level circuit with meta-gates for the fan-outs. Each MEASURE
    /// also resets its ancilla to |0>.
    [[nodiscard]] Circuit flatten() const;
    /// Index in flatten().gates of the first data gate of split k.
    [[nodiscard]] std::size_t split_offset(int k) const;
};

/// Cuts the circuit into m parts with base two-qubit counts balanced within
/// one. Throws if m < 1 or m exceeds the two-qubit gate count.
CheckedCircuit insert_checks(const Circuit& circuit, int m);

enum class Pauli : std::uint8_t { x = 1, y = 2, z = 3 };
char to_char(Pauli p);

/// A Pauli applied just before gate `position` of a gate list.
struct Injection {
    std::size_t position = 0;
    int qubit = 0;
    Pauli pauli = Pauli::x;
};

void apply_pauli(Statevector& state, int qubit, Pauli p);

/// Runs a gate list on `state`, applying injections at their positions.
/// Returns measurement outcomes in order.
std::vector<int> run_circuit(Statevector& state, const std::vector<Gate>& gates, int n_data,
                             std::span<const Injection> injections, std::mt19937_64& rng);

struct NoiseModel {
    double p2 = 2e-3;
    // Relative weights of X, Y and Z; the qubit is uniform over the gate's two.
    double wx = 1.0, wy = 1.0, wz = 1.0;
    bool noisy_checks = false;  // also apply noise after check gates
    std::uint64_t seed = 0;

    void validate() const;
};

struct ShotRecord {
    BasisIndex bitstring = 0;
    bool kept = true;
    std::vector<int> syndrome;  // 2m bits, per split Z then X
};

struct PostSelectionStats {
    int n = 0;
    int p = 1;
    int m = 0;
    double p2 = 0.0;
    long long shots_total = 0;
    long long shots_kept = 0;
    double ratio = 0.0;
    double mf_all = 0.0;
    double mf_kept = 0.0;
    std::vector<long long> detections_per_check;  // 2m entries
    std::vector<ShotRecord> shots;                // only when requested
};

struct NoisySimOptions {
    double beta = 0.0;              // mixer angle applied after the phase operator
    bool keep_shots = false;
    bool force_gate_level = false;  // simulate every shot gate by gate
};

/// Pauli-trajectory simulation of one QAOA layer whose phase operator is
/// the checked circuit. Shots without errors are sampled from the ideal
/// output distribution.
PostSelectionStats simulate_noisy(const CheckedCircuit& checked, const NoiseModel& noise, long long shots,
                                  const EnergyTable& table, const NoisySimOptions& opts = {});

/// Diagonal of split k's unitary, in the computational basis of the data qubits.
std::vector<Amplitude> split_diagonal(const CheckedCircuit& checked, int k);

struct DetectionReport {
    long long injections = 0;
    long long detected = 0;
    [[nodiscard]] double rate() const { return injections == 0 ? 0.0 : static_cast<double>(detected) / injections; }
};

/// Injects every single-qubit Pauli on every data qubit at every clean
/// position of every split (one injection per run) and counts how many runs
/// report a nonzero syndrome. Noiseless otherwise.
DetectionReport detection_theorem_check(const CheckedCircuit& checked, std::uint64_t seed = 0);

/// Same, but `trials` random single injections.
DetectionReport detection_theorem_check(const CheckedCircuit& checked, int trials, std::uint64_t seed);

/// Runs the checked circuit once from |+>^N with the given injections
/// (positions index flatten().gates) and returns the 2m syndrome bits.
std::vector<int> checked_syndrome(const CheckedCircuit& checked, std::span<const Injection> injections,
                                  std::uint64_t seed = 0);

struct TimeModel {
    double t1 = 0.0;  // without early stopping
    double t2 = 0.0;  // stopping at the first failed check
    bool infinite = false;
};

/// Average time to a post-selected result with and without early stopping,
/// given per-split no-error probabilities.
TimeModel avg_time_models(double t0, std::span<const double> p_list);

/// True iff H_C(x) = H_C(complement x) for every x; Z-parity commutation
/// is automatic for a diagonal operator.
bool symmetry_commutation_check(const ProblemInstance& instance);
bool symmetry_commutation_check(int n, std::span<const Term> terms);

}  // namespace labs_qaoa
