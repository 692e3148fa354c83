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
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "labs/energy_table.hpp"

namespace labs_qaoa {

using Amplitude = std::complex<double>;

/// Dense 2^N state in the computational basis, qubit j = bit j of the index.
class Statevector {
   public:
    Statevector() = default;
    /// |0...0>. Checks the memory budget.
    explicit Statevector(int num_qubits);

    [[nodiscard]] int num_qubits() const { return n_; }
    [[nodiscard]] std::size_t size() const { return amps_.size(); }
    [[nodiscard]] std::span<Amplitude> amplitudes() { return amps_; }
    [[nodiscard]] std::span<const Amplitude> amplitudes() const { return amps_; }
    Amplitude& operator[](std::size_t i) { return amps_[i]; }
    const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm_squared() const;

   private:
    int n_ = 0;
    std::vector<Amplitude> amps_;
};

inline constexpr int kMaxStatevectorQubits = 34;

/// Uniform superposition |+>^N.
Statevector init_plus_state(int n);

/// Kernel options. Work is split into fixed blocks, so results do not
/// depend on the worker count.
struct KernelOptions {
    int workers = 1;
};

/// Precomputed e^{-i gamma H_C(E)} for every energy value of a table.
class PhaseTable {
   public:
    PhaseTable(const EnergyTable& table, double gamma);
    [[nodiscard]] const Amplitude& operator()(std::int64_t energy) const { return lut_[static_cast<std::size_t>(energy)]; }

   private:
    std::vector<Amplitude> lut_;
};

/// a_x <- exp(-i gamma H_C(x)) a_x, with H_C = (E - N(N-1)/2) / 2.
void apply_phase(Statevector& state, const EnergyTable& table, double gamma, KernelOptions opts = {});

/// prod_j exp(-i beta X_j), applied qubit by qubit over stride-2^j pairs.
void apply_mixer(Statevector& state, double beta, KernelOptions opts = {});

// Gate kernels used by the circuit simulator.
void apply_single_qubit(Statevector& state, int q, const std::array<Amplitude, 4>& m);
void apply_h(Statevector& state, int q);
void apply_x(Statevector& state, int q);
void apply_y(Statevector& state, int q);
void apply_z(Statevector& state, int q);
void apply_rz(Statevector& state, int q, double theta);  // exp(-i theta/2 Z)
void apply_rx(Statevector& state, int q, double theta);  // exp(-i theta/2 X)
void apply_cnot(Statevector& state, int control, int target);
void apply_cz(Statevector& state, int a, int b);
void apply_rzz(Statevector& state, int a, int b, double theta);  // exp(-i theta/2 Z_a Z_b)

/// Projective Z measurement of qubit q; collapses and renormalises the state.
int measure_qubit(Statevector& state, int q, std::mt19937_64& rng);
/// Probability that qubit q reads 1.
double probability_one(const Statevector& state, int q);

}  // namespace labs_qaoa
