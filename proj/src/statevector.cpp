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

#include <algorithm>
#include <array>
#include "labs/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "labs/parallel.hpp"

namespace labs_qaoa {

namespace {

constexpr std::size_t kBlock = std::size_t{1} << 14;
constexpr int kBlockBits = 14;

void require_qubit(const Statevector& s, int q) {
    if (q < 0 || q >= s.num_qubits()) {
        throw std::invalid_argument("qubit index " + std::to_string(q) + " out of range");
    }
}

}  // namespace

Statevector::Statevector(int num_qubits) : n_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxStatevectorQubits) {
        throw ResourceError("statevector qubit count must be in [1, " + std::to_string(kMaxStatevectorQubits) + "]");
    }
    const std::size_t size = std::size_t{1} << num_qubits;
    check_memory_budget(size * sizeof(Amplitude), "statevector");
    amps_.assign(size, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

double Statevector::norm_squared() const {
    double sum = 0.0;
    double comp = 0.0;
    for (const auto& a : amps_) {
        const double y = std::norm(a) - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

Statevector init_plus_state(int n) {
    Statevector s(n);
    const double amp = std::pow(2.0, -0.5 * n);
    for (auto& a : s.amplitudes()) {
        a = amp;
    }
    return s;
}

PhaseTable::PhaseTable(const EnergyTable& table, double gamma) {
    lut_.resize(static_cast<std::size_t>(table.max_energy) + 1);
    const std::int64_t offset = static_cast<std::int64_t>(table.n) * (table.n - 1) / 2;
    for (std::size_t e = 0; e < lut_.size(); ++e) {
        // E - offset is even for every reachable energy.
        const double hc = static_cast<double>(static_cast<std::int64_t>(e) - offset) / 2.0;
        lut_[e] = std::polar(1.0, -gamma * hc);
    }
}

void apply_phase(Statevector& state, const EnergyTable& table, double gamma, KernelOptions opts) {
    if (table.n != state.num_qubits()) {
        throw std::invalid_argument("energy table size does not match statevector");
    }
    if (gamma == 0.0) {
        return;
    }
    const PhaseTable phases(table, gamma);
    auto amps = state.amplitudes();
    const std::int64_t* energies = table.energies.data();
    const BlockRange range{amps.size(), kBlock};
    parallel_chunks(range.num_blocks(), opts.workers, [&](std::size_t b) {
        for (std::size_t x = range.begin(b); x < range.end(b); ++x) {
            amps[x] *= phases(energies[x]);
        }
    });
}

void apply_mixer(Statevector& state, double beta, KernelOptions opts) {
    if (beta == 0.0) {
        return;
    }
    const double c = std::cos(beta);
    const double s = std::sin(beta);
    auto amps = state.amplitudes();
    const int n = state.num_qubits();
    const std::size_t size = amps.size();

    auto rotate = [c, s](Amplitude& a0, Amplitude& a1) {
        const Amplitude x0 = a0;
        const Amplitude x1 = a1;
        // [[c, -is], [-is, c]]
        a0 = Amplitude{c * x0.real() + s * x1.imag(), c * x0.imag() - s * x1.real()};
        a1 = Amplitude{c * x1.real() + s * x0.imag(), c * x1.imag() - s * x0.real()};
    };

    if (size <= kBlock) {
        for (int j = 0; j < n; ++j) {
            const std::size_t h = std::size_t{1} << j;
            for (std::size_t base = 0; base < size; base += 2 * h) {
                for (std::size_t x = base; x < base + h; ++x) {
                    rotate(amps[x], amps[x + h]);
                }
            }
        }
        return;
    }

    // Low qubits: pairs stay inside an aligned block, so all of them are
    // applied per block in one sweep.
    const std::size_t blocks = size / kBlock;
    parallel_chunks(blocks, opts.workers, [&](std::size_t b) {
        Amplitude* blk = amps.data() + b * kBlock;
        for (int j = 0; j < kBlockBits; ++j) {
            const std::size_t h = std::size_t{1} << j;
            for (std::size_t base = 0; base < kBlock; base += 2 * h) {
                for (std::size_t x = base; x < base + h; ++x) {
                    rotate(blk[x], blk[x + h]);
                }
            }
        }
    });
    // High qubits: pair whole blocks b and b + 2^(j - kBlockBits).
    for (int j = kBlockBits; j < n; ++j) {
        const std::size_t hb = std::size_t{1} << (j - kBlockBits);
        parallel_chunks(blocks / 2, opts.workers, [&](std::size_t r) {
            const std::size_t b0 = ((r / hb) * 2 * hb) + (r % hb);
            Amplitude* lo = amps.data() + b0 * kBlock;
            Amplitude* hi = amps.data() + (b0 + hb) * kBlock;
            for (std::size_t x = 0; x < kBlock; ++x) {
                rotate(lo[x], hi[x]);
            }
        });
    }
}

void apply_single_qubit(Statevector& state, int q, const std::array<Amplitude, 4>& m) {
    require_qubit(state, q);
    auto amps = state.amplitudes();
    const std::size_t h = std::size_t{1} << q;
    for (std::size_t base = 0; base < amps.size(); base += 2 * h) {
        for (std::size_t x = base; x < base + h; ++x) {
            const Amplitude a0 = amps[x];
            const Amplitude a1 = amps[x + h];
            amps[x] = m[0] * a0 + m[1] * a1;
            amps[x + h] = m[2] * a0 + m[3] * a1;
        }
    }
}

void apply_h(Statevector& state, int q) {
    const double r = 1.0 / std::sqrt(2.0);
    apply_single_qubit(state, q, {r, r, r, -r});
}

void apply_x(Statevector& state, int q) {
    require_qubit(state, q);
    auto amps = state.amplitudes();
    const std::size_t h = std::size_t{1} << q;
    for (std::size_t base = 0; base < amps.size(); base += 2 * h) {
        for (std::size_t x = base; x < base + h; ++x) {
            std::swap(amps[x], amps[x + h]);
        }
    }
}

void apply_y(Statevector& state, int q) {
    const Amplitude i{0.0, 1.0};
    apply_single_qubit(state, q, {0.0, -i, i, 0.0});
}

void apply_z(Statevector& state, int q) {
    require_qubit(state, q);
    auto amps = state.amplitudes();
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t x = 0; x < amps.size(); ++x) {
        if (x & bit) {
            amps[x] = -amps[x];
        }
    }
}

void apply_rz(Statevector& state, int q, double theta) {
    require_qubit(state, q);
    const Amplitude p0 = std::polar(1.0, -theta / 2);
    const Amplitude p1 = std::polar(1.0, theta / 2);
    auto amps = state.amplitudes();
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t x = 0; x < amps.size(); ++x) {
        amps[x] *= (x & bit) ? p1 : p0;
    }
}

void apply_rx(Statevector& state, int q, double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    apply_single_qubit(state, q, {c, Amplitude{0, -s}, Amplitude{0, -s}, c});
}

void apply_cnot(Statevector& state, int control, int target) {
    require_qubit(state, control);
    require_qubit(state, target);
    if (control == target) {
        throw std::invalid_argument("CNOT control equals target");
    }
    auto amps = state.amplitudes();
    const std::size_t cb = std::size_t{1} << control;
    const std::size_t tb = std::size_t{1} << target;
    for (std::size_t x = 0; x < amps.size(); ++x) {
        if ((x & cb) && !(x & tb)) {
            std::swap(amps[x], amps[x | tb]);
        }
    }
}

void apply_cz(Statevector& state, int a, int b) {
    require_qubit(state, a);
    require_qubit(state, b);
    auto amps = state.amplitudes();
    const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
    for (std::size_t x = 0; x < amps.size(); ++x) {
        if ((x & mask) == mask) {
            amps[x] = -amps[x];
        }
    }
}

void apply_rzz(Statevector& state, int a, int b, double theta) {
    require_qubit(state, a);
    require_qubit(state, b);
    const Amplitude even = std::polar(1.0, -theta / 2);
    const Amplitude odd = std::polar(1.0, theta / 2);
    auto amps = state.amplitudes();
    for (std::size_t x = 0; x < amps.size(); ++x) {
        const bool parity = (((x >> a) ^ (x >> b)) & 1U) != 0;
        amps[x] *= parity ? odd : even;
    }
}

double probability_one(const Statevector& state, int q) {
    require_qubit(state, q);
    const auto amps = state.amplitudes();
    const std::size_t bit = std::size_t{1} << q;
    double p = 0.0;
    for (std::size_t x = 0; x < amps.size(); ++x) {
        if (x & bit) {
            p += std::norm(amps[x]);
        }
    }
    return p;
}

int measure_qubit(Statevector& state, int q, std::mt19937_64& rng) {
    const double p1 = std::clamp(probability_one(state, q), 0.0, 1.0);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const int outcome = uni(rng) < p1 ? 1 : 0;
    const double keep = outcome ? p1 : 1.0 - p1;
    const double scale = keep > 0 ? 1.0 / std::sqrt(keep) : 0.0;
    auto amps = state.amplitudes();
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t x = 0; x < amps.size(); ++x) {
        const bool one = (x & bit) != 0;
        if (one == (outcome == 1)) {
            amps[x] *= scale;
        } else {
            amps[x] = 0.0;
        }
    }
    return outcome;
}

}  // namespace labs_qaoa
