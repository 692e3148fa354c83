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

#include "labs/energy_table.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <istream>
#include <limits>
#include <map>
#include <ostream>

#include "labs/parallel.hpp"

namespace labs_qaoa {

namespace {

constexpr std::uint16_t kTableFormatVersion = 1;

// Fills energies[first, first + 2^low_bits) where first has its low bits
// clear. Walks the low bits in Gray-code order.
void fill_block(int n, int low_bits, BasisIndex first, std::int64_t* energies) {
    std::array<int, kMaxSequenceLength> spins{};
    std::array<int, kMaxSequenceLength> autocorr{};
    for (int j = 0; j < n; ++j) {
        spins[static_cast<std::size_t>(j)] = ((first >> j) & 1U) ? -1 : 1;
    }
    std::int64_t energy = 0;
    for (int k = 1; k < n; ++k) {
        int a = 0;
        for (int i = 0; i + k < n; ++i) {
            a += spins[static_cast<std::size_t>(i)] * spins[static_cast<std::size_t>(i + k)];
        }
        autocorr[static_cast<std::size_t>(k)] = a;
        energy += static_cast<std::int64_t>(a) * a;
    }
    energies[0] = energy;
    BasisIndex gray = 0;
    const BasisIndex count = BasisIndex{1} << low_bits;
    for (BasisIndex r = 1; r < count; ++r) {
        const int i = std::countr_zero(r);
        gray ^= BasisIndex{1} << i;
        const int si = spins[static_cast<std::size_t>(i)];
        for (int k = 1; k < n; ++k) {
            int neighbours = 0;
            if (i + k < n) {
                neighbours += spins[static_cast<std::size_t>(i + k)];
            }
            if (i - k >= 0) {
                neighbours += spins[static_cast<std::size_t>(i - k)];
            }
            const int da = -2 * si * neighbours;
            int& a = autocorr[static_cast<std::size_t>(k)];
            energy += static_cast<std::int64_t>(da) * (2 * a + da);
            a += da;
        }
        spins[static_cast<std::size_t>(i)] = -si;
        energies[gray] = energy;
    }
}

void write_u16(std::ostream& out, std::uint16_t v) {
    const char bytes[2] = {static_cast<char>(v & 0xFF), static_cast<char>(v >> 8)};
    out.write(bytes, 2);
}

std::uint16_t read_u16(std::istream& in) {
    unsigned char bytes[2] = {0, 0};
    in.read(reinterpret_cast<char*>(bytes), 2);
    return static_cast<std::uint16_t>(bytes[0] | (bytes[1] << 8));
}

}  // namespace

std::vector<EnergyLevel> EnergyTable::levels() const {
    std::map<std::int64_t, std::uint64_t> counts;
    for (auto e : energies) {
        ++counts[e];
    }
    std::vector<EnergyLevel> out;
    out.reserve(counts.size());
    for (auto [e, c] : counts) {
        out.push_back({e, c});
    }
    return out;
}

double EnergyTable::random_guess_probability() const {
    return static_cast<double>(optimal_indices.size()) / static_cast<double>(energies.size());
}

EnergyTable build_energy_table(int n, int workers) {
    if (n < 1) {
        throw std::invalid_argument("energy table requires N >= 1");
    }
    if (n > kMaxTableN) {
        throw ResourceError("energy table for N=" + std::to_string(n) + " exceeds the hard limit N <= " +
                            std::to_string(kMaxTableN));
    }
    const std::uint64_t size = std::uint64_t{1} << n;
    check_memory_budget(size * sizeof(std::int64_t), "energy table");

    EnergyTable table;
    table.n = n;
    table.energies.assign(size, 0);
    const int low_bits = std::min(n, 16);
    const std::uint64_t blocks = size >> low_bits;
    parallel_chunks(blocks, workers, [&](std::size_t b) {
        const BasisIndex first = static_cast<BasisIndex>(b) << low_bits;
        fill_block(n, low_bits, first, table.energies.data() + first);
    });

    table.min_energy = *std::min_element(table.energies.begin(), table.energies.end());
    table.max_energy = *std::max_element(table.energies.begin(), table.energies.end());
    for (std::uint64_t x = 0; x < size; ++x) {
        if (table.energies[x] == table.min_energy) {
            table.optimal_indices.push_back(x);
        }
    }
    return table;
}

void write_energy_table_binary(const EnergyTable& table, std::ostream& out) {
    out.write("LABS", 4);
    write_u16(out, kTableFormatVersion);
    write_u16(out, static_cast<std::uint16_t>(table.n));
    for (auto e : table.energies) {
        auto u = static_cast<std::uint64_t>(e);
        char bytes[8];
        for (int b = 0; b < 8; ++b) {
            bytes[b] = static_cast<char>((u >> (8 * b)) & 0xFF);
        }
        out.write(bytes, 8);
    }
}

EnergyTable read_energy_table_binary(std::istream& in) {
    char magic[4] = {};
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != "LABS") {
        throw std::runtime_error("not a LABS energy table (bad magic)");
    }
    const auto version = read_u16(in);
    if (version != kTableFormatVersion) {
        throw std::runtime_error("unsupported energy table version " + std::to_string(version));
    }
    const int n = read_u16(in);
    if (n < 1 || n > kMaxTableN) {
        throw std::runtime_error("energy table header has invalid N");
    }
    EnergyTable table;
    table.n = n;
    const std::uint64_t size = std::uint64_t{1} << n;
    table.energies.resize(size);
    for (std::uint64_t x = 0; x < size; ++x) {
        unsigned char bytes[8];
        in.read(reinterpret_cast<char*>(bytes), 8);
        if (!in) {
            throw std::runtime_error("energy table truncated");
        }
        std::uint64_t u = 0;
        for (int b = 7; b >= 0; --b) {
            u = (u << 8) | bytes[b];
        }
        table.energies[x] = static_cast<std::int64_t>(u);
    }
    table.min_energy = *std::min_element(table.energies.begin(), table.energies.end());
    table.max_energy = *std::max_element(table.energies.begin(), table.energies.end());
    for (std::uint64_t x = 0; x < size; ++x) {
        if (table.energies[x] == table.min_energy) {
            table.optimal_indices.push_back(x);
        }
    }
    return table;
}

}  // namespace labs_qaoa
