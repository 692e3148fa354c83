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
#include <iosfwd>
#include <vector>

#include "labs/core.hpp"

namespace labs_qaoa {

/// Number of basis states sharing one energy value.
struct EnergyLevel {
    std::int64_t energy = 0;
    std::uint64_t degeneracy = 0;
};

/// Sidelobe energies of all 2^N bitstrings, indexed by BasisIndex.
struct EnergyTable {
    int n = 0;
    std::vector<std::int64_t> energies;
    std::int64_t min_energy = 0;
    std::int64_t max_energy = 0;
    std::vector<BasisIndex> optimal_indices;  // ascending

    [[nodiscard]] std::uint64_t size() const { return energies.size(); }
    /// Distinct energies, ascending, with their multiplicities.
    [[nodiscard]] std::vector<EnergyLevel> levels() const;
    /// |optimal| / 2^N, the success probability of a uniform random guess.
    [[nodiscard]] double random_guess_probability() const;
};

/// Largest N for which a full table may be requested at all (the memory
/// budget may impose a tighter limit).
inline constexpr int kMaxTableN = 32;

/// Exhaustive table via Gray-code enumeration with O(N) incremental updates.
/// The index space is split into fixed blocks, so the result is identical
/// for any worker count.
EnergyTable build_energy_table(int n, int workers = 1);

/// Binary export: "LABS", u16 version (1), u16 N, then 2^N little-endian i64.
void write_energy_table_binary(const EnergyTable& table, std::ostream& out);
EnergyTable read_energy_table_binary(std::istream& in);

}  // namespace labs_qaoa
