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
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace labs_qaoa {

/// Raised when a request would exceed the configured memory budget or a
/// hard size limit. Carries a human-readable advisory.
class ResourceError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Bitstring index over N spins. Bit j (little-endian) is qubit j and
/// sequence position j+1; bit value 0 maps to spin +1, bit value 1 to -1.
using BasisIndex = std::uint64_t;

inline constexpr int kMaxSequenceLength = 62;

/// A +/-1 spin configuration s_1..s_N. Positions are 0-based in the API.
class SpinSequence {
   public:
    SpinSequence() = default;
    explicit SpinSequence(std::vector<int> spins);

    static SpinSequence from_index(int n, BasisIndex index);
    /// Parses "++-+" style text; any character other than '+' or '-' is an error.
    static SpinSequence from_string(std::string_view text);
    static SpinSequence all_up(int n);

    [[nodiscard]] int size() const { return static_cast<int>(spins_.size()); }
    [[nodiscard]] int operator[](int i) const { return spins_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] std::span<const std::int8_t> spins() const { return spins_; }
    [[nodiscard]] BasisIndex to_index() const;
    [[nodiscard]] std::string to_string() const;

    void flip(int i) { spins_[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(-spins_[static_cast<std::size_t>(i)]); }

    friend bool operator==(const SpinSequence&, const SpinSequence&) = default;
    friend auto operator<=>(const SpinSequence&, const SpinSequence&) = default;

   private:
    std::vector<std::int8_t> spins_;
};

/// A_k(s) = sum_{i=1}^{N-k} s_i s_{i+k}, for 1 <= k <= N-1.
std::int64_t autocorrelation(const SpinSequence& seq, int k);

/// All autocorrelations; element k-1 holds A_k.
std::vector<std::int64_t> autocorrelations(const SpinSequence& seq);

/// Sidelobe energy sum_k A_k^2.
std::int64_t sidelobe_energy(const SpinSequence& seq);

/// Merit factor N^2 / (2E). Throws for N <= 1, where E = 0.
double merit_factor(const SpinSequence& seq);
double merit_factor(int n, std::int64_t energy);

/// One interaction of the cost Hamiltonian. Indices are 1-based sequence
/// positions in strictly increasing order.
struct Term {
    std::vector<int> indices;
    int coefficient = 1;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Two-body and four-body couplings of the LABS cost Hamiltonian
///   H_C = 2 sum Z_i Z_{i+t} Z_{i+k} Z_{i+k+t} + sum Z_i Z_{i+2k}.
struct ProblemInstance {
    int n = 0;
    std::vector<std::array<int, 2>> two_body;
    std::vector<std::array<int, 4>> four_body;

    /// N(N-1)/2, so that E = constant_offset + 2 H_C.
    [[nodiscard]] std::int64_t constant_offset() const {
        return static_cast<std::int64_t>(n) * (n - 1) / 2;
    }
    /// Flattened term list: four-body terms (coefficient 2) then two-body (coefficient 1).
    [[nodiscard]] std::vector<Term> terms() const;
};

ProblemInstance enumerate_terms(int n);

/// 2 * sum(four-body products) + sum(two-body products).
std::int64_t hamiltonian_value(const ProblemInstance& instance, const SpinSequence& seq);

/// Evaluates an arbitrary term list on a basis index (bit convention above).
std::int64_t evaluate_terms(std::span<const Term> terms, BasisIndex index);

/// H_C value implied by a sidelobe energy.
inline std::int64_t hc_from_energy(int n, std::int64_t energy) {
    return (energy - static_cast<std::int64_t>(n) * (n - 1) / 2) / 2;
}

// ---------------------------------------------------------------------------
// D4 symmetry.

/// Element of the order-8 group generated by global negation, reversal and
/// the alternating flip s_i -> (-1)^i s_i (1-based i). Applied as
/// negate(alternate(reverse(s))).
struct SymmetryAction {
    bool negate = false;
    bool alternate = false;
    bool reverse = false;

    static std::array<SymmetryAction, 8> group();
};

SpinSequence apply_symmetry(const SpinSequence& seq, SymmetryAction g);
BasisIndex apply_symmetry(int n, BasisIndex index, SymmetryAction g);

/// Distinct images of seq under the group, sorted.
std::vector<SpinSequence> symmetry_orbit(const SpinSequence& seq);

/// Skew-symmetry for odd N = 2k-1: s_{k+l} = (-1)^l s_{k-l}, l = 1..k-1.
/// Always false for even N.
bool is_skew_symmetric(const SpinSequence& seq);

// ---------------------------------------------------------------------------
// Incremental single-flip updates.

/// Energy change from flipping position i, without modifying anything.
/// `autocorr[k-1]` must hold A_k for the current spins.
std::int64_t flip_delta(std::span<const std::int8_t> spins, std::span<const std::int64_t> autocorr, int i);

/// Flips position i, updates autocorrelations in place and returns the
/// energy change. O(N).
std::int64_t apply_flip(std::span<std::int8_t> spins, std::span<std::int64_t> autocorr, int i);

struct FlipResult {
    std::int64_t delta_energy = 0;
    std::vector<std::int64_t> autocorr;
};

/// Value-returning form of apply_flip on a sequence and its autocorrelations.
FlipResult incremental_flip_delta(const SpinSequence& seq, std::span<const std::int64_t> autocorr, int i);

// ---------------------------------------------------------------------------
// Text forms.

std::string index_to_hex(int n, BasisIndex index);
BasisIndex hex_to_index(int n, std::string_view hex);

}  // namespace labs_qaoa
