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

#include "labs/core.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace labs_qaoa {

namespace {

void require_valid_length(int n) {
    if (n < 1 || n > kMaxSequenceLength) {
        throw std::invalid_argument("sequence length must be in [1, " + std::to_string(kMaxSequenceLength) +
                                    "], got " + std::to_string(n));
    }
}

BasisIndex low_mask(int n) {
    return n >= 64 ? ~BasisIndex{0} : ((BasisIndex{1} << n) - 1);
}

}  // namespace

SpinSequence::SpinSequence(std::vector<int> spins) {
    require_valid_length(static_cast<int>(spins.size()));
    spins_.reserve(spins.size());
    for (int s : spins) {
        if (s != 1 && s != -1) {
            throw std::invalid_argument("spin values must be +1 or -1");
        }
        spins_.push_back(static_cast<std::int8_t>(s));
    }
}

SpinSequence SpinSequence::from_index(int n, BasisIndex index) {
    require_valid_length(n);
    if ((index & ~low_mask(n)) != 0) {
        throw std::invalid_argument("basis index has bits beyond sequence length");
    }
    SpinSequence out;
    out.spins_.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        out.spins_[static_cast<std::size_t>(j)] = ((index >> j) & 1U) ? -1 : 1;
    }
    return out;
}

SpinSequence SpinSequence::from_string(std::string_view text) {
    std::vector<int> spins;
    spins.reserve(text.size());
    for (char c : text) {
        if (c == '+') {
            spins.push_back(1);
        } else if (c == '-') {
            spins.push_back(-1);
        } else {
            throw std::invalid_argument(std::string("invalid spin character '") + c + "'");
        }
    }
    return SpinSequence(std::move(spins));
}

SpinSequence SpinSequence::all_up(int n) {
    return from_index(n, 0);
}

BasisIndex SpinSequence::to_index() const {
    BasisIndex index = 0;
    for (std::size_t j = 0; j < spins_.size(); ++j) {
        if (spins_[j] < 0) {
            index |= BasisIndex{1} << j;
        }
    }
    return index;
}

std::string SpinSequence::to_string() const {
    std::string out;
    out.reserve(spins_.size());
    for (auto s : spins_) {
        out.push_back(s > 0 ? '+' : '-');
    }
    return out;
}

std::int64_t autocorrelation(const SpinSequence& seq, int k) {
    const int n = seq.size();
    if (k < 1 || k > n - 1) {
        throw std::invalid_argument("autocorrelation lag must be in [1, N-1]");
    }
    std::int64_t sum = 0;
    for (int i = 0; i + k < n; ++i) {
        sum += seq[i] * seq[i + k];
    }
    return sum;
}

std::vector<std::int64_t> autocorrelations(const SpinSequence& seq) {
    const int n = seq.size();
    std::vector<std::int64_t> out(static_cast<std::size_t>(std::max(n - 1, 0)));
    for (int k = 1; k < n; ++k) {
        out[static_cast<std::size_t>(k - 1)] = autocorrelation(seq, k);
    }
    return out;
}

std::int64_t sidelobe_energy(const SpinSequence& seq) {
    std::int64_t energy = 0;
    for (auto a : autocorrelations(seq)) {
        energy += a * a;
    }
    return energy;
}

double merit_factor(int n, std::int64_t energy) {
    if (n <= 1 || energy <= 0) {
        throw std::domain_error("merit factor is undefined for zero sidelobe energy (N <= 1)");
    }
    return static_cast<double>(n) * static_cast<double>(n) / (2.0 * static_cast<double>(energy));
}

double merit_factor(const SpinSequence& seq) {
    return merit_factor(seq.size(), sidelobe_energy(seq));
}

std::vector<Term> ProblemInstance::terms() const {
    std::vector<Term> out;
    out.reserve(four_body.size() + two_body.size());
    for (const auto& q : four_body) {
        out.push_back(Term{{q[0], q[1], q[2], q[3]}, 2});
    }
    for (const auto& t : two_body) {
        out.push_back(Term{{t[0], t[1]}, 1});
    }
    return out;
}

ProblemInstance enumerate_terms(int n) {
    if (n < 2) {
        throw std::invalid_argument("problem instance requires N >= 2");
    }
    require_valid_length(n);
    ProblemInstance inst;
    inst.n = n;
    for (int i = 1; i <= n - 3; ++i) {
        for (int t = 1; t <= (n - i - 1) / 2; ++t) {
            for (int k = t + 1; k <= n - i - t; ++k) {
                inst.four_body.push_back({i, i + t, i + k, i + k + t});
            }
        }
    }
    for (int i = 1; i <= n - 2; ++i) {
        for (int k = 1; k <= (n - i) / 2; ++k) {
            inst.two_body.push_back({i, i + 2 * k});
        }
    }
    return inst;
}

std::int64_t hamiltonian_value(const ProblemInstance& instance, const SpinSequence& seq) {
    if (instance.n != seq.size()) {
        throw std::invalid_argument("instance size does not match sequence length");
    }
    std::int64_t four = 0;
    for (const auto& q : instance.four_body) {
        four += seq[q[0] - 1] * seq[q[1] - 1] * seq[q[2] - 1] * seq[q[3] - 1];
    }
    std::int64_t two = 0;
    for (const auto& t : instance.two_body) {
        two += seq[t[0] - 1] * seq[t[1] - 1];
    }
    return 2 * four + two;
}

std::int64_t evaluate_terms(std::span<const Term> terms, BasisIndex index) {
    std::int64_t value = 0;
    for (const auto& term : terms) {
        BasisIndex mask = 0;
        for (int q : term.indices) {
            mask |= BasisIndex{1} << (q - 1);
        }
        const bool odd = (std::popcount(index & mask) & 1) != 0;
        value += odd ? -term.coefficient : term.coefficient;
    }
    return value;
}

std::array<SymmetryAction, 8> SymmetryAction::group() {
    std::array<SymmetryAction, 8> out{};
    for (int g = 0; g < 8; ++g) {
        out[static_cast<std::size_t>(g)] = SymmetryAction{(g & 1) != 0, (g & 2) != 0, (g & 4) != 0};
    }
    return out;
}

SpinSequence apply_symmetry(const SpinSequence& seq, SymmetryAction g) {
    return SpinSequence::from_index(seq.size(), apply_symmetry(seq.size(), seq.to_index(), g));
}

BasisIndex apply_symmetry(int n, BasisIndex index, SymmetryAction g) {
    BasisIndex x = index;
    if (g.reverse) {
        BasisIndex r = 0;
        for (int j = 0; j < n; ++j) {
            if ((x >> j) & 1U) {
                r |= BasisIndex{1} << (n - 1 - j);
            }
        }
        x = r;
    }
    if (g.alternate) {
        // Odd 1-based positions are even bit positions.
        x ^= 0x5555555555555555ULL & low_mask(n);
    }
    if (g.negate) {
        x ^= low_mask(n);
    }
    return x;
}

std::vector<SpinSequence> symmetry_orbit(const SpinSequence& seq) {
    std::set<SpinSequence> orbit;
    for (auto g : SymmetryAction::group()) {
        orbit.insert(apply_symmetry(seq, g));
    }
    return {orbit.begin(), orbit.end()};
}

bool is_skew_symmetric(const SpinSequence& seq) {
    const int n = seq.size();
    if (n % 2 == 0) {
        return false;
    }
    const int k = (n + 1) / 2;  // 1-based centre
    for (int l = 1; l <= k - 1; ++l) {
        const int sign = (l % 2 == 0) ? 1 : -1;
        if (seq[k + l - 1] != sign * seq[k - l - 1]) {
            return false;
        }
    }
    return true;
}

std::int64_t flip_delta(std::span<const std::int8_t> spins, std::span<const std::int64_t> autocorr, int i) {
    const int n = static_cast<int>(spins.size());
    const std::int64_t si = spins[static_cast<std::size_t>(i)];
    std::int64_t delta = 0;
    for (int k = 1; k < n; ++k) {
        std::int64_t neighbours = 0;
        if (i + k < n) {
            neighbours += spins[static_cast<std::size_t>(i + k)];
        }
        if (i - k >= 0) {
            neighbours += spins[static_cast<std::size_t>(i - k)];
        }
        if (neighbours == 0) {
            continue;
        }
        const std::int64_t a = autocorr[static_cast<std::size_t>(k - 1)];
        const std::int64_t da = -2 * si * neighbours;
        delta += da * (2 * a + da);
    }
    return delta;
}

std::int64_t apply_flip(std::span<std::int8_t> spins, std::span<std::int64_t> autocorr, int i) {
    const int n = static_cast<int>(spins.size());
#ifndef NDEBUG
    {
        std::vector<int> s(spins.begin(), spins.end());
        const auto fresh = autocorrelations(SpinSequence(s));
        if (!std::equal(fresh.begin(), fresh.end(), autocorr.begin())) {
            throw std::logic_error("stale autocorrelation cache passed to apply_flip");
        }
    }
#endif
    const std::int64_t si = spins[static_cast<std::size_t>(i)];
    std::int64_t delta = 0;
    for (int k = 1; k < n; ++k) {
        std::int64_t neighbours = 0;
        if (i + k < n) {
            neighbours += spins[static_cast<std::size_t>(i + k)];
        }
        if (i - k >= 0) {
            neighbours += spins[static_cast<std::size_t>(i - k)];
        }
        const std::int64_t da = -2 * si * neighbours;
        auto& a = autocorr[static_cast<std::size_t>(k - 1)];
        delta += da * (2 * a + da);
        a += da;
    }
    spins[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(-si);
    return delta;
}

FlipResult incremental_flip_delta(const SpinSequence& seq, std::span<const std::int64_t> autocorr, int i) {
    if (i < 0 || i >= seq.size()) {
        throw std::invalid_argument("flip position out of range");
    }
    if (static_cast<int>(autocorr.size()) != seq.size() - 1) {
        throw std::invalid_argument("autocorrelation array has wrong length");
    }
    std::vector<std::int8_t> spins(seq.spins().begin(), seq.spins().end());
    FlipResult out{0, {autocorr.begin(), autocorr.end()}};
    out.delta_energy = apply_flip(spins, out.autocorr, i);
    return out;
}

std::string index_to_hex(int n, BasisIndex index) {
    static constexpr char kDigits[] = "0123456789abcdef";
    const int width = std::max(1, (n + 3) / 4);
    std::string out(static_cast<std::size_t>(width), '0');
    for (int d = width - 1; d >= 0; --d) {
        out[static_cast<std::size_t>(d)] = kDigits[index & 0xF];
        index >>= 4;
    }
    return out;
}

BasisIndex hex_to_index(int n, std::string_view hex) {
    if (hex.starts_with("0x") || hex.starts_with("0X")) {
        hex.remove_prefix(2);
    }
    if (hex.empty() || hex.size() > 16) {
        throw std::invalid_argument("malformed hex bitstring");
    }
    BasisIndex value = 0;
    for (char c : hex) {
        int digit = 0;
        if (c >= '0' && c <= '9') {
            digit = c - '0';
        } else if (c >= 'a' && c <= 'f') {
            digit = c - 'a' + 10;
        } else if (c >= 'A' && c <= 'F') {
            digit = c - 'A' + 10;
        } else {
            throw std::invalid_argument("malformed hex bitstring");
        }
        value = (value << 4) | static_cast<BasisIndex>(digit);
    }
    if ((value & ~low_mask(n)) != 0) {
        throw std::invalid_argument("hex bitstring has bits beyond sequence length");
    }
    return value;
}

}  // namespace labs_qaoa
