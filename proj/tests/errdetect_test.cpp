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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "labs/compiler.hpp"
#include "labs/core.hpp"
#include "labs/energy_table.hpp"
#include "labs/errdetect.hpp"
#include "oracles.hpp"

namespace labs_qaoa {
namespace {

CheckedCircuit checked_phase(int n, int m, double gamma = 0.07, std::uint64_t seed = 1) {
    return insert_checks(compile_phase(enumerate_terms(n), gamma, seed), m);
}

TEST(InsertChecks, SingleSplitWrapsEverything) {
    const Circuit base = compile_phase(enumerate_terms(7), 0.1, 3);
    const CheckedCircuit c = insert_checks(base, 1);
    ASSERT_EQ(c.splits.size(), 1U);
    EXPECT_EQ(c.splits[0].base_two_qubit, base.metadata.two_qubit_count);
    EXPECT_EQ(c.splits[0].restore_in, 0U);
    EXPECT_EQ(c.splits[0].restore_out, 0U);
    const Circuit flat = c.flatten();
    EXPECT_EQ(flat.n_ancilla, 2);
    EXPECT_NO_THROW(flat.validate());
    EXPECT_EQ(std::count_if(flat.gates.begin(), flat.gates.end(), [](const Gate& g) { return g.kind == GateKind::measure; }),
              2);
}

TEST(InsertChecks, SplitsAreBalanced) {
    for (int n = 6; n <= 14; ++n) {
        const Circuit base = compile_phase(enumerate_terms(n), 0.1, 0);
        for (int m : {2, 3, 5}) {
            const CheckedCircuit c = insert_checks(base, m);
            ASSERT_EQ(c.splits.size(), static_cast<std::size_t>(m));
            long long lo = c.splits[0].base_two_qubit;
            long long hi = lo;
            long long total = 0;
            for (const auto& s : c.splits) {
                lo = std::min(lo, s.base_two_qubit);
                hi = std::max(hi, s.base_two_qubit);
                total += s.base_two_qubit;
            }
            EXPECT_LE(hi - lo, 1) << "N=" << n << " m=" << m;
            EXPECT_EQ(total, base.metadata.two_qubit_count);
        }
    }
}

TEST(InsertChecks, Errors) {
    const Circuit base = compile_phase(enumerate_terms(3), 0.1, 0);  // one RZZ
    EXPECT_THROW(insert_checks(base, 0), std::invalid_argument);
    EXPECT_THROW(insert_checks(base, 2), std::invalid_argument);
    EXPECT_NO_THROW(insert_checks(base, 1));
}

TEST(InsertChecks, SplitsAreDiagonalAndComposeToPhase) {
    for (int n : {5, 7}) {
        const double gamma = 0.29;
        const CheckedCircuit c = checked_phase(n, 3, gamma);
        Eigen::MatrixXcd product = Eigen::MatrixXcd::Identity(1 << n, 1 << n);
        for (int k = 0; k < c.m; ++k) {
            const auto u = oracle::circuit_unitary(n, c.splits[static_cast<std::size_t>(k)].gates);
            const auto diag = split_diagonal(c, k);
            for (Eigen::Index x = 0; x < u.rows(); ++x) {
                for (Eigen::Index y = 0; y < u.cols(); ++y) {
                    const Amplitude want = x == y ? diag[static_cast<std::size_t>(x)] : Amplitude{};
                    EXPECT_LT(std::abs(u(x, y) - want), 1e-10);
                }
            }
            product = u * product;
        }
        EXPECT_LT(oracle::matrix_distance_up_to_phase(product, oracle::phase_matrix(n, gamma)), 1e-10);
    }
}

TEST(Syndrome, NoiselessIsAllZero) {
    for (int n = 4; n <= 8; ++n) {
        for (int m = 1; m <= 3; ++m) {
            const CheckedCircuit c = checked_phase(n, m, 0.13 * n);
            for (std::uint64_t seed = 0; seed < 5; ++seed) {
                const auto s = checked_syndrome(c, {}, seed);
                ASSERT_EQ(s.size(), 2U * static_cast<std::size_t>(m));
                for (int b : s) {
                    EXPECT_EQ(b, 0) << "N=" << n << " m=" << m;
                }
            }
        }
    }
}

// Position in flatten().gates roughly halfway through split k, at a point
// where the CNOT frame is the identity.
std::size_t mid_split(const CheckedCircuit& c, int k) {
    const auto& clean = c.splits[static_cast<std::size_t>(k)].clean_positions;
    return c.split_offset(k) + static_cast<std::size_t>(clean[clean.size() / 2]);
}

TEST(Syndrome, ForcedPaulisHitTheRightCheck) {
    const CheckedCircuit c = checked_phase(8, 3);
    for (int k = 0; k < 3; ++k) {
        for (int q : {0, 3, 7}) {
            const std::size_t pos = mid_split(c, k);
            const Injection x{pos, q, Pauli::x};
            const Injection z{pos, q, Pauli::z};
            const Injection y{pos, q, Pauli::y};
            auto sx = checked_syndrome(c, std::span(&x, 1), 4);
            auto sz = checked_syndrome(c, std::span(&z, 1), 4);
            auto sy = checked_syndrome(c, std::span(&y, 1), 4);
            for (int j = 0; j < 3; ++j) {
                const int zbit = 2 * j;
                const int xbit = 2 * j + 1;
                EXPECT_EQ(sx[zbit], j == k ? 1 : 0);
                EXPECT_EQ(sx[xbit], 0);
                EXPECT_EQ(sz[zbit], 0);
                EXPECT_EQ(sz[xbit], j == k ? 1 : 0);
                EXPECT_EQ(sy[zbit], j == k ? 1 : 0);
                EXPECT_EQ(sy[xbit], j == k ? 1 : 0);
            }
        }
    }
}

TEST(Syndrome, EvenWeightCanEscape) {
    const CheckedCircuit c = checked_phase(8, 2);
    const std::size_t pos = mid_split(c, 0);
    const std::vector<Injection> pair{{pos, 1, Pauli::x}, {pos, 5, Pauli::x}};
    const auto s = checked_syndrome(c, pair, 0);
    EXPECT_TRUE(std::all_of(s.begin(), s.end(), [](int b) { return b == 0; }));
}

TEST(DetectionTheorem, ExhaustiveSinglePaulis) {
    for (int n : {5, 8}) {
        for (int m : {1, 2, 3}) {
            const DetectionReport r = detection_theorem_check(checked_phase(n, m), 0);
            EXPECT_GT(r.injections, 0);
            EXPECT_EQ(r.detected, r.injections) << "N=" << n << " m=" << m;
        }
    }
}

TEST(DetectionTheorem, RandomTrialsAtN8) {
    const DetectionReport r = detection_theorem_check(checked_phase(8, 2), 1000, 11);
    EXPECT_EQ(r.injections, 1000);
    EXPECT_EQ(r.rate(), 1.0);
}

TEST(DetectionTheorem, NoInjectionsNoDetections) {
    const DetectionReport r = detection_theorem_check(checked_phase(6, 2), 0, 1);
    EXPECT_EQ(r.injections, 0);
    EXPECT_EQ(r.detected, 0);
    EXPECT_EQ(r.rate(), 0.0);
}

TEST(NoiseModel, Validation) {
    NoiseModel nm;
    EXPECT_NO_THROW(nm.validate());
    nm.p2 = -0.1;
    EXPECT_THROW(nm.validate(), std::invalid_argument);
    nm.p2 = 0.1;
    nm.wx = nm.wy = nm.wz = 0.0;
    EXPECT_THROW(nm.validate(), std::invalid_argument);
    nm.wx = -1.0;
    nm.wy = 2.0;
    EXPECT_THROW(nm.validate(), std::invalid_argument);
}

double exact_mean_mf(int n, double beta, double gamma, std::vector<double>* probs = nullptr) {
    const Eigen::VectorXcd psi = oracle::qaoa_state(n, {beta}, {gamma});
    double acc = 0.0;
    for (Eigen::Index x = 0; x < psi.size(); ++x) {
        const double pr = std::norm(psi(x));
        acc += pr * n * n / (2.0 * static_cast<double>(oracle::energy(n, static_cast<std::uint64_t>(x))));
        if (probs != nullptr) {
            probs->push_back(pr);
        }
    }
    return acc;
}

TEST(SimulateNoisy, NoiselessKeepsEverythingAndMatchesIdeal) {
    const int n = 7;
    const double beta = -0.16;
    const double gamma = 0.6 / n;
    const CheckedCircuit c = checked_phase(n, 3, gamma);
    const EnergyTable t = build_energy_table(n);
    NoiseModel nm;
    nm.p2 = 0.0;
    NoisySimOptions opts;
    opts.beta = beta;
    opts.keep_shots = true;
    const long long shots = 20000;
    for (bool gate_level : {false, true}) {
        opts.force_gate_level = gate_level;
        const PostSelectionStats st = simulate_noisy(c, nm, gate_level ? 2000 : shots, t, opts);
        EXPECT_EQ(st.ratio, 1.0);
        EXPECT_EQ(st.shots_kept, st.shots_total);
        EXPECT_EQ(st.mf_kept, st.mf_all);

        std::vector<double> probs;
        const double mean = exact_mean_mf(n, beta, gamma, &probs);
        std::vector<double> hist(probs.size(), 0.0);
        for (const auto& s : st.shots) {
            hist[static_cast<std::size_t>(s.bitstring)] += 1.0 / static_cast<double>(st.shots_total);
        }
        double tv = 0.0;
        double spread = 0.0;
        double var_mf = 0.0;
        for (std::size_t x = 0; x < probs.size(); ++x) {
            tv += 0.5 * std::abs(hist[x] - probs[x]);
            spread += 0.5 * std::sqrt(probs[x] * (1 - probs[x]) / static_cast<double>(st.shots_total));
            const double f = n * n / (2.0 * static_cast<double>(t.energies[x]));
            var_mf += probs[x] * (f - mean) * (f - mean);
        }
        EXPECT_LT(tv, spread + 3.0 / std::sqrt(static_cast<double>(st.shots_total))) << "gate_level=" << gate_level;
        EXPECT_NEAR(st.mf_all, mean, 4 * std::sqrt(var_mf / static_cast<double>(st.shots_total)));
    }
}

TEST(SimulateNoisy, RatioBoundedByErrorFreeProbability) {
    const int n = 8;
    const CheckedCircuit c = checked_phase(n, 3, 0.6 / n);
    long long sites = 0;
    for (const auto& s : c.splits) {
        for (const auto& g : s.gates) {
            sites += g.arity() == 2 ? 1 : 0;
        }
    }
    NoiseModel nm;
    nm.p2 = 5e-3;
    nm.seed = 3;
    const long long shots = 4000;
    const PostSelectionStats st = simulate_noisy(c, nm, shots, build_energy_table(n));
    const double clean = std::pow(1.0 - nm.p2, static_cast<double>(sites));
    EXPECT_GE(st.ratio, clean - 4 * std::sqrt(clean * (1 - clean) / shots));
    EXPECT_LT(st.ratio, 1.0);
    EXPECT_EQ(st.detections_per_check.size(), 6U);
    EXPECT_LE(st.shots_kept, st.shots_total);
    EXPECT_DOUBLE_EQ(st.ratio, static_cast<double>(st.shots_kept) / shots);
}

TEST(SimulateNoisy, FastPathAgreesWithGateLevel) {
    const int n = 7;
    const CheckedCircuit c = checked_phase(n, 2, 0.6 / n);
    const EnergyTable t = build_energy_table(n);
    NoiseModel nm;
    nm.p2 = 0.02;
    NoisySimOptions opts;
    opts.beta = -0.16;
    const long long shots = 3000;
    nm.seed = 1;
    const PostSelectionStats fast = simulate_noisy(c, nm, shots, t, opts);
    opts.force_gate_level = true;
    nm.seed = 2;
    const PostSelectionStats slow = simulate_noisy(c, nm, shots, t, opts);
    const double r = 0.5 * (fast.ratio + slow.ratio);
    EXPECT_NEAR(fast.ratio, slow.ratio, 4 * std::sqrt(2 * r * (1 - r) / shots));
    EXPECT_NEAR(fast.mf_all, slow.mf_all, 0.1);
}

TEST(SimulateNoisy, PostSelectionHelpsAtN10) {
    const int n = 10;
    const CheckedCircuit c = checked_phase(n, 3, 0.6 / n);
    const EnergyTable t = build_energy_table(n);
    NoisySimOptions opts;
    opts.beta = -0.16;
    int wins = 0;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        NoiseModel nm;
        nm.seed = seed;
        const PostSelectionStats st = simulate_noisy(c, nm, 5000, t, opts);
        wins += st.mf_kept >= st.mf_all ? 1 : 0;
    }
    EXPECT_EQ(wins, 3);
}

TEST(SimulateNoisy, RatioDecaysWithN) {
    double prev = 1.0;
    for (int n = 7; n <= 10; ++n) {
        const CheckedCircuit c = checked_phase(n, 3, 0.6 / n);
        const EnergyTable t = build_energy_table(n);
        double ratio = 0.0;
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            NoiseModel nm;
            nm.seed = seed;
            ratio += simulate_noisy(c, nm, 2000, t).ratio / 3.0;
        }
        EXPECT_LE(ratio, prev) << "N=" << n;
        prev = ratio;
    }
}

TEST(SimulateNoisy, NoisyChecksLowerTheRatio) {
    const int n = 8;
    const CheckedCircuit c = checked_phase(n, 3, 0.6 / n);
    const EnergyTable t = build_energy_table(n);
    NoiseModel nm;
    nm.p2 = 0.01;
    nm.seed = 5;
    const double quiet = simulate_noisy(c, nm, 3000, t).ratio;
    nm.noisy_checks = true;
    const double loud = simulate_noisy(c, nm, 3000, t).ratio;
    EXPECT_LT(loud, quiet);
}

TEST(SimulateNoisy, Deterministic) {
    const CheckedCircuit c = checked_phase(7, 2);
    const EnergyTable t = build_energy_table(7);
    NoiseModel nm;
    nm.p2 = 0.01;
    nm.seed = 9;
    NoisySimOptions opts;
    opts.keep_shots = true;
    const auto a = simulate_noisy(c, nm, 500, t, opts);
    const auto b = simulate_noisy(c, nm, 500, t, opts);
    ASSERT_EQ(a.shots.size(), b.shots.size());
    for (std::size_t i = 0; i < a.shots.size(); ++i) {
        EXPECT_EQ(a.shots[i].bitstring, b.shots[i].bitstring);
        EXPECT_EQ(a.shots[i].syndrome, b.shots[i].syndrome);
    }
    EXPECT_EQ(a.mf_all, b.mf_all);
}

TEST(SimulateNoisy, Errors) {
    const CheckedCircuit c = checked_phase(6, 2);
    EXPECT_THROW(simulate_noisy(c, NoiseModel{}, 10, build_energy_table(7)), std::invalid_argument);
    EXPECT_THROW(simulate_noisy(c, NoiseModel{}, 0, build_energy_table(6)), std::invalid_argument);
}

// t2 written directly from its defining sum, with p_0 = 1 and 1-based p_i.
double t2_reference(double t0, const std::vector<double>& p) {
    const std::size_t m = p.size();
    auto pi = [&](std::size_t i) { return i == 0 ? 1.0 : p[i - 1]; };
    double all = 1.0;
    for (double v : p) {
        all *= v;
    }
    double sum = 0.0;
    for (std::size_t i = 1; i <= m - 1; ++i) {
        double prefix = 1.0;
        for (std::size_t j = 0; j + 1 <= i; ++j) {
            prefix *= pi(j);
        }
        sum += prefix * (1 - pi(i)) * static_cast<double>(i) / static_cast<double>(m);
    }
    double tail = 1.0;
    for (std::size_t k = 1; k + 1 <= m; ++k) {
        tail *= pi(k);
    }
    return t0 / all * (sum + tail);
}

TEST(TimeModels, Examples) {
    const std::vector<double> ones{1.0, 1.0, 1.0, 1.0};
    const TimeModel a = avg_time_models(2.5, ones);
    EXPECT_EQ(a.t1, 2.5);
    EXPECT_EQ(a.t2, 2.5);

    const std::vector<double> one{0.7};
    const TimeModel b = avg_time_models(1.0, one);
    EXPECT_DOUBLE_EQ(b.t1, 1.0 / 0.7);
    EXPECT_DOUBLE_EQ(b.t2, b.t1);

    const std::vector<double> three{0.9, 0.9, 0.9};
    const TimeModel c = avg_time_models(1.0, three);
    EXPECT_DOUBLE_EQ(c.t1, 1.0 / 0.729);
    EXPECT_LT(c.t2, c.t1);
    EXPECT_NEAR(c.t2, t2_reference(1.0, three), 1e-14);
    // 1/0.729 * (0.1/3 + 0.9*0.1*2/3 + 0.81)
    EXPECT_NEAR(c.t2, (0.1 / 3 + 0.06 + 0.81) / 0.729, 1e-14);
}

TEST(TimeModels, EarlyStoppingNeverCostsMore) {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> len(1, 8);
    for (int t = 0; t < 10000; ++t) {
        std::vector<double> p(static_cast<std::size_t>(len(rng)));
        for (auto& v : p) {
            v = 1.0 - u(rng);  // (0, 1]
        }
        const double t0 = 0.1 + 10 * u(rng);
        const TimeModel tm = avg_time_models(t0, p);
        ASSERT_FALSE(tm.infinite);
        EXPECT_LE(tm.t2, tm.t1 * (1 + 1e-12));
        EXPECT_NEAR(tm.t2, t2_reference(t0, p), 1e-9 * tm.t1);
    }
}

TEST(TimeModels, ZeroProbabilityIsInfinite) {
    const std::vector<double> p{0.5, 0.0, 0.9};
    const TimeModel tm = avg_time_models(1.0, p);
    EXPECT_TRUE(tm.infinite);
    EXPECT_TRUE(std::isinf(tm.t1));
    EXPECT_THROW(avg_time_models(1.0, std::vector<double>{}), std::invalid_argument);
    EXPECT_THROW(avg_time_models(1.0, std::vector<double>{1.2}), std::invalid_argument);
}

TEST(Symmetry, LabsHamiltonianCommutesWithBothParities) {
    for (int n = 2; n <= 16; ++n) {
        EXPECT_TRUE(symmetry_commutation_check(enumerate_terms(n))) << "N=" << n;
    }
}

TEST(Symmetry, NEquals3DependsOnEndParity) {
    const ProblemInstance three = enumerate_terms(3);
    ASSERT_TRUE(three.four_body.empty());
    ASSERT_EQ(three.two_body.size(), 1U);
    EXPECT_EQ(three.two_body[0], (std::array<int, 2>{1, 3}));
    EXPECT_TRUE(symmetry_commutation_check(three));
}

TEST(Symmetry, OddTermIsCaught) {
    auto terms = enumerate_terms(6).terms();
    terms.push_back({{2, 3, 5}, 1});
    EXPECT_FALSE(symmetry_commutation_check(6, terms));
    auto single = enumerate_terms(5).terms();
    single.push_back({{4}, 1});
    EXPECT_FALSE(symmetry_commutation_check(5, single));
}

TEST(Pauli, Characters) {
    EXPECT_EQ(to_char(Pauli::x), 'X');
    EXPECT_EQ(to_char(Pauli::y), 'Y');
    EXPECT_EQ(to_char(Pauli::z), 'Z');
}

}  // namespace
}  // namespace labs_qaoa
