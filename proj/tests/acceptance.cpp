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

// Acceptance runner: one PASS/FAIL line per criterion.
//
// Usage: acceptance [criterion ...]   (no arguments runs all twelve)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "labs/analysis.hpp"
#include "labs/compiler.hpp"
#include "labs/errdetect.hpp"
#include "labs/minfind.hpp"
#include "labs/parallel.hpp"
#include "labs/qaoa.hpp"
#include "labs/schedules.hpp"
#include "labs/solvers.hpp"
#include "labs/sweep.hpp"
#include "oracles.hpp"

namespace {

using namespace labs_qaoa;

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

std::string fmt(double x, int precision = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    return buf;
}

// Shared FOURIER chains, keyed by (objective, N). Criteria 7 and 8 both use them.
class ChainCache {
   public:
    const std::vector<ScheduleFit>& get(ObjectiveKind kind, int n, int p_max) {
        auto& slot = cache_[{kind, n}];
        if (static_cast<int>(slot.fits.size()) < p_max) {
            slot.table = std::make_unique<EnergyTable>(build_energy_table(n));
            QaoaEvaluator ev(*slot.table);
            ScheduleSearchOptions so;
            so.seed = derive_seed(0, {static_cast<std::uint64_t>(n)});
            slot.fits = fourier_chain(ev, kind, p_max, so);
        }
        return slot.fits;
    }

   private:
    struct Slot {
        std::unique_ptr<EnergyTable> table;
        std::vector<ScheduleFit> fits;
    };
    std::map<std::pair<ObjectiveKind, int>, Slot> cache_;
};

ChainCache& chains() {
    static ChainCache c;
    return c;
}

// 1. Exhaustive search finds merit factor 8 at N = 24.
void criterion1(Verdict& v) {
    SolverConfig cfg;
    cfg.kind = SolverKind::exhaustive;
    cfg.fundamental_domain = false;
    const SolveResult r = solve_exhaustive(24, cfg);
    const double f = merit_factor(24, r.best_energy);
    v.detail << "N=24 E=" << r.best_energy << " F=" << fmt(f) << " evaluations=" << r.evaluations_total;
    v.require(r.best_energy == 36 && f == 8.0, "F == 8");
    v.require(r.evaluations_total == (1LL << 24), "full enumeration");
}

// 2. E = N(N-1)/2 + 2 H_C for every sequence with N <= 14.
void criterion2(Verdict& v) {
    long long checked = 0;
    long long mismatches = 0;
    for (int n = 2; n <= 14; ++n) {
        const ProblemInstance inst = enumerate_terms(n);
        const std::vector<Term> terms = inst.terms();
        for (BasisIndex x = 0; x < (BasisIndex{1} << n); ++x) {
            const SpinSequence s = SpinSequence::from_index(n, x);
            const std::int64_t e = sidelobe_energy(s);
            const std::int64_t want = inst.constant_offset() + 2 * hamiltonian_value(inst, s);
            const std::int64_t alt = inst.constant_offset() + 2 * evaluate_terms(terms, x);
            mismatches += (e != want || e != alt || e != oracle::energy(n, x)) ? 1 : 0;
            ++checked;
        }
    }
    v.detail << "sequences=" << checked << " mismatches=" << mismatches;
    v.require(mismatches == 0, "exact identity");
}

// 3. Statevector QAOA against dense matrices.
void criterion3(Verdict& v) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> beta(-M_PI / 2, M_PI / 2);
    std::uniform_real_distribution<double> gamma(-1.0, 1.0);
    std::uniform_int_distribution<int> size(2, 8);
    std::uniform_int_distribution<int> depth(1, 3);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = size(rng);
        const int p = depth(rng);
        Schedule s;
        for (int l = 0; l < p; ++l) {
            s.betas.push_back(beta(rng));
            s.gammas.push_back(gamma(rng));
        }
        const EnergyTable t = build_energy_table(n);
        const Statevector sv = prepare_qaoa_state(t, s);
        const Eigen::VectorXcd ref = oracle::qaoa_state(n, s.betas, s.gammas);
        for (Eigen::Index i = 0; i < ref.size(); ++i) {
            worst = std::max(worst, std::abs(sv[static_cast<std::size_t>(i)] - ref(i)));
        }
    }
    v.detail << "schedules=50 max_amplitude_deviation=" << fmt(worst, 3);
    v.require(worst < 1e-10, "deviation < 1e-10");
}

// 4. Norm, D4 and complement invariance at N = 20, p = 20.
void criterion4(Verdict& v) {
    const int n = 20;
    const int p = 20;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> beta(-0.4, 0.4);
    std::uniform_real_distribution<double> gamma(-0.1, 0.1);
    Schedule s;
    for (int l = 0; l < p; ++l) {
        s.betas.push_back(beta(rng));
        s.gammas.push_back(gamma(rng));
    }
    const EnergyTable t = build_energy_table(n);
    const Statevector sv = prepare_qaoa_state(t, s);
    const double drift = std::abs(sv.norm_squared() - 1.0);
    double d4 = 0.0;
    double complement = 0.0;
    const BasisIndex mask = (BasisIndex{1} << n) - 1;
    for (BasisIndex x = 0; x <= mask; ++x) {
        const double a = std::abs(sv[x]);
        for (const SymmetryAction g : SymmetryAction::group()) {
            d4 = std::max(d4, std::abs(a - std::abs(sv[apply_symmetry(n, x, g)])));
        }
        complement = std::max(complement, std::abs(std::norm(sv[x]) - std::norm(sv[x ^ mask])));
    }
    v.detail << "norm_drift=" << fmt(drift, 3) << " d4=" << fmt(d4, 3) << " complement=" << fmt(complement, 3);
    v.require(drift < 1e-10, "norm drift");
    v.require(d4 < 1e-10, "D4 symmetry");
    v.require(complement < 1e-10, "complement invariance");
}

// 5. Amplitude amplification formula.
void criterion5(Verdict& v) {
    bool step0 = true;
    bool monotone = true;
    double worst_gain = 0.0;
    for (const double p0 : {0.3, 0.1, 0.01, 1e-3, 1e-4, 1e-5, 1e-6, 1e-8, 1e-10}) {
        step0 = step0 && aa_success_probability(p0, 0) == p0;
        const double theta = std::asin(std::sqrt(p0));
        const int peak = static_cast<int>(std::floor(M_PI / (4 * theta) - 0.5));
        double prev = aa_success_probability(p0, 0);
        for (int k = 1; k <= peak; ++k) {
            const double cur = aa_success_probability(p0, k);
            monotone = monotone && cur > prev;
            prev = cur;
        }
        if (p0 <= 1e-4) {
            worst_gain = std::max(worst_gain, std::abs(aa_success_probability(p0, 1) / p0 - 9.0) / 9.0);
        }
    }
    v.detail << "step0_exact=" << step0 << " monotone_to_peak=" << monotone
             << " step1_gain_rel_err=" << fmt(worst_gain, 3);
    v.require(step0, "step 0 returns p0");
    v.require(monotone, "monotone to first peak");
    v.require(worst_gain < 0.01, "step-1 gain within 1% of 9");
}

// 6. Minimum finding on uniform input.
void criterion6(Verdict& v) {
    for (int n = 8; n <= 12; ++n) {
        const EnergyTable t = build_energy_table(n);
        const double p_opt = t.random_guess_probability();
        QmfRun run;
        run.delta = 0.1;
        run.m = std::ceil(1.0 / std::sqrt(p_opt));
        run.trials = 500;
        run.seed = derive_seed(6, {static_cast<std::uint64_t>(n)});
        const QmfOutcome o = simulate_qmf(uniform_levels(t), n, t.min_energy, run);
        const double sigma = std::sqrt(0.9 * 0.1 / run.trials);
        const double bound = run.c * n / std::sqrt(p_opt);
        const double corrected = 4 * run.c * n / std::sqrt(p_opt) + 2 * run.c * n;
        v.detail << " N=" << n << ":success=" << fmt(o.success_rate, 4)
                 << ",mean_queries=" << fmt(o.mean_queries_to_optimum, 4) << ",CN/sqrt(p)=" << fmt(bound, 4)
                 << ",4CN/sqrt(p)+2CN=" << fmt(corrected, 4);
        v.require(o.success_rate >= 0.9 - 3 * sigma, "success rate at N=" + std::to_string(n));
        v.require(o.mean_queries_to_optimum <= bound, "mean queries <= CN/sqrt(p_opt) at N=" + std::to_string(n));
    }
    const EnergyTable t8 = build_energy_table(8);
    const double chain = sample_chain_law_check(uniform_levels(t8), 100000, 66);
    v.detail << " chain_law_deviation(N=8)=" << fmt(chain, 3);
    v.require(chain < 0.01, "chain-law deviation < 0.01");
}

// 7. QMF/QAOA exponent relation on a desk-scale pipeline, plus substitute checks.
void criterion7(Verdict& v) {
    const int p = 12;
    std::vector<std::pair<int, Schedule>> depth1;
    std::vector<std::pair<int, Schedule>> depth12;
    for (int n = 8; n <= 12; ++n) {
        const auto& fits = chains().get(ObjectiveKind::p_opt, n, p);
        depth1.emplace_back(n, fits[0].schedule);
        depth12.emplace_back(n, fits[static_cast<std::size_t>(p - 1)].schedule);
    }

    SweepSpec spec;
    spec.solver = "qaoa";
    for (int n = 10; n <= 22; ++n) {
        spec.sizes.push_back(n);
    }
    spec.depths = {1, p};
    spec.fixed_by_depth = {{1, make_fixed_params(depth1)}, {p, make_fixed_params(depth12)}};
    const SweepResult sweep = run_sweep(spec, 1, "");
    v.require(sweep.failures.empty(), "QAOA sweep cells");

    const ScalingFit qaoa = fit_exponential(sweep_fit_points(sweep.rows, "tts", p), 10);
    const ScalingFit qmf = fit_exponential(sweep_fit_points(sweep.rows, "qmf_tts", p), 10);
    const double gap = std::abs(qmf.base - std::sqrt(qaoa.base));
    v.detail << "qaoa_base=" << fmt(qaoa.base, 8) << " qmf_base=" << fmt(qmf.base, 8) << " |qmf-sqrt(qaoa)|="
             << fmt(gap, 3);
    v.require(gap <= 1e-10, "qmf base == sqrt(qaoa base)");

    std::map<std::pair<int, int>, double> p_opt;
    for (const auto& row : sweep.rows) {
        p_opt[{row.n, row.p}] = 1.0 / row.tts;
    }
    bool ordered = true;
    for (int n = 10; n <= 20; ++n) {
        const double p0 = build_energy_table(n).random_guess_probability();
        const bool ok = p_opt[{n, p}] > p_opt[{n, 1}] && p_opt[{n, 1}] > p0;
        ordered = ordered && ok;
        if (!ok) {
            v.detail << " order_broken_at_N=" << n;
        }
    }
    v.detail << " p_opt(12)>p_opt(1)>p0_for_N<=20=" << ordered;
    v.require(ordered, "p_opt(12) > p_opt(1) > p0");

    SweepSpec mts;
    mts.solver = "memetic_tabu";
    for (int n = 10; n <= 20; ++n) {
        mts.sizes.push_back(n);
    }
    mts.seeds = 50;
    mts.seed = 7;
    const SweepResult ms = run_sweep(mts, 1, "");
    v.require(ms.failures.empty(), "memetic sweep cells");
    const ScalingFit mf = fit_exponential(sweep_fit_points(ms.rows, "tts"), 10);
    v.detail << " memetic_base=" << fmt(mf.base, 4) << " ci=[" << fmt(mf.ci_low, 4) << "," << fmt(mf.ci_high, 4)
             << "] r2=" << fmt(mf.r_squared, 3);
    v.require(mf.base >= 1.2 && mf.base <= 1.5, "memetic base in [1.2, 1.5]");
}

// 8. FOURIER monotonicity and agreement with direct optimisation.
void criterion8(Verdict& v) {
    bool monotone = true;
    for (const ObjectiveKind kind : {ObjectiveKind::merit_factor, ObjectiveKind::p_opt}) {
        for (int n = 4; n <= 12; ++n) {
            const auto& fits = chains().get(kind, n, 10);
            for (std::size_t i = 1; i < 10; ++i) {
                if (fits[i].objective < fits[i - 1].objective) {
                    monotone = false;
                    v.detail << " decrease:" << to_string(kind) << ",N=" << n << ",p=" << i + 1;
                }
            }
        }
    }
    v.detail << " monotone_to_p10=" << monotone;
    v.require(monotone, "non-decreasing in p");

    double worst = 0.0;
    for (int n = 8; n <= 10; ++n) {
        const auto& fits = chains().get(ObjectiveKind::merit_factor, n, 10);
        const EnergyTable t = build_energy_table(n);
        for (int p = 1; p <= 4; ++p) {
            QaoaEvaluator ev(t);
            ScheduleSearchOptions so;
            so.restarts = 100 * p;
            so.seed = derive_seed(8, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(p)});
            const ScheduleFit direct = optimize_direct(ev, ObjectiveKind::merit_factor, p, so);
            const double gap = (direct.objective - fits[static_cast<std::size_t>(p - 1)].objective) / direct.objective;
            worst = std::max(worst, gap);
        }
    }
    v.detail << " worst_mf_gap_vs_direct=" << fmt(100 * worst, 3) << "%";
    v.require(worst <= 0.005, "FOURIER within 0.5% of direct");
}

// 9. Compiler correctness and gate counts.
void criterion9(Verdict& v) {
    double worst_phase = 0.0;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> gamma(-1.0, 1.0);
    for (int n = 3; n <= 8; ++n) {
        for (int rep = 0; rep < 3; ++rep) {
            const double g = gamma(rng);
            const Circuit c = compile_phase(enumerate_terms(n), g, rng());
            worst_phase = std::max(worst_phase, oracle::matrix_distance_up_to_phase(oracle::circuit_unitary(n, c.gates),
                                                                                    oracle::phase_matrix(n, g)));
        }
    }
    v.detail << "phase_deviation=" << fmt(worst_phase, 3);
    v.require(worst_phase < 1e-8, "compiled phase == direct phase");

    bool every = true;
    double ratio_sum = 0.0;
    int sizes = 0;
    for (int n = 8; n <= 18; ++n) {
        const CountReport r = count_report(enumerate_terms(n), 20);
        every = every && static_cast<double>(r.greedy_max) <= r.random_mean;
        ratio_sum += r.reduction_ratio;
        ++sizes;
    }
    const double avg = ratio_sum / sizes;
    v.detail << " greedy_max<=random_mean_all_N=" << every << " avg_reduction=" << fmt(avg, 4);
    v.require(every, "greedy <= random mean for every N");
    v.require(avg >= 1.2, "average reduction >= 1.2");

    double worst_cancel = 0.0;
    for (int n = 3; n <= 6; ++n) {
        const ProblemInstance inst = enumerate_terms(n);
        for (int rep = 0; rep < 5; ++rep) {
            const auto order = rep % 2 == 0 ? greedy_order(inst, rng()) : random_order(inst, rng());
            const auto raw = lower_terms(order, gamma(rng));
            worst_cancel = std::max(worst_cancel, oracle::matrix_distance_up_to_phase(
                                                      oracle::circuit_unitary(n, cancel_pass(raw)),
                                                      oracle::circuit_unitary(n, raw)));
        }
        std::uniform_int_distribution<int> q(0, n - 1);
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<Gate> soup;
            for (int i = 0; i < 40; ++i) {
                const int a = q(rng);
                int b = q(rng);
                while (b == a) {
                    b = q(rng);
                }
                switch (rng() % 4) {
                    case 0:
                    case 1:
                        // Controls on {0, 1}, targets on {2, ...}: never the same qubit.
                        soup.push_back(Gate::cnot(a % 2, std::max(b, 2)));
                        break;
                    case 2:
                        soup.push_back(Gate::rzz(a, b, gamma(rng)));
                        break;
                    default:
                        soup.push_back(Gate::rz(a, gamma(rng)));
                }
            }
            worst_cancel = std::max(worst_cancel, oracle::matrix_distance_up_to_phase(
                                                      oracle::circuit_unitary(n, cancel_pass(soup)),
                                                      oracle::circuit_unitary(n, soup)));
        }
    }
    v.detail << " cancel_pass_deviation=" << fmt(worst_cancel, 3);
    v.require(worst_cancel < 1e-10, "cancel_pass preserves unitaries");
}

// 10. Error detection.
void criterion10(Verdict& v) {
    {
        const int n = 8;
        const CheckedCircuit c = insert_checks(compile_phase(enumerate_terms(n), 0.6 / n, 1), 3);
        NoiseModel clean;
        clean.p2 = 0.0;
        NoisySimOptions opts;
        opts.beta = -0.16;
        const PostSelectionStats st = simulate_noisy(c, clean, 2000, build_energy_table(n), opts);
        v.detail << "noiseless_ratio=" << fmt(st.ratio);
        v.require(st.ratio == 1.0, "noiseless ratio == 1");
    }

    DetectionReport total;
    for (int n = 4; n <= 8; ++n) {
        for (int m = 1; m <= 3; ++m) {
            const CheckedCircuit c = insert_checks(compile_phase(enumerate_terms(n), 0.3, 1), m);
            const DetectionReport r = detection_theorem_check(c);
            total.injections += r.injections;
            total.detected += r.detected;
        }
    }
    v.detail << " single_pauli_detection=" << total.detected << "/" << total.injections;
    v.require(total.injections > 0 && total.detected == total.injections, "detection rate == 1");

    for (int n = 10; n <= 13; ++n) {
        const CheckedCircuit c = insert_checks(compile_phase(enumerate_terms(n), 0.6 / n, 1), 3);
        const EnergyTable t = build_energy_table(n);
        NoisySimOptions opts;
        opts.beta = -0.16;
        int wins = 0;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            NoiseModel nm;
            nm.p2 = 2e-3;
            nm.seed = derive_seed(10, {static_cast<std::uint64_t>(n), seed});
            const PostSelectionStats st = simulate_noisy(c, nm, 5000, t, opts);
            wins += st.mf_kept >= st.mf_all ? 1 : 0;
        }
        v.detail << " N=" << n << ":kept>=all=" << wins << "/10";
        v.require(wins >= 9, "post-selection helps at N=" + std::to_string(n));
    }

    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> len(1, 10);
    int violations = 0;
    for (int i = 0; i < 10000; ++i) {
        std::vector<double> p(static_cast<std::size_t>(len(rng)));
        for (auto& x : p) {
            x = 1.0 - u(rng);
        }
        const TimeModel tm = avg_time_models(0.01 + 10 * u(rng), p);
        violations += tm.t2 <= tm.t1 * (1 + 1e-12) ? 0 : 1;
    }
    v.detail << " t2<=t1_violations=" << violations << "/10000";
    v.require(violations == 0, "t2 <= t1");
}

// 11. Scaling-fit machinery on synthetic data.
void criterion11(Verdict& v) {
    std::vector<FitPoint> exact;
    for (int n = 10; n <= 30; ++n) {
        exact.push_back({n, 3.7 * std::pow(1.37, n)});
    }
    const ScalingFit f = fit_exponential(exact, 10);
    const double err = std::abs(f.base - 1.37) / 1.37;
    v.detail << "noiseless_rel_err=" << fmt(err, 3) << " r2=" << fmt(f.r_squared, 15);
    v.require(err < 1e-12 && f.r_squared > 1 - 1e-12, "noiseless recovery");

    std::mt19937_64 rng(11);
    std::normal_distribution<double> noise(0.0, 0.2);
    int covered = 0;
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<FitPoint> pts;
        for (int n = 10; n <= 24; ++n) {
            pts.push_back({n, 2.0 * std::pow(1.3, n) * std::exp(noise(rng))});
        }
        const ScalingFit g = fit_exponential(pts, 10);
        covered += (g.ci_low <= 1.3 && 1.3 <= g.ci_high) ? 1 : 0;
    }
    v.detail << " coverage=" << covered << "/200";
    v.require(covered >= 180, "interval coverage >= 90%");

    // Exponential with a curved transient that dies out at larger N.
    std::vector<FitPoint> curved;
    for (int n = 4; n <= 30; ++n) {
        curved.push_back({n, std::pow(1.25, n) * std::exp(4.0 * std::exp(-n / 3.0))});
    }
    const std::vector<int> cuts{4, 10, 16};
    const auto rows = fit_quality_sweep(curved, cuts);
    v.detail << " r2_by_nmin=";
    bool improving = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        v.detail << (i ? "," : "") << rows[i].n_min << ":" << fmt(rows[i].r_squared, 8);
        if (i > 0) {
            improving = improving && rows[i].r_squared > rows[i - 1].r_squared;
        }
    }
    v.require(improving, "R^2 improves as the curved regime is excluded");
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 12. Byte-identical canonical sweep output across reruns and worker counts.
void criterion12(Verdict& v) {
    const auto root = std::filesystem::temp_directory_path() / "labs_acceptance_determinism";
    std::filesystem::remove_all(root);
    std::vector<SweepSpec> specs;
    {
        SweepSpec s;
        s.solver = "memetic_tabu";
        s.sizes = {12, 13, 14, 15, 16};
        s.seeds = 8;
        s.seed = 12;
        specs.push_back(s);
        s.solver = "tabu";
        specs.push_back(s);
        SweepSpec q;
        q.solver = "qaoa";
        q.sizes = {8, 9, 10};
        q.depths = {2};
        FixedParams fp;
        fp.beta_fixed = {-0.17, -0.12};
        fp.gamma_fixed_scaled = {0.55, 0.9};
        fp.source_sizes = {8};
        q.fixed_by_depth = {{2, fp}};
        specs.push_back(q);
    }
    bool identical = true;
    for (const auto& spec : specs) {
        std::vector<std::string> outputs;
        int run = 0;
        for (const int workers : {1, 8, 1, 8}) {
            const auto dir = root / (spec.solver + std::to_string(run++));
            run_sweep(spec, workers, dir.string());
            outputs.push_back(read_file(dir / "tts_canonical.csv"));
        }
        const bool same = !outputs[0].empty() && std::all_of(outputs.begin(), outputs.end(),
                                                             [&](const std::string& s) { return s == outputs[0]; });
        v.detail << " " << spec.solver << "=" << (same ? "identical" : "DIFFERENT");
        identical = identical && same;
    }
    std::filesystem::remove_all(root);
    v.require(identical, "byte-identical canonical CSV");
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<void(Verdict&)>> criteria{
        criterion1, criterion2, criterion3, criterion4,  criterion5,  criterion6,
        criterion7, criterion8, criterion9, criterion10, criterion11, criterion12,
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) {
        selected.insert(std::atoi(argv[i]));
    }
    int failures = 0;
    for (int k = 1; k <= static_cast<int>(criteria.size()); ++k) {
        if (!selected.empty() && selected.count(k) == 0) {
            continue;
        }
        Verdict v;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[static_cast<std::size_t>(k - 1)](v);
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail << " [exception: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %2d: %s  (%.1fs) %s\n", k, v.pass ? "PASS" : "FAIL", secs, v.detail.str().c_str());
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
