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

// Reference implementations used only by the tests. Everything here is
// written from the definitions with dense linear algebra and plain loops,
// and shares no code with the library kernels it checks.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "labs/compiler.hpp"

namespace oracle {

using cd = std::complex<double>;

inline std::vector<int> spins_of(int n, std::uint64_t x) {
    std::vector<int> s(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        s[static_cast<std::size_t>(j)] = ((x >> j) & 1U) != 0 ? -1 : 1;
    }
    return s;
}

inline long long energy(const std::vector<int>& s) {
    const int n = static_cast<int>(s.size());
    long long e = 0;
    for (int k = 1; k < n; ++k) {
        long long a = 0;
        for (int i = 0; i + k < n; ++i) {
            a += s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i + k)];
        }
        e += a * a;
    }
    return e;
}

inline long long energy(int n, std::uint64_t x) { return energy(spins_of(n, x)); }

/// H_C(x) = (E(x) - N(N-1)/2) / 2.
inline double hc(int n, std::uint64_t x) {
    return (static_cast<double>(energy(n, x)) - n * (n - 1) / 2.0) / 2.0;
}

inline Eigen::VectorXcd plus_state(int n) {
    const auto dim = static_cast<Eigen::Index>(1) << n;
    return Eigen::VectorXcd::Constant(dim, cd(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
}

inline Eigen::MatrixXcd phase_matrix(int n, double gamma) {
    const auto dim = static_cast<Eigen::Index>(1) << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
        m(x, x) = std::exp(cd(0.0, -gamma * hc(n, static_cast<std::uint64_t>(x))));
    }
    return m;
}

/// exp(-i beta sum_j X_j) from the eigendecomposition of the dense sum.
class Mixer {
   public:
    explicit Mixer(int n) {
        const auto dim = static_cast<Eigen::Index>(1) << n;
        Eigen::MatrixXd b = Eigen::MatrixXd::Zero(dim, dim);
        for (Eigen::Index x = 0; x < dim; ++x) {
            for (int j = 0; j < n; ++j) {
                b(x ^ (Eigen::Index{1} << j), x) += 1.0;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
        v_ = es.eigenvectors();
        lambda_ = es.eigenvalues();
    }
    [[nodiscard]] Eigen::MatrixXcd unitary(double beta) const {
        Eigen::VectorXcd d(lambda_.size());
        for (Eigen::Index i = 0; i < lambda_.size(); ++i) {
            d(i) = std::exp(cd(0.0, -beta * lambda_(i)));
        }
        const Eigen::MatrixXcd vc = v_.cast<cd>();
        return vc * d.asDiagonal() * vc.transpose();
    }

   private:
    Eigen::MatrixXd v_;
    Eigen::VectorXd lambda_;
};

inline Eigen::VectorXcd qaoa_state(int n, const std::vector<double>& betas, const std::vector<double>& gammas) {
    const Mixer mixer(n);
    Eigen::VectorXcd psi = plus_state(n);
    for (std::size_t l = 0; l < betas.size(); ++l) {
        psi = phase_matrix(n, gammas[l]) * psi;
        psi = mixer.unitary(betas[l]) * psi;
    }
    return psi;
}

/// Dense matrix of one gate on `nq` qubits, written column by column.
inline Eigen::MatrixXcd gate_matrix(int nq, const labs_qaoa::Gate& g) {
    using labs_qaoa::GateKind;
    const auto dim = static_cast<Eigen::Index>(1) << nq;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    const int a = g.qubits[0];
    const int b = g.qubits[1];
    auto bit = [](Eigen::Index x, int q) { return static_cast<int>((x >> q) & 1); };
    auto z = [&](Eigen::Index x, int q) { return bit(x, q) != 0 ? -1.0 : 1.0; };
    for (Eigen::Index x = 0; x < dim; ++x) {
        switch (g.kind) {
            case GateKind::cnot:
                m(bit(x, a) != 0 ? x ^ (Eigen::Index{1} << b) : x, x) = 1.0;
                break;
            case GateKind::cz:
                m(x, x) = (bit(x, a) & bit(x, b)) != 0 ? -1.0 : 1.0;
                break;
            case GateKind::rzz:
                m(x, x) = std::exp(cd(0.0, -g.angle / 2.0 * z(x, a) * z(x, b)));
                break;
            case GateKind::rz:
                m(x, x) = std::exp(cd(0.0, -g.angle / 2.0 * z(x, a)));
                break;
            case GateKind::rx:
                m(x, x) = std::cos(g.angle / 2.0);
                m(x ^ (Eigen::Index{1} << a), x) = cd(0.0, -std::sin(g.angle / 2.0));
                break;
            case GateKind::h: {
                const double r = 1.0 / std::sqrt(2.0);
                m(x, x) = bit(x, a) != 0 ? -r : r;
                m(x ^ (Eigen::Index{1} << a), x) = r;
                break;
            }
            default:
                throw std::invalid_argument("oracle handles unitary two-qubit and single-qubit gates only");
        }
    }
    return m;
}

inline Eigen::MatrixXcd circuit_unitary(int nq, const std::vector<labs_qaoa::Gate>& gates) {
    const auto dim = static_cast<Eigen::Index>(1) << nq;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& g : gates) {
        u = gate_matrix(nq, g) * u;
    }
    return u;
}

/// min over global phases of max_i |a_i - e^{i phi} b_i|, with phi fixed by
/// the overlap <b|a>.
inline double distance_up_to_phase(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    const cd overlap = b.dot(a);
    const cd phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cd(1.0, 0.0);
    return (a - phase * b).cwiseAbs().maxCoeff();
}

inline double matrix_distance_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    const cd tr = (b.adjoint() * a).trace();
    const cd phase = std::abs(tr) > 0 ? tr / std::abs(tr) : cd(1.0, 0.0);
    return (a - phase * b).cwiseAbs().maxCoeff();
}

inline Eigen::VectorXcd random_state(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    const auto dim = static_cast<Eigen::Index>(1) << n;
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v(i) = cd(g(rng), g(rng));
    }
    return v / v.norm();
}

}  // namespace oracle
