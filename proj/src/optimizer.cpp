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

#include "labs/optimizer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace labs_qaoa {

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

class CountingObjective {
   public:
    CountingObjective(const Objective& f, long long cap) : f_(f), cap_(cap) {}

    double operator()(const Vec& x) {
        ++count_;
        std::vector<double> v(x.data(), x.data() + x.size());
        const double fx = f_(v);
        if (!std::isfinite(fx)) {
            throw std::runtime_error("objective returned a non-finite value");
        }
        if (fx < best_f_) {
            best_f_ = fx;
            best_x_ = x;
        }
        return fx;
    }
    [[nodiscard]] bool exhausted() const { return count_ >= cap_; }
    [[nodiscard]] long long count() const { return count_; }
    [[nodiscard]] double best_f() const { return best_f_; }
    [[nodiscard]] const Vec& best_x() const { return best_x_; }

   private:
    const Objective& f_;
    long long cap_;
    long long count_ = 0;
    double best_f_ = std::numeric_limits<double>::infinity();
    Vec best_x_;
};

// Minimises g.s + s'Bs/2 subject to |s| <= radius.
Vec trust_region_step(const Vec& g, const Mat& b, double radius) {
    Eigen::SelfAdjointEigenSolver<Mat> eig(b);
    const Vec lambda = eig.eigenvalues();
    const Mat& q = eig.eigenvectors();
    const Vec gq = q.transpose() * g;
    const double lmin = lambda.minCoeff();

    auto step_norm = [&](double shift) {
        double s2 = 0.0;
        for (Eigen::Index i = 0; i < gq.size(); ++i) {
            const double d = lambda(i) + shift;
            s2 += (gq(i) * gq(i)) / (d * d);
        }
        return std::sqrt(s2);
    };
    auto step_for = [&](double shift) {
        Vec c(gq.size());
        for (Eigen::Index i = 0; i < gq.size(); ++i) {
            c(i) = -gq(i) / (lambda(i) + shift);
        }
        return Vec(q * c);
    };

    const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
    if (lmin > 1e-12 * scale && step_norm(0.0) <= radius) {
        return step_for(0.0);
    }
    double lo = std::max(0.0, -lmin) + 1e-14 * scale;
    if (step_norm(lo) < radius) {
        // Hard case: move along the lowest eigenvector to the boundary.
        Vec s = step_for(lo);
        const Vec dir = q.col(0);
        const double sd = s.dot(dir);
        const double rem = radius * radius - s.squaredNorm();
        const double tau = -sd + std::sqrt(std::max(0.0, sd * sd + rem));
        return s + tau * dir;
    }
    double hi = lo + std::max(1.0, g.norm() / radius);
    while (step_norm(hi) > radius) {
        hi = lo + 2.0 * (hi - lo);
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (step_norm(mid) > radius) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-15 * std::max(1.0, hi)) {
            break;
        }
    }
    return step_for(hi);
}

LocalResult run_trust_region(const Objective& objective, Vec x, const LocalOptions& opts, long long cap) {
    const auto dim = x.size();
    CountingObjective f(objective, cap);
    const double tol = opts.rel_tol;
    double radius = opts.initial_step;
    double fx = f(x);
    Mat b = Mat::Identity(dim, dim);
    bool have_curvature = false;
    Vec g_prev;
    Vec x_prev;
    bool converged = false;

    while (!converged && !f.exhausted()) {
        // Difference step tracks the trust radius so the gradient bias shrinks near a minimum.
        const double h = std::max(std::min(0.1 * radius, opts.initial_step), 1e-6 * std::max(1.0, x.norm()));
        Vec g(dim);
        Vec diag(dim);
        Vec best_probe = x;
        double best_probe_f = fx;
        for (Eigen::Index i = 0; i < dim; ++i) {
            Vec xp = x;
            Vec xm = x;
            xp(i) += h;
            xm(i) -= h;
            const double fp = f(xp);
            const double fm = f(xm);
            g(i) = (fp - fm) / (2 * h);
            diag(i) = (fp + fm - 2 * fx) / (h * h);
            if (fp < best_probe_f) {
                best_probe_f = fp;
                best_probe = xp;
            }
            if (fm < best_probe_f) {
                best_probe_f = fm;
                best_probe = xm;
            }
        }
        if (f.exhausted()) {
            break;
        }

        if (have_curvature) {
            const Vec s = x - x_prev;
            const Vec y = g - g_prev;
            const Vec bs = b * s;
            const double sbs = s.dot(bs);
            double sy = s.dot(y);
            if (sbs > 0) {
                // Powell damping keeps the update well defined.
                Vec r = y;
                if (sy < 0.2 * sbs) {
                    const double theta = 0.8 * sbs / (sbs - sy);
                    r = theta * y + (1 - theta) * bs;
                    sy = s.dot(r);
                }
                if (sy > 0) {
                    b += (r * r.transpose()) / sy - (bs * bs.transpose()) / sbs;
                }
            }
        }
        if (!have_curvature) {
            for (Eigen::Index i = 0; i < dim; ++i) {
                b(i, i) = std::max(std::abs(diag(i)), 1e-8);
            }
        }
        have_curvature = true;
        g_prev = g;
        x_prev = x;

        const Vec step = trust_region_step(g, b, radius);
        const double predicted = -(g.dot(step) + 0.5 * step.dot(b * step));
        const Vec trial = x + step;
        const double ft = f(trial);
        const double actual = fx - ft;
        const double ratio = predicted > 0 ? actual / predicted : (actual > 0 ? 1.0 : -1.0);
        const double snorm = step.norm();
        const bool interior = snorm < 0.99 * radius;

        if (ratio > 1e-4 && actual > 0) {
            const double df = actual;
            x = trial;
            fx = ft;
            if (ratio > 0.75 && !interior) {
                radius *= 2.0;
            } else if (ratio < 0.25) {
                radius = 0.5 * snorm;
            }
            if (df <= tol * std::abs(fx) && interior) {
                converged = true;
            }
            if (snorm <= tol * std::max(x.norm(), tol)) {
                converged = true;
            }
        } else {
            radius = 0.5 * std::min(radius, std::max(snorm, tol));
            if (best_probe_f < fx) {
                x = best_probe;
                fx = best_probe_f;
            }
        }
        if (predicted <= 1e-2 * tol * std::abs(fx) && best_probe_f >= fx) {
            converged = true;
        }
        if (radius <= tol * std::max(x.norm(), tol)) {
            converged = true;
        }
    }

    LocalResult out;
    out.x.assign(f.best_x().data(), f.best_x().data() + f.best_x().size());
    out.f = f.best_f();
    out.evaluations = f.count();
    out.hit_eval_cap = !converged;
    out.method = "trust_region";
    return out;
}

LocalResult run_simplex(const Objective& objective, Vec x0, const LocalOptions& opts, long long cap) {
    const auto dim = x0.size();
    const double nd = static_cast<double>(dim);
    CountingObjective f(objective, cap);
    // Dimension-adaptive coefficients.
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / nd;
    const double gamma = 0.75 - 1.0 / (2.0 * nd);
    const double delta = 1.0 - 1.0 / nd;

    std::vector<Vec> pts;
    std::vector<double> vals;
    pts.push_back(x0);
    vals.push_back(f(x0));
    for (Eigen::Index i = 0; i < dim; ++i) {
        Vec p = x0;
        p(i) += opts.initial_step;
        pts.push_back(p);
        vals.push_back(f(p));
    }
    std::vector<std::size_t> order(pts.size());
    bool converged = false;
    while (!f.exhausted()) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[order.size() - 2];

        double fspread = 0.0;
        double xspread = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            fspread = std::max(fspread, std::abs(vals[i] - vals[best]));
            xspread = std::max(xspread, (pts[i] - pts[best]).norm());
        }
        if (fspread <= opts.rel_tol * std::max(std::abs(vals[best]), opts.rel_tol) &&
            xspread <= opts.rel_tol * std::max(pts[best].norm(), opts.rel_tol)) {
            converged = true;
            break;
        }

        Vec centroid = Vec::Zero(dim);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i != worst) {
                centroid += pts[i];
            }
        }
        centroid /= nd;
        const Vec xr = centroid + alpha * (centroid - pts[worst]);
        const double fr = f(xr);
        if (fr < vals[best]) {
            const Vec xe = centroid + beta * (xr - centroid);
            const double fe = f(xe);
            if (fe < fr) {
                pts[worst] = xe;
                vals[worst] = fe;
            } else {
                pts[worst] = xr;
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second]) {
            pts[worst] = xr;
            vals[worst] = fr;
            continue;
        }
        const bool outside = fr < vals[worst];
        const Vec xc = outside ? Vec(centroid + gamma * (xr - centroid)) : Vec(centroid - gamma * (centroid - pts[worst]));
        const double fc = f(xc);
        if (fc < (outside ? fr : vals[worst])) {
            pts[worst] = xc;
            vals[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i != best) {
                pts[i] = pts[best] + delta * (pts[i] - pts[best]);
                vals[i] = f(pts[i]);
            }
        }
    }

    LocalResult out;
    out.x.assign(f.best_x().data(), f.best_x().data() + f.best_x().size());
    out.f = f.best_f();
    out.evaluations = f.count();
    out.hit_eval_cap = !converged;
    out.method = "simplex";
    return out;
}

}  // namespace

LocalResult optimize_local(const Objective& f, std::vector<double> x0, const LocalOptions& opts) {
    if (x0.empty()) {
        throw std::invalid_argument("optimize_local needs at least one parameter");
    }
    if (!(opts.initial_step > 0) || !(opts.rel_tol > 0)) {
        throw std::invalid_argument("initial_step and rel_tol must be positive");
    }
    const long long cap = opts.max_evals > 0 ? opts.max_evals : 10000LL * static_cast<long long>(x0.size());
    Vec x = Eigen::Map<Vec>(x0.data(), static_cast<Eigen::Index>(x0.size()));
    switch (opts.method) {
        case LocalMethod::trust_region:
            return run_trust_region(f, x, opts, cap);
        case LocalMethod::simplex:
            return run_simplex(f, x, opts, cap);
    }
    throw std::invalid_argument("unknown local method");
}

LocalMethod local_method_from_string(const std::string& name) {
    if (name == "trust_region" || name == "trust-region") {
        return LocalMethod::trust_region;
    }
    if (name == "simplex" || name == "nelder-mead") {
        return LocalMethod::simplex;
    }
    throw std::invalid_argument("unknown local optimizer '" + name + "'");
}

std::string to_string(LocalMethod m) {
    return m == LocalMethod::trust_region ? "trust_region" : "simplex";
}

}  // namespace labs_qaoa
