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

#include <functional>
#include <string>
#include <vector>

namespace labs_qaoa {

/// Derivative-free local minimisation.
///
/// Two methods sit behind one interface:
///  - trust_region: quadratic model from a central-difference stencil of
///    radius tied to the trust radius, curvature carried between iterations
///    by a damped BFGS update, and an exact trust-region subproblem solve.
///  - simplex: Nelder-Mead with adaptive coefficients.
///
/// Both stop on relative changes in parameters or objective below rel_tol,
/// and both are deterministic for a fixed x0.
enum class LocalMethod { trust_region, simplex };

struct LocalOptions {
    LocalMethod method = LocalMethod::trust_region;
    double initial_step = 0.01;  // rhobeg
    double rel_tol = 1e-8;       // on both parameters and objective
    long long max_evals = 0;     // 0 means 10000 * dim
};

struct LocalResult {
    std::vector<double> x;
    double f = 0.0;
    long long evaluations = 0;
    bool hit_eval_cap = false;  // best-so-far returned
    std::string method;
};

using Objective = std::function<double(const std::vector<double>&)>;

LocalResult optimize_local(const Objective& f, std::vector<double> x0, const LocalOptions& opts = {});

LocalMethod local_method_from_string(const std::string& name);
std::string to_string(LocalMethod m);

}  // namespace labs_qaoa
