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

#include <string>
#include <vector>

namespace labs_qaoa {

/// Where a schedule came from.
struct Provenance {
    enum class Kind { unspecified, directly_optimized, fourier_extended, fixed_rescaled };
    Kind kind = Kind::unspecified;
    int n = 0;  // size it was optimized at, or instantiated for

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

std::string to_string(Provenance::Kind kind);
Provenance::Kind provenance_kind_from_string(const std::string& text);

/// QAOA angles, layer l applies exp(-i beta_l B) exp(-i gamma_l H_C).
struct Schedule {
    std::vector<double> betas;
    std::vector<double> gammas;
    Provenance provenance;

    [[nodiscard]] int depth() const { return static_cast<int>(betas.size()); }
    /// Throws unless betas and gammas have equal, nonzero length.
    void validate() const;

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

}  // namespace labs_qaoa
