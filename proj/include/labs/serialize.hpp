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

#include <json.hpp>
#include <string>
#include <vector>

#include "labs/analysis.hpp"
#include "labs/compiler.hpp"
#include "labs/energy_table.hpp"
#include "labs/errdetect.hpp"
#include "labs/minfind.hpp"
#include "labs/qaoa.hpp"
#include "labs/schedules.hpp"
#include "labs/solvers.hpp"

namespace labs_qaoa {

using Json = nlohmann::ordered_json;

/// Shortest text that parses back to the same double.
std::string format_double(double x);

Json to_json(const Schedule& schedule);
Schedule schedule_from_json(const Json& j);

Json to_json(const FixedParams& fixed);
FixedParams fixed_params_from_json(const Json& j);

/// Accepts a schedule file or a fixed-parameter file; the latter is
/// instantiated for `n`.
Schedule schedule_for_size(const Json& j, int n);

Json to_json(const QaoaResult& result);
Json energy_table_summary(const EnergyTable& table);

/// Extra fields (p, M, C, delta) are not stored in QmfOutcome.
Json to_json(const QmfOutcome& outcome, int p, const QmfRun& run);

Json to_json(const ScalingFit& fit);

Json to_json(const Circuit& circuit);
Circuit circuit_from_json(const Json& j);

Json to_json(const PostSelectionStats& stats);
/// bitstring hex, kept flag and syndrome bits per shot.
std::string shots_csv(const PostSelectionStats& stats);

Json to_json(const SolveResult& result);
Json to_json(const SolverConfig& config);

/// Columns N, seed, evaluations_to_best, hit_target, wall_ms.
std::string tts_csv(const TtsTable& table);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace labs_qaoa
