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

#include <iosfwd>
#include <string>
#include <vector>

namespace labs_qaoa {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,   // runtime failure, or a sweep with failed cells
    kExitUsage = 2,     // bad arguments
    kExitResource = 3,  // memory budget or size limit refused the request
};

/// Parses "10,12,14", "10:14" (inclusive) or a mix such as "8,10:12".
std::vector<int> parse_int_list(const std::string& text);

/// Entry point of the `labs` tool. Results go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace labs_qaoa
