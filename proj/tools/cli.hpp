// Copyright 2026 The sqip Authors
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

#ifndef SQIP_TOOLS_CLI_HPP_
#define SQIP_TOOLS_CLI_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sqip/tomography.hpp"

namespace sqip::cli {

enum ExitCode : int {
  kOk = 0,
  kParseFailure = 2,
  kInvariantFailure = 3,
  kSolverFailure = 4,
  kCapExceeded = 5,
};

struct RunConfig {
  /// value | simulate | tomo | reduce | params
  std::string command;
  /// reduce only: qma | qiplog | qam
  std::string pipeline;
  std::string protocol_path;
  std::string prover_path;
  std::string witness_path;
  std::string state_path;
  std::uint64_t seed = 0;
  SampleMode mode = SampleMode::kExact;
  std::optional<std::uint64_t> shots;
  std::map<std::string, std::string> overrides;
  std::optional<std::string> output_path;
  bool human = false;
};

struct RunResult {
  int exit_code = kOk;
  nlohmann::json report;
};

/// Executes one command. Library errors become a report with an "error"
/// object and the matching exit code; nothing is thrown.
RunResult run(const RunConfig& config);

/// "k=v,k2=v2" -> map. Throws ParseError on malformed entries.
std::map<std::string, std::string> parse_overrides(const std::string& text);

/// Indented "key: value" rendering of a report.
std::string render_human(const nlohmann::json& report);

/// Full command-line entry point.
int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sqip::cli

#endif  // SQIP_TOOLS_CLI_HPP_
