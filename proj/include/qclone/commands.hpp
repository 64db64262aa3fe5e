// Copyright 2026 The qclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qclone {

inline constexpr const char* kReportSchema = "qclone.report/1";

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitInfeasible = 2, kExitInvariant = 3 };

struct CommandOptions {
  std::string config_path;
  std::optional<std::string> config_text;  // used instead of config_path when set
  std::string out_path;
  std::string lower = "multi";
  std::string hamiltonian_path;
  std::vector<int> branch_integers;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<double> decoherence;
  std::optional<double> preparation;
  std::vector<double> weights;
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string report;   // JSON document for standard output
  std::string summary;  // human-readable lines for standard error
};

CommandResult cmd_synth(const CommandOptions& opt);
CommandResult cmd_compile(const CommandOptions& opt);
CommandResult cmd_simulate(const CommandOptions& opt);
CommandResult cmd_robust(const CommandOptions& opt);

}  // namespace qclone
