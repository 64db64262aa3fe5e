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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qclone/statesets.hpp"
#include "qclone/synthesis.hpp"

namespace qclone {

using Json = nlohmann::ordered_json;

/// A parsed problem document.
///
///   {
///     "states": {"theta": "pi/6"}                        symmetric pair
///            or {"k": 2, "vectors": [[[re, im], ...], ...], "labels": [...]},
///     "mode": {"identify": {"M": 2}} or {"clone": {"M": 2, "N": 3}},
///     "gammas": "optimal-uniform" or [g1, g2, ...],
///     "tolerances": {"invariant": 1e-8},
///     "seed": 7
///   }
///
/// Vectors are normalized on input. Every failure is a ParseError whose
/// locator is a JSON pointer into the document.
struct ProblemConfig {
  std::optional<StateSet> set;
  Mode mode;
  bool optimal_uniform = true;
  std::vector<double> gammas;  // explicit list when !optimal_uniform
  double invariant_tol = 1e-8;
  std::uint64_t seed = 1;
  Json echo;

  /// Resolves the gamma list, bisecting for the optimal uniform value.
  MachineSpec machine() const;
};

ProblemConfig parse_config(const std::string& text);
ProblemConfig load_config(const std::string& path);

/// Parses "pi/6", "3*pi/8", "0.25pi" or a plain number.
double parse_angle(const std::string& text, const std::string& locator);

}  // namespace qclone
