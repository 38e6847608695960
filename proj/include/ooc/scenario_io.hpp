/******************************************************************************
 * Copyright 2026 The OOC Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ooc/simulator.hpp"

namespace ooc {

/// Reads a scenario document (schema 1). Unknown sections and keys are
/// rejected; errors cite section, key and line. The result is structurally
/// validated: graph strongly connected, plant shapes, cost expressions,
/// triplet shapes and v0 = 0.
Scenario parse_scenario(const std::string& text, const std::string& origin = "<input>");

/// A built-in name (example1, example2) or a path to a scenario file.
Scenario load_scenario(const std::string& name_or_path);

/// Serializes a scenario so that parse_scenario(emit_scenario(s)) == s.
std::string emit_scenario(const Scenario& scenario);

/// Command-line overrides applied on top of a loaded scenario.
struct ScenarioOverrides {
  std::optional<std::string> preset;
  std::optional<ControllerMode> mode;
  std::optional<double> step;
  std::optional<double> horizon;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
};

Scenario apply_overrides(const Scenario& scenario, const ScenarioOverrides& overrides);

ControllerMode parse_controller_mode(const std::string& text);
std::string to_string(ControllerMode mode);

}  // namespace ooc
