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

#include <optional>
#include <ostream>
#include <string>

#include "ooc/simulator.hpp"

namespace ooc {

// Subcommand bodies. Each prints to `out` and returns a process exit code.

int command_graph_info(const Scenario& scenario, std::ostream& out);
int command_solve_triplets(const Scenario& scenario, std::ostream& out);
int command_check_gains(const Scenario& scenario, std::ostream& out);
int command_oracle(const Scenario& scenario, std::ostream& out);
int command_sweep(const Scenario& scenario, std::ostream& out);
/// 0 converged, 2 completed without converging. Outputs are written only for
/// completed runs.
int command_run(const Scenario& scenario, const std::optional<std::string>& out_dir, std::ostream& out);

}  // namespace ooc
