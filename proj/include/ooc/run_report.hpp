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

#include <filesystem>
#include <string>
#include <vector>

#include "ooc/simulator.hpp"

namespace ooc {

inline constexpr const char* kToolVersion = "0.1.0";

/// Everything produced by one simulation of a scenario.
struct RunOutcome {
  Scenario scenario;
  ClosedLoop loop;
  Eigen::VectorXd y_star;  // centralized oracle
  Trajectory trajectory;
  Metrics metrics;
  GainAdvisory advisory;  // for the gains actually used
  bool converged = false;  // final_output_error <= scenario.tolerance
  double wall_seconds = 0.0;
};

/// Assembles, simulates and measures. Throws on any validation or
/// simulation error; nothing is written.
RunOutcome execute_run(const Scenario& scenario, const NumericPolicy& policy = default_policy());

/// `t, y_<agent>_<component>..., err` with err = ||Y(t) - 1 kron y*||.
std::string trajectory_csv(const RunOutcome& run);
std::string human_report(const RunOutcome& run);
/// Flat `key=value` lines.
std::string kv_report(const RunOutcome& run);

/// True when a reference optimum is attached and differs from the oracle by
/// more than the scenario tolerance.
bool reference_mismatch(const RunOutcome& run);

/// Writes trajectory.csv, report.txt and report.kv into `dir` (created if
/// needed). Each file is written under a temporary name and renamed.
void write_run_outputs(const RunOutcome& run, const std::filesystem::path& dir);

struct SweepRow {
  GainPreset preset;
  std::optional<double> settling_time;
  double final_output_error = 0.0;
  bool converged = false;
};

/// Runs every preset of the scenario concurrently, in preset order.
std::vector<SweepRow> run_sweep(const Scenario& scenario, const NumericPolicy& policy = default_policy());

/// True if every preset settled and settling times strictly decrease.
bool settling_strictly_decreasing(const std::vector<SweepRow>& rows);

}  // namespace ooc
