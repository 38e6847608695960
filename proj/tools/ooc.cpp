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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ooc/builtin_scenarios.hpp"
#include "ooc/commands.hpp"
#include "ooc/errors.hpp"
#include "ooc/run_report.hpp"
#include "ooc/scenario_io.hpp"

namespace {

struct Options {
  std::string scenario;
  std::string positional;
  std::optional<std::string> out;
  std::optional<double> step;
  std::optional<double> horizon;
  std::optional<std::string> controller;
  std::optional<std::string> preset;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
};

void add_scenario_options(CLI::App* cmd, Options& o, bool simulation) {
  cmd->add_option("scenario_name", o.positional, "Built-in scenario name or scenario file");
  cmd->add_option("--scenario", o.scenario, "Built-in scenario name or scenario file");
  cmd->add_option("--controller", o.controller, "Controller mode")->check(CLI::IsMember({"state", "output"}));
  cmd->add_option("--preset", o.preset, "Named gain preset from the scenario");
  if (simulation) {
    cmd->add_option("--step", o.step, "Integration step h in seconds");
    cmd->add_option("--horizon", o.horizon, "Simulated horizon T in seconds");
    cmd->add_option("--seed", o.seed, "Seed for random initial conditions");
    cmd->add_option("--tolerance", o.tolerance, "Convergence tolerance on the final output error");
  }
}

ooc::Scenario resolve(const Options& o) {
  if (!o.scenario.empty() && !o.positional.empty() && o.scenario != o.positional) {
    throw ooc::Error(ooc::ErrorCode::ValidationError, "give the scenario once, positionally or with --scenario");
  }
  const std::string name = o.scenario.empty() ? o.positional : o.scenario;
  if (name.empty()) throw ooc::Error(ooc::ErrorCode::ValidationError, "a scenario is required (--scenario)");
  ooc::ScenarioOverrides ov;
  ov.preset = o.preset;
  if (o.controller) ov.mode = ooc::parse_controller_mode(*o.controller);
  ov.step = o.step;
  ov.horizon = o.horizon;
  ov.seed = o.seed;
  ov.tolerance = o.tolerance;
  return ooc::apply_overrides(ooc::load_scenario(name), ov);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed optimal output consensus simulator"};
  app.set_version_flag("--version", ooc::kToolVersion);
  app.require_subcommand(1);

  Options o;
  CLI::App* run = app.add_subcommand("run", "Simulate a scenario and write trajectory.csv and reports");
  add_scenario_options(run, o, true);
  run->add_option("--out", o.out, "Output directory");

  CLI::App* sweep = app.add_subcommand("sweep", "Run every gain preset and tabulate settling times");
  add_scenario_options(sweep, o, true);

  CLI::App* graph = app.add_subcommand("graph-info", "Laplacian, left eigenvector and lambda2");
  graph->add_option("scenario_name", o.positional, "Built-in scenario name or scenario file");
  graph->add_option("--scenario", o.scenario, "Built-in scenario name or scenario file");

  CLI::App* triplets = app.add_subcommand("solve-triplets", "Solve the regulation equations per agent");
  triplets->add_option("scenario_name", o.positional, "Built-in scenario name or scenario file");
  triplets->add_option("--scenario", o.scenario, "Built-in scenario name or scenario file");

  CLI::App* gains = app.add_subcommand("check-gains", "Evaluate the sufficient gain conditions");
  add_scenario_options(gains, o, false);

  CLI::App* oracle = app.add_subcommand("oracle", "Centralized minimizer of the summed costs");
  oracle->add_option("scenario_name", o.positional, "Built-in scenario name or scenario file");
  oracle->add_option("--scenario", o.scenario, "Built-in scenario name or scenario file");

  CLI::App* emit = app.add_subcommand("emit", "Print the resolved scenario in file form");
  add_scenario_options(emit, o, true);

  CLI11_PARSE(app, argc, argv);

  try {
    const ooc::Scenario sc = resolve(o);
    if (run->parsed()) return ooc::command_run(sc, o.out, std::cout);
    if (sweep->parsed()) return ooc::command_sweep(sc, std::cout);
    if (graph->parsed()) return ooc::command_graph_info(sc, std::cout);
    if (triplets->parsed()) return ooc::command_solve_triplets(sc, std::cout);
    if (gains->parsed()) return ooc::command_check_gains(sc, std::cout);
    if (oracle->parsed()) return ooc::command_oracle(sc, std::cout);
    if (emit->parsed()) {
      std::cout << ooc::emit_scenario(sc);
      return 0;
    }
  } catch (const ooc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
