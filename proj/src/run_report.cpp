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

#include "ooc/run_report.hpp"

#include <chrono>
#include <fstream>
#include <future>

#include <fmt/format.h>

#include "ooc/errors.hpp"
#include "ooc/scenario_io.hpp"

namespace ooc {

namespace {

std::string num(double x) { return fmt::format("{}", x); }

std::string vec_text(const Eigen::VectorXd& v) {
  if (v.size() == 1) return num(v(0));
  std::string out = "(";
  for (Eigen::Index k = 0; k < v.size(); ++k) out += (k ? ", " : "") + num(v(k));
  return out + ")";
}

std::string opt_text(const std::optional<double>& x, const char* none = "none") { return x ? num(*x) : none; }

void write_file(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot rename " + tmp.string() + ": " + ec.message());
}

}  // namespace

RunOutcome execute_run(const Scenario& scenario, const NumericPolicy& policy) {
  const auto start = std::chrono::steady_clock::now();
  ClosedLoop loop = ClosedLoop::assemble(scenario, policy);
  const Eigen::VectorXd y_star = centralized_minimizer(loop.costs());
  Trajectory traj = simulate(loop);
  Metrics metrics = compute_metrics(traj, loop, y_star, scenario.settle_epsilon);
  GainAdvisory advisory = assess_gains(scenario, loop.coupling().gamma1, loop.coupling().gamma2, policy);
  const bool converged = metrics.final_output_error <= scenario.tolerance;
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return RunOutcome{scenario,          std::move(loop), y_star,    std::move(traj),
                    std::move(metrics), std::move(advisory), converged, seconds};
}

bool reference_mismatch(const RunOutcome& run) {
  if (!run.scenario.reference_y_star) return false;
  const Eigen::VectorXd ref = Eigen::VectorXd::Constant(run.y_star.size(), *run.scenario.reference_y_star);
  return (ref - run.y_star).norm() > run.scenario.tolerance;
}

std::string trajectory_csv(const RunOutcome& run) {
  const StateLayout& lay = run.loop.layout();
  std::string out = "t";
  for (std::size_t i = 0; i < lay.agents; ++i) {
    for (std::size_t c = 0; c < lay.q; ++c) out += fmt::format(",y_{}_{}", i + 1, c + 1);
  }
  out += ",err\n";
  const Eigen::VectorXd target = run.y_star.replicate(static_cast<Eigen::Index>(lay.agents), 1);
  const Trajectory& tr = run.trajectory;
  for (Eigen::Index r = 0; r < tr.states.rows(); ++r) {
    const Eigen::VectorXd Y = run.loop.outputs(tr.states.row(r).transpose());
    out += num(tr.times(r));
    for (Eigen::Index k = 0; k < Y.size(); ++k) out += "," + num(Y(k));
    out += "," + num((Y - target).norm()) + "\n";
  }
  return out;
}

std::string human_report(const RunOutcome& run) {
  const Scenario& sc = run.scenario;
  const Metrics& m = run.metrics;
  std::string out;
  auto line = [&out](const std::string& label, const std::string& value) {
    out += fmt::format("{:<28}{}\n", label, value);
  };

  out += "ooc run report\n\n";
  line("tool version", kToolVersion);
  line("scenario", sc.name);
  line("controller", to_string(sc.mode));
  line("gamma1, gamma2", num(run.loop.coupling().gamma1) + ", " + num(run.loop.coupling().gamma2) +
                             (sc.auto_gains ? " (auto)" : ""));
  line("step, horizon, stride", num(sc.step) + ", " + num(sc.horizon) + ", " + std::to_string(sc.stride));
  line("seed", std::to_string(sc.seed));
  out += "\n";
  line("oracle y*", vec_text(run.y_star));
  if (sc.reference_y_star) {
    line("reference y*", num(*sc.reference_y_star));
    line("reference check", reference_mismatch(run)
                                ? "MISMATCH: reference differs from the oracle; the oracle is used"
                                : "agrees with the oracle");
  }
  line("final output error", num(m.final_output_error));
  line("converged", std::string(run.converged ? "yes" : "no") + " (tolerance " + num(sc.tolerance) + ")");
  line("settling time", opt_text(m.settling_time, "not settled") + " (epsilon " + num(m.settle_epsilon) + ")");
  if (m.decay_fit) {
    line("decay fit slope", num(m.decay_fit->slope) + " per s");
    line("decay fit r2", num(m.decay_fit->r2) + " (" + std::to_string(m.decay_fit->samples) + " samples)");
  } else {
    line("decay fit", "not available (window too short)");
  }
  line("optimality residual", num(m.optimality_residual));
  line("rv drift", num(m.rv_drift));
  line("weighted z drift", num(m.z_weighted_drift));
  line("min z_i^i", num(m.z_positivity_min));
  line("z eigenvector error", num(m.z_eigvec_error));
  if (m.observer_error_final) line("observer error final", num(*m.observer_error_final));

  out += "\ngain conditions\n";
  const GainAdvisory& adv = run.advisory;
  line("verdict", to_string(adv.verdict) + (adv.reason.empty() ? "" : " (" + adv.reason + ")"));
  for (std::size_t i = 0; i < adv.per_agent.size(); ++i) {
    const auto& c = adv.per_agent[i];
    line("agent " + std::to_string(i + 1) + " m, M",
         c ? num(c->m) + ", " + num(c->M) + (c->provenance == Provenance::Analytic ? " (analytic)" : " (estimated)")
           : "not convex on its domain box");
  }
  line("||C||, r_min, lambda2",
       num(adv.inputs.norm_c) + ", " + num(adv.inputs.r_min) + ", " + num(adv.inputs.lambda2));
  if (adv.check) {
    line("delta", num(adv.check->delta) + " (lower bound " + num(adv.check->delta_lower) + ")");
    line("margins", num(adv.check->margins[0]) + ", " + num(adv.check->margins[1]) + ", " +
                        num(adv.check->margins[2]));
  }

  out += "\nagents\n";
  for (std::size_t i = 0; i < run.loop.agents().size(); ++i) {
    const ResolvedAgent& a = run.loop.agents()[i];
    std::string info = "triplet " + std::string(a.triplet_solved ? "solved" : "given") + ", K " +
                       (a.k_synthesized ? "synthesized" : "given");
    if (a.gains.H) info += std::string(", H ") + (a.h_synthesized ? "synthesized" : "given");
    info += ", abscissa " + num(a.gains.spectral_abscissa_closed);
    if (a.gains.spectral_abscissa_observer) info += " / " + num(*a.gains.spectral_abscissa_observer);
    line("agent " + std::to_string(i + 1), info);
  }

  if (!run.loop.warnings().empty()) {
    out += "\nwarnings\n";
    for (const std::string& w : run.loop.warnings()) out += "  " + w + "\n";
  }
  out += "\n";
  line("wall clock", fmt::format("{:.3f} s", run.wall_seconds));
  out += "\nconfiguration\n\n" + emit_scenario(sc);
  return out;
}

std::string kv_report(const RunOutcome& run) {
  const Scenario& sc = run.scenario;
  const Metrics& m = run.metrics;
  std::string out;
  auto kv = [&out](const std::string& k, const std::string& v) { out += k + "=" + v + "\n"; };

  kv("tool_version", kToolVersion);
  kv("scenario", sc.name);
  kv("controller", to_string(sc.mode));
  kv("gamma1", num(run.loop.coupling().gamma1));
  kv("gamma2", num(run.loop.coupling().gamma2));
  kv("auto_gains", sc.auto_gains ? "true" : "false");
  kv("step", num(sc.step));
  kv("horizon", num(sc.horizon));
  kv("stride", std::to_string(sc.stride));
  kv("seed", std::to_string(sc.seed));
  kv("tolerance", num(sc.tolerance));
  for (Eigen::Index k = 0; k < run.y_star.size(); ++k) kv(fmt::format("y_star_{}", k + 1), num(run.y_star(k)));
  if (sc.reference_y_star) {
    kv("reference_y_star", num(*sc.reference_y_star));
    kv("reference_mismatch", reference_mismatch(run) ? "true" : "false");
  }
  kv("final_output_error", num(m.final_output_error));
  kv("converged", run.converged ? "true" : "false");
  kv("settle_epsilon", num(m.settle_epsilon));
  kv("settling_time", opt_text(m.settling_time));
  kv("decay_slope", m.decay_fit ? num(m.decay_fit->slope) : "none");
  kv("decay_r2", m.decay_fit ? num(m.decay_fit->r2) : "none");
  kv("optimality_residual", num(m.optimality_residual));
  kv("rv_drift", num(m.rv_drift));
  kv("z_weighted_drift", num(m.z_weighted_drift));
  kv("z_positivity_min", num(m.z_positivity_min));
  kv("z_eigvec_error", num(m.z_eigvec_error));
  if (m.observer_error_final) kv("observer_error_final", num(*m.observer_error_final));
  kv("gain_verdict", to_string(run.advisory.verdict));
  if (run.advisory.check) {
    kv("gain_delta", num(run.advisory.check->delta));
    for (int k = 0; k < 3; ++k) kv(fmt::format("gain_margin_{}", k + 1), num(run.advisory.check->margins[k]));
  }
  kv("warnings", std::to_string(run.loop.warnings().size()));
  kv("wall_seconds", fmt::format("{:.3f}", run.wall_seconds));
  return out;
}

void write_run_outputs(const RunOutcome& run, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "trajectory.csv", trajectory_csv(run));
  write_file(dir / "report.txt", human_report(run));
  write_file(dir / "report.kv", kv_report(run));
}

std::vector<SweepRow> run_sweep(const Scenario& scenario, const NumericPolicy& policy) {
  if (scenario.presets.empty()) {
    throw Error(ErrorCode::ValidationError, "scenario '" + scenario.name + "' defines no gain presets");
  }
  std::vector<std::future<SweepRow>> jobs;
  for (const GainPreset& p : scenario.presets) {
    jobs.push_back(std::async(std::launch::async, [&scenario, &policy, p] {
      const RunOutcome run = execute_run(with_preset(scenario, p.name), policy);
      return SweepRow{p, run.metrics.settling_time, run.metrics.final_output_error, run.converged};
    }));
  }
  std::vector<SweepRow> rows;
  for (auto& job : jobs) rows.push_back(job.get());
  return rows;
}

bool settling_strictly_decreasing(const std::vector<SweepRow>& rows) {
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (!rows[k].settling_time) return false;
    if (k > 0 && !(*rows[k].settling_time < *rows[k - 1].settling_time)) return false;
  }
  return true;
}

}  // namespace ooc
