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

#include "ooc/commands.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "ooc/errors.hpp"
#include "ooc/run_report.hpp"
#include "ooc/scenario_io.hpp"

namespace ooc {

namespace {

std::string num(double x) { return fmt::format("{}", x); }

std::string row_text(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (Eigen::Index k = 0; k < v.size(); ++k) out += (k ? ", " : "") + fmt::format("{:.10g}", v(k) + 0.0);
  return out + "]";
}

std::string matrix_text(const Eigen::MatrixXd& m) {
  std::string out = "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) out += (r ? ", " : "") + row_text(m.row(r).transpose());
  return out + "]";
}

}  // namespace

int command_graph_info(const Scenario& sc, std::ostream& out) {
  const Digraph g = build_digraph(sc.edges, sc.nodes);
  fmt::print(out, "scenario            {}\n", sc.name);
  fmt::print(out, "nodes               {}\n", g.size());
  for (const Edge& e : g.edges()) fmt::print(out, "edge                {} -> {} (weight {})\n", e.src, e.dst, num(e.weight));
  const bool connected = is_strongly_connected(g);
  fmt::print(out, "strongly connected  {}\n", connected ? "yes" : "no");
  if (!connected) return 1;
  const SpectralInfo s = spectral_info(g);
  fmt::print(out, "laplacian           {}\n", matrix_text(s.laplacian));
  fmt::print(out, "r                   {}\n", row_text(s.r));
  fmt::print(out, "r_min               {}\n", num(s.r_min));
  fmt::print(out, "||r^T L||           {}\n", num((s.r.transpose() * s.laplacian).norm()));
  fmt::print(out, "sym eigenvalues     {}\n", row_text(s.sym_eigenvalues));
  fmt::print(out, "lambda2             {}\n", num(s.lambda2));
  return 0;
}

int command_solve_triplets(const Scenario& sc, std::ostream& out) {
  int status = 0;
  for (std::size_t i = 0; i < sc.agents.size(); ++i) {
    const AgentSpec& a = sc.agents[i];
    const AgentPlant& p = a.plant;
    fmt::print(out, "agent {} (n = {}, p = {}, q = {})\n", i + 1, p.n(), p.p(), p.q());
    const RankCheck rank = check_regulation_rank(p);
    fmt::print(out, "  rank              {} of {} required{}\n", rank.rank, rank.required, rank.ok ? "" : " (FAILS)");
    if (!rank.ok) {
      status = 1;
      continue;
    }
    const SolutionTriplet t = solve_regulation_equations(p);
    fmt::print(out, "  Upsilon           {}\n", matrix_text(t.Upsilon));
    fmt::print(out, "  Phi               {}\n", matrix_text(t.Phi));
    fmt::print(out, "  Psi               {}\n", matrix_text(t.Psi));
    fmt::print(out, "  residual          {}\n", num(t.residual));
    if (a.triplet) {
      const TripletResiduals r = triplet_residuals(p, a.triplet->Upsilon, a.triplet->Phi, a.triplet->Psi);
      fmt::print(out, "  given triplet     residuals {}, {}, {}\n", num(r.output), num(r.state), num(r.input));
    }
  }
  return status;
}

int command_check_gains(const Scenario& sc, std::ostream& out) {
  std::vector<GainPreset> sets{{"configured", sc.gamma1, sc.gamma2}};
  sets.insert(sets.end(), sc.presets.begin(), sc.presets.end());

  const GainAdvisory base = assess_gains(sc, sc.gamma1, sc.gamma2);
  fmt::print(out, "scenario            {} ({} mode)\n", sc.name, to_string(sc.mode));
  for (std::size_t i = 0; i < base.per_agent.size(); ++i) {
    const auto& c = base.per_agent[i];
    fmt::print(out, "agent {} m, M        {}\n", i + 1,
               c ? num(c->m) + ", " + num(c->M) + (c->provenance == Provenance::Analytic ? " (analytic)" : " (estimated)")
                 : std::string("not convex on its domain box"));
  }
  fmt::print(out, "||C||               {}\n", num(base.inputs.norm_c));
  fmt::print(out, "r_min               {}\n", num(base.inputs.r_min));
  fmt::print(out, "lambda2             {}\n", num(base.inputs.lambda2));
  if (base.verdict == GainAdvisory::Verdict::Rejected) {
    fmt::print(out, "verdict             rejected ({})\n", base.reason);
    fmt::print(out, "note                the conditions are sufficient only; simulations still run\n");
    return 0;
  }
  fmt::print(out, "m, M                {}, {}\n", num(base.inputs.m), num(base.inputs.M));
  for (const GainPreset& g : sets) {
    const GainAdvisory adv = assess_gains(sc, g.gamma1, g.gamma2);
    fmt::print(out, "{:<20}gamma = ({}, {}): {} at delta {} (margins {}, {}, {})\n", g.name, num(g.gamma1),
               num(g.gamma2), to_string(adv.verdict), num(adv.check->delta), num(adv.check->margins[0]),
               num(adv.check->margins[1]), num(adv.check->margins[2]));
  }
  const SuggestedGains s = suggest_gains(base.inputs, sc.mode);
  fmt::print(out, "suggested           gamma1 = {}, gamma2 = {} (delta {})\n", num(s.gamma1), num(s.gamma2),
             num(s.delta));
  return 0;
}

int command_oracle(const Scenario& sc, std::ostream& out) {
  std::vector<CostFunction> costs;
  const std::size_t q = sc.agents.front().plant.q();
  for (const CostSpec& c : sc.costs) costs.push_back(make_cost(c, q));
  const Eigen::VectorXd y = centralized_minimizer(costs);
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(y.size());
  for (const CostFunction& c : costs) grad += c.gradient(y);
  fmt::print(out, "y*                  {}\n", row_text(y));
  fmt::print(out, "||sum grad f_i||    {}\n", num(grad.norm()));
  if (sc.reference_y_star) {
    const double diff = (y - Eigen::VectorXd::Constant(y.size(), *sc.reference_y_star)).norm();
    fmt::print(out, "reference y*        {} ({})\n", num(*sc.reference_y_star),
               diff > sc.tolerance ? "MISMATCH with the oracle, oracle is authoritative" : "agrees");
  }
  return 0;
}

int command_sweep(const Scenario& sc, std::ostream& out) {
  const std::vector<SweepRow> rows = run_sweep(sc);
  fmt::print(out, "{:<10} {:>8} {:>8} {:>14} {:>14} {:>10}\n", "preset", "gamma1", "gamma2",
             fmt::format("settle({})", num(sc.settle_epsilon)), "final error", "converged");
  for (const SweepRow& r : rows) {
    fmt::print(out, "{:<10} {:>8} {:>8} {:>14} {:>14.3e} {:>10}\n", r.preset.name, num(r.preset.gamma1),
               num(r.preset.gamma2), r.settling_time ? fmt::format("{:.3f}", *r.settling_time) : "-",
               r.final_output_error, r.converged ? "yes" : "no");
  }
  fmt::print(out, "settling times strictly decreasing: {}\n", settling_strictly_decreasing(rows) ? "yes" : "no");
  for (const SweepRow& r : rows) {
    if (!r.converged) return 2;
  }
  return 0;
}

int command_run(const Scenario& sc, const std::optional<std::string>& out_dir, std::ostream& out) {
  const RunOutcome run = execute_run(sc);
  if (out_dir) write_run_outputs(run, *out_dir);
  out << human_report(run);
  return run.converged ? 0 : 2;
}

}  // namespace ooc
