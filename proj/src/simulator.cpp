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

#include "ooc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "ooc/errors.hpp"

namespace ooc {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

std::string agent_label(std::size_t i) { return "agent " + std::to_string(i + 1); }

double induced_norm(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

void check_vector(const std::optional<Eigen::VectorXd>& v, std::size_t expected, const std::string& what) {
  if (v && static_cast<std::size_t>(v->size()) != expected) {
    throw Error(ErrorCode::ValidationError,
                what + " has " + std::to_string(v->size()) + " entries, expected " + std::to_string(expected));
  }
}

}  // namespace

bool AgentSpec::operator==(const AgentSpec& o) const {
  return plant == o.plant && same_matrix(K, o.K) && same_matrix(H, o.H) && triplet == o.triplet &&
         same_matrix(x0, o.x0) && same_matrix(xhat0, o.xhat0) && same_matrix(rho0, o.rho0) &&
         same_matrix(v0, o.v0);
}

bool Scenario::operator==(const Scenario& o) const {
  return name == o.name && nodes == o.nodes && edges == o.edges && agents == o.agents && costs == o.costs &&
         mode == o.mode && gamma1 == o.gamma1 && gamma2 == o.gamma2 && auto_gains == o.auto_gains &&
         presets == o.presets && horizon == o.horizon && step == o.step && stride == o.stride &&
         seed == o.seed && tolerance == o.tolerance && settle_epsilon == o.settle_epsilon &&
         reference_y_star == o.reference_y_star;
}

Scenario with_preset(const Scenario& scenario, const std::string& preset) {
  for (const GainPreset& p : scenario.presets) {
    if (p.name == preset) {
      Scenario out = scenario;
      out.gamma1 = p.gamma1;
      out.gamma2 = p.gamma2;
      out.auto_gains = false;
      return out;
    }
  }
  std::string known;
  for (const GainPreset& p : scenario.presets) known += (known.empty() ? "" : ", ") + p.name;
  throw Error(ErrorCode::ValidationError,
              "unknown preset '" + preset + "'" + (known.empty() ? "" : " (known: " + known + ")"));
}

// --------------------------------------------------------------------------
// Assembly

ClosedLoop::ClosedLoop(Scenario scenario, Digraph graph, NumericPolicy policy)
    : scenario_(std::move(scenario)), graph_(std::move(graph)), policy_(policy) {}

ClosedLoop ClosedLoop::assemble(const Scenario& scenario, const NumericPolicy& policy) {
  const std::size_t N = scenario.nodes;
  if (scenario.agents.size() != N || scenario.costs.size() != N) {
    throw Error(ErrorCode::ValidationError, "scenario needs one agent and one cost per graph node (" +
                                                std::to_string(N) + ")");
  }
  if (!(scenario.step > 0.0) || !(scenario.horizon >= scenario.step) || scenario.stride == 0) {
    throw Error(ErrorCode::ValidationError, "simulation needs step > 0, horizon >= step, stride >= 1");
  }
  ClosedLoop loop(scenario, build_digraph(scenario.edges, N), policy);
  loop.spectral_ = spectral_info(loop.graph_, policy);
  loop.mode_ = scenario.mode;

  const std::size_t q = scenario.agents.front().plant.q();
  for (std::size_t i = 0; i < N; ++i) {
    const AgentSpec& spec = scenario.agents[i];
    const std::string label = agent_label(i);
    const AgentPlant& plant = spec.plant;
    if (plant.q() != q) throw Error(ErrorCode::ValidationError, label + ": output dimension differs from agent 1");

    SolutionTriplet triplet;
    bool solved = false;
    if (spec.triplet) {
      triplet = validate_triplet(plant, spec.triplet->Upsilon, spec.triplet->Phi, spec.triplet->Psi, policy);
    } else {
      const RankCheck rank = check_regulation_rank(plant, policy);
      if (!rank.ok) {
        throw Error(ErrorCode::Unsolvable, label + ": regulation rank " + std::to_string(rank.rank) +
                                               " < n + q = " + std::to_string(rank.required));
      }
      triplet = solve_regulation_equations(plant, policy);
      solved = true;
    }

    const bool synth_k = !spec.K.has_value();
    const Eigen::MatrixXd K = synth_k ? synthesize_stabilizing_gain(plant.A(), plant.B(), policy) : *spec.K;
    std::optional<Eigen::MatrixXd> H = spec.H;
    bool synth_h = false;
    if (!H && scenario.mode == ControllerMode::Output) {
      H = synthesize_observer_gain(plant.A(), plant.C(), policy);
      synth_h = true;
    }
    GainSet gains = [&] {
      try {
        return validate_gains(plant, K, H, policy);
      } catch (const Error& e) {
        throw Error(e.code(), label + ": " + e.what());
      }
    }();

    check_vector(spec.x0, plant.n(), label + " x0");
    check_vector(spec.xhat0, plant.n(), label + " xhat0");
    check_vector(spec.rho0, q, label + " rho0");

    loop.agents_.push_back(ResolvedAgent{plant, std::move(triplet), std::move(gains), make_cost(scenario.costs[i], q),
                                         solved, synth_k, synth_h});
  }

  // v(0) is enforced here so a bad file fails before any simulation.
  std::vector<ControllerInit> inits;
  std::vector<std::size_t> dims;
  for (const AgentSpec& a : scenario.agents) {
    inits.push_back({a.rho0, a.v0, a.xhat0});
    dims.push_back(a.plant.n());
  }
  init_controller_states(N, q, dims, scenario.mode, inits);

  loop.coupling_ = {scenario.gamma1, scenario.gamma2};
  if (scenario.auto_gains) {
    const GainAdvisory advisory = assess_gains(scenario, 1.0, 1.0, policy);
    if (advisory.verdict == GainAdvisory::Verdict::Rejected) {
      throw Error(ErrorCode::ValidationError, "auto_gains unavailable: " + advisory.reason);
    }
    const SuggestedGains s = suggest_gains(advisory.inputs, scenario.mode);
    loop.coupling_ = {s.gamma1, s.gamma2};
  }
  if (!(loop.coupling_.gamma1 > 0.0 && loop.coupling_.gamma2 > 0.0)) {
    throw Error(ErrorCode::ValidationError, "controller.gamma1 and controller.gamma2 must be positive");
  }
  if (scenario.step > 0.1 / loop.coupling_.gamma1) {
    std::ostringstream os;
    os << "step " << scenario.step << " exceeds 0.1 / gamma1 = " << 0.1 / loop.coupling_.gamma1;
    loop.warnings_.push_back(os.str());
  }

  StateLayout& lay = loop.layout_;
  lay.agents = N;
  lay.q = q;
  std::size_t offset = 0;
  for (const ResolvedAgent& a : loop.agents_) {
    lay.x_offset.push_back(offset);
    lay.x_size.push_back(a.plant.n());
    offset += a.plant.n();
  }
  if (scenario.mode == ControllerMode::Output) {
    for (const ResolvedAgent& a : loop.agents_) {
      lay.xhat_offset.push_back(offset);
      offset += a.plant.n();
    }
  }
  lay.rho_offset = offset;
  offset += N * q;
  lay.v_offset = offset;
  offset += N * q;
  lay.z_offset = offset;
  offset += N * N;
  lay.dimension = offset;
  return loop;
}

std::vector<CostFunction> ClosedLoop::costs() const {
  std::vector<CostFunction> out;
  for (const ResolvedAgent& a : agents_) out.push_back(a.cost);
  return out;
}

Eigen::VectorXd ClosedLoop::outputs(const Eigen::VectorXd& state) const {
  const std::size_t q = layout_.q;
  Eigen::VectorXd Y(idx(layout_.agents * q));
  for (std::size_t i = 0; i < layout_.agents; ++i) {
    Y.segment(idx(i * q), idx(q)) =
        agents_[i].plant.C() * state.segment(idx(layout_.x_offset[i]), idx(layout_.x_size[i]));
  }
  return Y;
}

Eigen::VectorXd ClosedLoop::derivative(const Eigen::VectorXd& state) const {
  const std::size_t N = layout_.agents;
  const std::size_t q = layout_.q;
  const Eigen::VectorXd Y = outputs(state);
  Eigen::VectorXd d(state.size());

  ControllerState local;
  std::vector<NeighborValue> nb_y, nb_z;
  for (std::size_t i = 0; i < N; ++i) {
    const ResolvedAgent& agent = agents_[i];
    const auto xi = state.segment(idx(layout_.x_offset[i]), idx(layout_.x_size[i]));
    local.rho = state.segment(idx(layout_.rho(i)), idx(q));
    local.v = state.segment(idx(layout_.v(i)), idx(q));
    local.z = state.segment(idx(layout_.z(i)), idx(N));

    nb_y.clear();
    nb_z.clear();
    for (std::size_t j : graph_.in_neighbors(i)) {
      const double a = graph_.weight(i, j);
      nb_y.push_back({a, Y.segment(idx(j * q), idx(q))});
      nb_z.push_back({a, state.segment(idx(layout_.z(j)), idx(N))});
    }

    const LocalAgent law{agent.plant, agent.triplet, agent.gains, agent.cost};
    const Eigen::VectorXd yi = Y.segment(idx(i * q), idx(q));
    Eigen::VectorXd u;
    if (mode_ == ControllerMode::State) {
      local.xhat.reset();
      StateFeedbackDerivatives sd = state_feedback_derivatives(i, xi, yi, nb_y, nb_z, local, law, coupling_, policy_);
      u = std::move(sd.u);
      d.segment(idx(layout_.rho(i)), idx(q)) = sd.drho;
      d.segment(idx(layout_.v(i)), idx(q)) = sd.dv;
      d.segment(idx(layout_.z(i)), idx(N)) = sd.dz;
    } else {
      local.xhat = state.segment(idx(layout_.xhat_offset[i]), idx(layout_.x_size[i]));
      OutputFeedbackDerivatives od = output_feedback_derivatives(i, yi, nb_y, nb_z, local, law, coupling_, policy_);
      u = std::move(od.u);
      d.segment(idx(layout_.xhat_offset[i]), idx(layout_.x_size[i])) = od.dxhat;
      d.segment(idx(layout_.rho(i)), idx(q)) = od.drho;
      d.segment(idx(layout_.v(i)), idx(q)) = od.dv;
      d.segment(idx(layout_.z(i)), idx(N)) = od.dz;
    }
    d.segment(idx(layout_.x_offset[i]), idx(layout_.x_size[i])) = agent.plant.A() * xi + agent.plant.B() * u;
  }
  return d;
}

Eigen::VectorXd ClosedLoop::initial_state() const {
  const std::size_t N = layout_.agents;
  const std::size_t q = layout_.q;
  std::mt19937_64 rng(scenario_.seed);
  std::uniform_real_distribution<double> draw(kInitialLower, kInitialUpper);
  auto random_vector = [&](std::size_t n) {
    Eigen::VectorXd v(idx(n));
    for (Index k = 0; k < v.size(); ++k) v(k) = draw(rng);
    return v;
  };

  // Draw order is fixed (all x, then all rho, then all xhat) so that state
  // and output mode see the same x(0) and rho(0) for one seed.
  std::vector<Eigen::VectorXd> x0, rho0, xhat0;
  for (std::size_t i = 0; i < N; ++i) x0.push_back(random_vector(layout_.x_size[i]));
  for (std::size_t i = 0; i < N; ++i) rho0.push_back(random_vector(q));
  for (std::size_t i = 0; i < N; ++i) xhat0.push_back(random_vector(layout_.x_size[i]));

  Eigen::VectorXd s = Eigen::VectorXd::Zero(idx(layout_.dimension));
  for (std::size_t i = 0; i < N; ++i) {
    const AgentSpec& spec = scenario_.agents[i];
    s.segment(idx(layout_.x_offset[i]), idx(layout_.x_size[i])) = spec.x0 ? *spec.x0 : x0[i];
    s.segment(idx(layout_.rho(i)), idx(q)) = spec.rho0 ? *spec.rho0 : rho0[i];
    if (mode_ == ControllerMode::Output) {
      s.segment(idx(layout_.xhat_offset[i]), idx(layout_.x_size[i])) = spec.xhat0 ? *spec.xhat0 : xhat0[i];
    }
    s(idx(layout_.z(i) + i)) = 1.0;
  }
  return s;
}

// --------------------------------------------------------------------------
// Integration

Trajectory integrate(const OdeRhs& rhs, const Eigen::VectorXd& initial, double h, double horizon,
                     std::size_t stride) {
  if (!(h > 0.0) || !(horizon >= h) || stride == 0) {
    throw Error(ErrorCode::ValidationError, "integrate needs h > 0, T >= h, stride >= 1");
  }
  const auto steps = static_cast<std::size_t>(std::floor(horizon / h + 1e-9));
  const std::size_t rows = steps / stride + 1;

  Trajectory traj;
  traj.times.resize(idx(rows));
  traj.states.resize(idx(rows), initial.size());
  traj.times(0) = 0.0;
  traj.states.row(0) = initial.transpose();

  Eigen::VectorXd x = initial;
  std::size_t row = 1;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * h;
    try {
      const Eigen::VectorXd k1 = rhs(t, x);
      const Eigen::VectorXd k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1);
      const Eigen::VectorXd k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2);
      const Eigen::VectorXd k4 = rhs(t + h, x + h * k3);
      x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZGuardViolated) throw;
      std::ostringstream os;
      os << e.what() << " at t = " << t;
      throw Error(ErrorCode::ZGuardViolated, os.str());
    }
    if (!x.allFinite()) {
      std::ostringstream os;
      os << "non-finite state at t = " << t + h;
      throw Error(ErrorCode::NumericalBlowup, os.str());
    }
    if ((k + 1) % stride == 0 && row < rows) {
      traj.times(idx(row)) = static_cast<double>(k + 1) * h;
      traj.states.row(idx(row)) = x.transpose();
      ++row;
    }
  }
  return traj;
}

Trajectory simulate(const ClosedLoop& loop, const Eigen::VectorXd& initial) {
  const Scenario& sc = loop.scenario();
  Trajectory traj = integrate([&loop](double, const Eigen::VectorXd& x) { return loop.derivative(x); }, initial,
                              sc.step, sc.horizon, sc.stride);
  traj.layout = loop.layout();
  return traj;
}

Trajectory simulate(const ClosedLoop& loop) { return simulate(loop, loop.initial_state()); }

// --------------------------------------------------------------------------
// Metrics

Eigen::VectorXd output_errors(const Trajectory& traj, const ClosedLoop& loop, const Eigen::VectorXd& y_star) {
  const std::size_t N = loop.layout().agents;
  const std::size_t q = loop.layout().q;
  Eigen::VectorXd err(traj.states.rows());
  for (Index r = 0; r < traj.states.rows(); ++r) {
    const Eigen::VectorXd Y = loop.outputs(traj.states.row(r).transpose());
    double worst = 0.0;
    for (std::size_t i = 0; i < N; ++i) worst = std::max(worst, (Y.segment(idx(i * q), idx(q)) - y_star).norm());
    err(r) = worst;
  }
  return err;
}

std::optional<double> settling_time(const Eigen::VectorXd& times, const Eigen::VectorXd& error, double eps) {
  Index last_above = -1;
  for (Index k = 0; k < error.size(); ++k) {
    if (!(error(k) < eps)) last_above = k;
  }
  if (last_above < 0) return times(0);
  if (last_above + 1 >= error.size()) return std::nullopt;
  return times(last_above + 1);
}

LogLinearFit fit_log_linear(const Eigen::VectorXd& times, const Eigen::VectorXd& error, double floor) {
  std::vector<double> ts, ls;
  for (Index k = 0; k < error.size(); ++k) {
    if (error(k) > floor && error(k) > 0.0) {
      ts.push_back(times(k));
      ls.push_back(std::log(error(k)));
    }
  }
  LogLinearFit fit;
  fit.samples = ts.size();
  if (ts.size() < 2) return fit;
  const double n = static_cast<double>(ts.size());
  double mt = 0.0, ml = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    mt += ts[k];
    ml += ls[k];
  }
  mt /= n;
  ml /= n;
  double stt = 0.0, stl = 0.0, sll = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    stt += (ts[k] - mt) * (ts[k] - mt);
    stl += (ts[k] - mt) * (ls[k] - ml);
    sll += (ls[k] - ml) * (ls[k] - ml);
  }
  fit.slope = stl / stt;
  fit.r2 = sll > 0.0 ? (stl * stl) / (stt * sll) : 1.0;
  return fit;
}

std::optional<LogLinearFit> fit_log_decay(const Eigen::VectorXd& times, const Eigen::VectorXd& error, double upper,
                                          double lower) {
  // Window: from the last sample at or above `upper` to the first sample
  // after which the error stays below `lower` (or the end of the record).
  Index start = 0, end = error.size() - 1;
  for (Index k = 0; k < error.size(); ++k) {
    if (error(k) >= upper) start = k;
  }
  for (Index k = error.size() - 1; k >= 0; --k) {
    if (error(k) >= lower) {
      end = std::min<Index>(k + 1, error.size() - 1);
      break;
    }
  }
  if (end - start + 1 < 20) return std::nullopt;
  const Eigen::VectorXd t = times.segment(start, end - start + 1);
  const Eigen::VectorXd e = error.segment(start, end - start + 1);
  if (e.minCoeff() <= 0.0 || std::log10(e.maxCoeff() / e.minCoeff()) < 2.0) return std::nullopt;
  LogLinearFit fit = fit_log_linear(t, e);
  if (fit.samples < 20) return std::nullopt;
  return fit;
}

Metrics compute_metrics(const Trajectory& traj, const ClosedLoop& loop, const Eigen::VectorXd& y_star,
                        double settle_epsilon) {
  const StateLayout& lay = loop.layout();
  const std::size_t N = lay.agents;
  const std::size_t q = lay.q;
  const Eigen::VectorXd& r = loop.spectral().r;
  const Index last = traj.states.rows() - 1;

  Metrics m;
  m.y_star = y_star;
  m.settle_epsilon = settle_epsilon;
  const Eigen::VectorXd err = output_errors(traj, loop, y_star);
  m.final_output_error = err(last);
  m.settling_time = settling_time(traj.times, err, settle_epsilon);
  m.decay_fit = fit_log_decay(traj.times, err);

  auto weighted_z = [&](Index row) {
    Eigen::VectorXd s = Eigen::VectorXd::Zero(idx(N));
    for (std::size_t i = 0; i < N; ++i) s += r(idx(i)) * traj.states.row(row).segment(idx(lay.z(i)), idx(N)).transpose();
    return s;
  };
  const Eigen::VectorXd wz0 = weighted_z(0);
  m.z_positivity_min = std::numeric_limits<double>::infinity();
  for (Index row = 0; row <= last; ++row) {
    Eigen::VectorXd rv = Eigen::VectorXd::Zero(idx(q));
    for (std::size_t i = 0; i < N; ++i) rv += r(idx(i)) * traj.states.row(row).segment(idx(lay.v(i)), idx(q)).transpose();
    m.rv_drift = std::max(m.rv_drift, rv.norm());
    m.z_weighted_drift = std::max(m.z_weighted_drift, (weighted_z(row) - wz0).norm());
    for (std::size_t i = 0; i < N; ++i) {
      m.z_positivity_min = std::min(m.z_positivity_min, traj.states(row, idx(lay.z(i) + i)));
    }
  }

  const Eigen::VectorXd final_state = traj.states.row(last).transpose();
  Eigen::VectorXd z_target(idx(N * N));
  for (std::size_t i = 0; i < N; ++i) z_target.segment(idx(i * N), idx(N)) = r;
  m.z_eigvec_error = (final_state.segment(idx(lay.z_offset), idx(N * N)) - z_target).norm();

  if (loop.mode() == ControllerMode::Output) {
    double sq = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      sq += (final_state.segment(idx(lay.x_offset[i]), idx(lay.x_size[i])) -
             final_state.segment(idx(lay.xhat_offset[i]), idx(lay.x_size[i])))
                .squaredNorm();
    }
    m.observer_error_final = std::sqrt(sq);
  }

  const Eigen::VectorXd Y = loop.outputs(final_state);
  Eigen::VectorXd grad_sum = Eigen::VectorXd::Zero(idx(q));
  for (std::size_t i = 0; i < N; ++i) grad_sum += loop.agents()[i].cost.gradient(Y.segment(idx(i * q), idx(q)));
  m.optimality_residual = grad_sum.norm();
  return m;
}

Eigen::VectorXd equilibrium_state(const ClosedLoop& loop, const Eigen::VectorXd& y_star) {
  const StateLayout& lay = loop.layout();
  const std::size_t N = lay.agents;
  const std::size_t q = lay.q;
  const Eigen::VectorXd& r = loop.spectral().r;
  Eigen::VectorXd s = Eigen::VectorXd::Zero(idx(lay.dimension));
  for (std::size_t i = 0; i < N; ++i) {
    const ResolvedAgent& a = loop.agents()[i];
    const Eigen::VectorXd x = a.triplet.Psi * y_star;
    s.segment(idx(lay.x_offset[i]), idx(lay.x_size[i])) = x;
    if (loop.mode() == ControllerMode::Output) s.segment(idx(lay.xhat_offset[i]), idx(lay.x_size[i])) = x;
    s.segment(idx(lay.rho(i)), idx(q)) = y_star;
    s.segment(idx(lay.v(i)), idx(q)) = -a.cost.gradient(y_star) / (loop.coupling().gamma2 * r(idx(i)));
    s.segment(idx(lay.z(i)), idx(N)) = r;
  }
  return s;
}

// --------------------------------------------------------------------------
// Gain advisory

std::string to_string(GainAdvisory::Verdict verdict) {
  switch (verdict) {
    case GainAdvisory::Verdict::Feasible: return "feasible";
    case GainAdvisory::Verdict::Infeasible: return "infeasible";
    case GainAdvisory::Verdict::Rejected: return "rejected";
  }
  return "unknown";
}

GainAdvisory assess_gains(const Scenario& scenario, double gamma1, double gamma2, const NumericPolicy& policy) {
  if (scenario.agents.empty() || scenario.costs.size() != scenario.agents.size()) {
    throw Error(ErrorCode::ValidationError, "scenario needs one cost per agent");
  }
  const Digraph g = build_digraph(scenario.edges, scenario.nodes);
  const SpectralInfo spec = spectral_info(g, policy);
  const std::size_t q = scenario.agents.front().plant.q();

  GainAdvisory out;
  out.inputs.r_min = spec.r_min;
  out.inputs.lambda2 = spec.lambda2;
  out.inputs.m = std::numeric_limits<double>::infinity();
  for (const AgentSpec& a : scenario.agents) out.inputs.norm_c = std::max(out.inputs.norm_c, induced_norm(a.plant.C()));

  std::string problems;
  for (std::size_t i = 0; i < scenario.costs.size(); ++i) {
    const CostFunction cost = make_cost(scenario.costs[i], q);
    std::optional<ConvexityConstants> c = cost.constants();
    if (!c) {
      try {
        c = estimate_convexity_constants(cost, effective_box(scenario.costs[i], q), 200, policy);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NonConvexDetected && e.code() != ErrorCode::DomainError) throw;
        problems += (problems.empty() ? "" : "; ") + agent_label(i) + " cost is not convex on its domain box";
      }
    }
    out.per_agent.push_back(c);
    if (c) {
      out.inputs.m = std::min(out.inputs.m, c->m);
      out.inputs.M = std::max(out.inputs.M, c->M);
    }
  }
  if (!problems.empty()) {
    out.verdict = GainAdvisory::Verdict::Rejected;
    out.reason = problems;
    return out;
  }
  if (!(out.inputs.m > policy.m_floor)) {
    out.verdict = GainAdvisory::Verdict::Rejected;
    std::ostringstream os;
    os << "estimated m = " << out.inputs.m << " is below m_floor = " << policy.m_floor;
    out.reason = os.str();
    return out;
  }
  out.check = check_gain_conditions(out.inputs, gamma1, gamma2, scenario.mode);
  out.verdict = out.check->feasible ? GainAdvisory::Verdict::Feasible : GainAdvisory::Verdict::Infeasible;
  return out;
}

}  // namespace ooc
