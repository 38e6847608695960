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

#include "ooc/controller.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ooc/errors.hpp"

namespace ooc {

namespace {

using Index = Eigen::Index;

// Observer mode doubles the ||C||^2 term in the first two conditions.
double c_weight(ControllerMode mode) { return mode == ControllerMode::Output ? 2.0 : 1.0; }

double delta_lower_bound(const GainConditionInputs& in, ControllerMode mode) {
  return (in.M * in.M + c_weight(mode) * in.norm_c * in.norm_c) / (2.0 * in.m);
}

std::array<double, 3> margins_at(const GainConditionInputs& in, double gamma1, double gamma2, double delta,
                                 ControllerMode mode) {
  const double c2 = in.norm_c * in.norm_c;
  const double w = c_weight(mode);
  return {
      2.0 * in.m - (in.M * in.M + w * c2) / delta,
      gamma2 * in.r_min - 1.25 * delta - w * c2 / (4.0 * delta),
      gamma1 * in.lambda2 - gamma2 * gamma2 / delta,
  };
}

void require_positive(const GainConditionInputs& in) {
  if (!(in.m > 0.0 && in.M > 0.0 && in.norm_c > 0.0 && in.r_min > 0.0 && in.lambda2 > 0.0)) {
    throw Error(ErrorCode::ValidationError, "gain conditions need positive m, M, ||C||, r_min, lambda2");
  }
}

// Shared part of both laws: omega, v', z'.
struct ConsensusTerms {
  Eigen::VectorXd omega;
  Eigen::VectorXd dv;
  Eigen::VectorXd dz;
};

ConsensusTerms consensus_terms(std::size_t index, const Eigen::VectorXd& y,
                               std::span<const NeighborValue> neighbor_outputs,
                               std::span<const NeighborValue> neighbor_z, const ControllerState& state,
                               const CostFunction& cost, CouplingGains gains, const NumericPolicy& policy) {
  const double z_own = state.z(static_cast<Index>(index));
  if (!(z_own > policy.z_guard)) {
    throw Error(ErrorCode::ZGuardViolated,
                "agent " + std::to_string(index + 1) + " has z_i^i = " + std::to_string(z_own));
  }
  Eigen::VectorXd disagreement = Eigen::VectorXd::Zero(y.size());
  for (const NeighborValue& nb : neighbor_outputs) disagreement += nb.weight * (y - nb.value);
  Eigen::VectorXd dz = Eigen::VectorXd::Zero(state.z.size());
  for (const NeighborValue& nb : neighbor_z) dz -= nb.weight * (state.z - nb.value);

  ConsensusTerms t;
  t.omega = -cost.gradient(y) / z_own - gains.gamma1 * disagreement - gains.gamma2 * state.v;
  t.dv = gains.gamma1 * disagreement;
  t.dz = std::move(dz);
  return t;
}

Eigen::VectorXd control_input(const LocalAgent& agent, const Eigen::VectorXd& x, const Eigen::VectorXd& omega,
                              const Eigen::VectorXd& rho) {
  const Eigen::MatrixXd& K = agent.gains.K;
  const SolutionTriplet& t = agent.triplet;
  return -K * x + t.Upsilon * omega - (t.Phi - K * t.Psi) * rho;
}

}  // namespace

std::vector<ControllerState> init_controller_states(std::size_t agent_count, std::size_t q,
                                                    const std::vector<std::size_t>& state_dims,
                                                    ControllerMode mode,
                                                    const std::vector<ControllerInit>& inits) {
  if (state_dims.size() != agent_count || (!inits.empty() && inits.size() != agent_count)) {
    throw Error(ErrorCode::ShapeMismatch, "one state dimension and init entry per agent");
  }
  const auto N = static_cast<Index>(agent_count);
  const auto qi = static_cast<Index>(q);
  std::vector<ControllerState> states(agent_count);
  for (std::size_t i = 0; i < agent_count; ++i) {
    const ControllerInit* init = inits.empty() ? nullptr : &inits[i];
    const std::string agent = "agent " + std::to_string(i + 1);
    ControllerState& s = states[i];

    if (init && init->v0 && (init->v0->size() != qi || !init->v0->isZero(0.0))) {
      throw Error(ErrorCode::ConfigOverridesV0, agent + ": v(0) must be omitted or zero");
    }
    s.v = Eigen::VectorXd::Zero(qi);
    s.z = Eigen::VectorXd::Unit(N, static_cast<Index>(i));

    s.rho = Eigen::VectorXd::Zero(qi);
    if (init && init->rho0) {
      if (init->rho0->size() != qi) throw Error(ErrorCode::ShapeMismatch, agent + ": rho0 must have q entries");
      s.rho = *init->rho0;
    }
    if (mode == ControllerMode::Output) {
      const auto n = static_cast<Index>(state_dims[i]);
      s.xhat = Eigen::VectorXd::Zero(n);
      if (init && init->xhat0) {
        if (init->xhat0->size() != n) throw Error(ErrorCode::ShapeMismatch, agent + ": xhat0 must have n entries");
        s.xhat = *init->xhat0;
      }
    }
  }
  return states;
}

StateFeedbackDerivatives state_feedback_derivatives(std::size_t index, const Eigen::VectorXd& x,
                                                    const Eigen::VectorXd& own_output,
                                                    std::span<const NeighborValue> neighbor_outputs,
                                                    std::span<const NeighborValue> neighbor_z,
                                                    const ControllerState& state, const LocalAgent& agent,
                                                    CouplingGains gains, const NumericPolicy& policy) {
  ConsensusTerms t =
      consensus_terms(index, own_output, neighbor_outputs, neighbor_z, state, agent.cost, gains, policy);
  StateFeedbackDerivatives d;
  d.u = control_input(agent, x, t.omega, state.rho);
  d.drho = std::move(t.omega);
  d.dv = std::move(t.dv);
  d.dz = std::move(t.dz);
  return d;
}

OutputFeedbackDerivatives output_feedback_derivatives(std::size_t index, const Eigen::VectorXd& measured_output,
                                                      std::span<const NeighborValue> neighbor_outputs,
                                                      std::span<const NeighborValue> neighbor_z,
                                                      const ControllerState& state, const LocalAgent& agent,
                                                      CouplingGains gains, const NumericPolicy& policy) {
  if (!state.xhat) throw Error(ErrorCode::ValidationError, "output feedback needs an observer state");
  if (!agent.gains.H) throw Error(ErrorCode::ValidationError, "output feedback needs an observer gain H");
  const Eigen::VectorXd& xhat = *state.xhat;
  const AgentPlant& plant = agent.plant;

  ConsensusTerms t =
      consensus_terms(index, measured_output, neighbor_outputs, neighbor_z, state, agent.cost, gains, policy);
  OutputFeedbackDerivatives d;
  d.u = control_input(agent, xhat, t.omega, state.rho);
  d.dxhat = plant.A() * xhat + plant.B() * d.u + *agent.gains.H * (measured_output - plant.C() * xhat);
  d.drho = std::move(t.omega);
  d.dv = std::move(t.dv);
  d.dz = std::move(t.dz);
  return d;
}

GainCheck check_gain_conditions(const GainConditionInputs& in, double gamma1, double gamma2,
                                ControllerMode mode) {
  require_positive(in);
  if (!(gamma1 > 0.0 && gamma2 > 0.0)) throw Error(ErrorCode::ValidationError, "gamma1, gamma2 must be positive");

  constexpr int kGrid = 200;
  GainCheck out;
  out.delta_lower = delta_lower_bound(in, mode);
  const double lo = std::log(out.delta_lower * (1.0 + 1e-6));
  const double hi = std::log(out.delta_lower * 1e4);

  double best_feasible = -std::numeric_limits<double>::infinity();
  double best_any = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < kGrid; ++k) {
    const double delta = std::exp(lo + (hi - lo) * k / (kGrid - 1));
    const auto m = margins_at(in, gamma1, gamma2, delta, mode);
    const double worst = std::min({m[0], m[1], m[2]});
    const bool ok = m[0] > 0.0 && m[1] > 0.0 && m[2] > 0.0;
    if (ok && worst > best_feasible) {
      best_feasible = worst;
      out.feasible = true;
      out.delta = delta;
      out.margins = m;
    }
    if (!out.feasible && worst > best_any) {
      best_any = worst;
      out.delta = delta;
      out.margins = m;
    }
  }
  return out;
}

SuggestedGains suggest_gains(const GainConditionInputs& in, ControllerMode mode) {
  require_positive(in);
  const double c2 = in.norm_c * in.norm_c;
  SuggestedGains s;
  s.delta = 2.0 * delta_lower_bound(in, mode);
  s.gamma2 = 2.0 * (5.0 * s.delta * s.delta + c_weight(mode) * c2) / (4.0 * s.delta * in.r_min);
  s.gamma1 = 2.0 * s.gamma2 * s.gamma2 / (in.lambda2 * s.delta);
  return s;
}

}  // namespace ooc
