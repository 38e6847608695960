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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ooc/costmodel.hpp"
#include "ooc/numeric_policy.hpp"
#include "ooc/plantmodel.hpp"

namespace ooc {

enum class ControllerMode { State, Output };

/// Per-agent auxiliary controller variables.
struct ControllerState {
  Eigen::VectorXd rho;                  // R^q
  Eigen::VectorXd v;                    // R^q, starts at zero
  Eigen::VectorXd z;                    // R^N, starts at the agent's unit vector
  std::optional<Eigen::VectorXd> xhat;  // R^n, observer mode only
};

/// Optional per-agent initial values from a scenario.
struct ControllerInit {
  std::optional<Eigen::VectorXd> rho0;
  std::optional<Eigen::VectorXd> v0;  // accepted only if identically zero
  std::optional<Eigen::VectorXd> xhat0;
};

/// rho = configured (default 0), v = 0, z_i = e_i, xhat = configured (default
/// 0) in output mode. Throws ConfigOverridesV0 if any v0 is non-zero.
std::vector<ControllerState> init_controller_states(std::size_t agent_count, std::size_t q,
                                                    const std::vector<std::size_t>& state_dims,
                                                    ControllerMode mode,
                                                    const std::vector<ControllerInit>& inits = {});

/// Everything agent i knows about itself.
struct LocalAgent {
  const AgentPlant& plant;
  const SolutionTriplet& triplet;
  const GainSet& gains;
  const CostFunction& cost;
};

struct CouplingGains {
  double gamma1 = 1.0;
  double gamma2 = 1.0;
};

/// A value received from in-neighbour j together with the edge weight a_ij.
struct NeighborValue {
  double weight = 0.0;
  Eigen::VectorXd value;
};

struct StateFeedbackDerivatives {
  Eigen::VectorXd u;
  Eigen::VectorXd drho;
  Eigen::VectorXd dv;
  Eigen::VectorXd dz;
};

struct OutputFeedbackDerivatives {
  Eigen::VectorXd u;
  Eigen::VectorXd dxhat;
  Eigen::VectorXd drho;
  Eigen::VectorXd dv;
  Eigen::VectorXd dz;
};

/// Distributed state-feedback law for agent `index` (0-based):
///
///   omega = -grad f(y_i) / z_i^i - gamma1 sum_j a_ij (y_i - y_j) - gamma2 v_i
///   u     = -K x_i + Upsilon omega - (Phi - K Psi) rho_i
///   rho'  = omega,  v' = gamma1 sum_j a_ij (y_i - y_j),  z' = -sum_j a_ij (z_i - z_j)
///
/// Only the agent's own data and its in-neighbours' outputs and z vectors are
/// visible here. Throws ZGuardViolated if z_i^i <= z_guard.
StateFeedbackDerivatives state_feedback_derivatives(std::size_t index, const Eigen::VectorXd& x,
                                                    const Eigen::VectorXd& own_output,
                                                    std::span<const NeighborValue> neighbor_outputs,
                                                    std::span<const NeighborValue> neighbor_z,
                                                    const ControllerState& state, const LocalAgent& agent,
                                                    CouplingGains gains,
                                                    const NumericPolicy& policy = default_policy());

/// Observer-based variant: the estimate xhat (from `state`) replaces x in the
/// control law, and xhat' = A xhat + B u + H (y - C xhat).
OutputFeedbackDerivatives output_feedback_derivatives(std::size_t index, const Eigen::VectorXd& measured_output,
                                                      std::span<const NeighborValue> neighbor_outputs,
                                                      std::span<const NeighborValue> neighbor_z,
                                                      const ControllerState& state, const LocalAgent& agent,
                                                      CouplingGains gains,
                                                      const NumericPolicy& policy = default_policy());

/// Global constants the sufficient gain conditions depend on.
struct GainConditionInputs {
  double m = 0.0;        // min strong-convexity constant
  double M = 0.0;        // max gradient Lipschitz constant
  double norm_c = 0.0;   // induced 2-norm of blockdiag(C_i)
  double r_min = 0.0;
  double lambda2 = 0.0;
};

struct GainCheck {
  bool feasible = false;
  double delta = 0.0;         // delta at which margins are reported
  double delta_lower = 0.0;
  // convexity term, v-damping term, consensus term
  std::array<double, 3> margins{};
};

/// Searches delta over a 200-point log grid on [delta_lower (1 + 1e-6),
/// 1e4 delta_lower]. Feasible iff some grid delta makes all three margins
/// positive; margins are reported at the delta maximizing the smallest one.
GainCheck check_gain_conditions(const GainConditionInputs& in, double gamma1, double gamma2,
                                ControllerMode mode);

struct SuggestedGains {
  double delta = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

/// delta = 2 delta_lower, then gamma2 and gamma1 at twice their lower bounds.
SuggestedGains suggest_gains(const GainConditionInputs& in, ControllerMode mode);

}  // namespace ooc
