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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ooc/controller.hpp"
#include "ooc/costmodel.hpp"
#include "ooc/netgraph.hpp"
#include "ooc/numeric_policy.hpp"
#include "ooc/plantmodel.hpp"

namespace ooc {

struct TripletSpec {
  Eigen::MatrixXd Upsilon, Phi, Psi;
  bool operator==(const TripletSpec& o) const {
    return same_matrix(Upsilon, o.Upsilon) && same_matrix(Phi, o.Phi) && same_matrix(Psi, o.Psi);
  }
};

/// One agent as declared in a scenario: plant plus optional gains, triplet
/// and initial values. Missing gains are synthesized, a missing triplet is
/// solved, missing initial values are drawn from the scenario seed.
struct AgentSpec {
  AgentPlant plant;
  std::optional<Eigen::MatrixXd> K;
  std::optional<Eigen::MatrixXd> H;
  std::optional<TripletSpec> triplet;
  std::optional<Eigen::VectorXd> x0;
  std::optional<Eigen::VectorXd> xhat0;
  std::optional<Eigen::VectorXd> rho0;
  std::optional<Eigen::VectorXd> v0;

  bool operator==(const AgentSpec& o) const;
};

struct GainPreset {
  std::string name;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  bool operator==(const GainPreset&) const = default;
};

inline constexpr double kInitialLower = -4.0;
inline constexpr double kInitialUpper = 6.0;

struct Scenario {
  std::string name;
  std::size_t nodes = 0;
  std::vector<Edge> edges;
  std::vector<AgentSpec> agents;
  std::vector<CostSpec> costs;

  ControllerMode mode = ControllerMode::State;
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  bool auto_gains = false;
  std::vector<GainPreset> presets;

  double horizon = 50.0;
  double step = 1e-3;
  std::size_t stride = 10;
  std::uint64_t seed = 1;
  double tolerance = 5e-3;       // convergence verdict on final output error
  double settle_epsilon = 1e-2;  // threshold for settling time

  /// Externally documented optimum, compared against the oracle.
  std::optional<double> reference_y_star;

  bool operator==(const Scenario& o) const;
};

/// Returns a copy with the named preset's gains applied. Throws
/// ValidationError for unknown names.
Scenario with_preset(const Scenario& scenario, const std::string& preset);

/// Offsets of each block in the stacked closed-loop state
/// [x | xhat (output mode) | rho | v | z].
struct StateLayout {
  std::size_t agents = 0;
  std::size_t q = 0;
  std::vector<std::size_t> x_offset, x_size;
  std::vector<std::size_t> xhat_offset;  // empty in state mode
  std::size_t rho_offset = 0, v_offset = 0, z_offset = 0;
  std::size_t dimension = 0;

  std::size_t rho(std::size_t i) const { return rho_offset + i * q; }
  std::size_t v(std::size_t i) const { return v_offset + i * q; }
  std::size_t z(std::size_t i) const { return z_offset + i * agents; }
};

/// Agent with its triplet, validated gains and cost resolved.
struct ResolvedAgent {
  AgentPlant plant;
  SolutionTriplet triplet;
  GainSet gains;
  CostFunction cost;
  bool triplet_solved = false;
  bool k_synthesized = false;
  bool h_synthesized = false;
};

/// The coupled closed loop: an explicit ODE in the stacked state. rho' inside
/// the plant equation is replaced by the omega expression, so there is no
/// algebraic loop.
class ClosedLoop {
 public:
  static ClosedLoop assemble(const Scenario& scenario, const NumericPolicy& policy = default_policy());

  Eigen::VectorXd derivative(const Eigen::VectorXd& state) const;
  /// Seeded uniform draws on [-4, 6] for x, rho, xhat, overridden by any
  /// scenario-provided values; v = 0 and z = stacked unit vectors.
  Eigen::VectorXd initial_state() const;
  /// Stacked outputs Y = col(C_i x_i).
  Eigen::VectorXd outputs(const Eigen::VectorXd& state) const;

  const StateLayout& layout() const { return layout_; }
  const Digraph& graph() const { return graph_; }
  const SpectralInfo& spectral() const { return spectral_; }
  const std::vector<ResolvedAgent>& agents() const { return agents_; }
  ControllerMode mode() const { return mode_; }
  CouplingGains coupling() const { return coupling_; }
  const NumericPolicy& policy() const { return policy_; }
  const Scenario& scenario() const { return scenario_; }
  std::vector<CostFunction> costs() const;
  /// Non-fatal findings, e.g. a step size too coarse for gamma1.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  ClosedLoop(Scenario scenario, Digraph graph, NumericPolicy policy);

  Scenario scenario_;
  Digraph graph_;
  SpectralInfo spectral_;
  NumericPolicy policy_;
  std::vector<ResolvedAgent> agents_;
  StateLayout layout_;
  ControllerMode mode_ = ControllerMode::State;
  CouplingGains coupling_;
  std::vector<std::string> warnings_;
};

/// Time samples of the full stacked state.
struct Trajectory {
  Eigen::VectorXd times;
  Eigen::MatrixXd states;  // one row per sample
  std::optional<StateLayout> layout;
};

using OdeRhs = std::function<Eigen::VectorXd(double t, const Eigen::VectorXd& x)>;

/// Classical fixed-step RK4. Records every `stride` steps starting at t = 0;
/// floor(T / h) steps in total. Throws NumericalBlowup on a non-finite state
/// and re-throws ZGuardViolated with the time it occurred.
Trajectory integrate(const OdeRhs& rhs, const Eigen::VectorXd& initial, double h, double horizon,
                     std::size_t stride);

/// Runs the scenario's closed loop from its initial state.
Trajectory simulate(const ClosedLoop& loop);
Trajectory simulate(const ClosedLoop& loop, const Eigen::VectorXd& initial);

struct LogLinearFit {
  double slope = 0.0;  // per second, in natural-log units
  double r2 = 0.0;
  std::size_t samples = 0;
};

struct Metrics {
  Eigen::VectorXd y_star;
  double final_output_error = 0.0;          // max_i ||y_i(T) - y*||
  std::optional<double> settling_time;      // at settle_epsilon; none if never settled
  double settle_epsilon = 0.0;
  std::optional<LogLinearFit> decay_fit;    // log-error fit on the 1e-1 .. 1e-4 window
  double rv_drift = 0.0;                    // max_t ||(r^T kron I_q) v(t)||
  double z_weighted_drift = 0.0;            // max_t ||(r^T kron I_N)(z(t) - z(0))||
  double z_positivity_min = 0.0;            // min_t min_i z_i^i(t)
  double z_eigvec_error = 0.0;              // ||z(T) - 1_N kron r||
  std::optional<double> observer_error_final;  // ||x(T) - xhat(T)||
  double optimality_residual = 0.0;         // ||sum_i grad f_i(y_i(T))||
};

/// Per-sample max_i ||y_i(t) - y*||.
Eigen::VectorXd output_errors(const Trajectory& traj, const ClosedLoop& loop, const Eigen::VectorXd& y_star);

/// First sample time after which `error` stays below eps; none if the last
/// sample is still at or above eps.
std::optional<double> settling_time(const Eigen::VectorXd& times, const Eigen::VectorXd& error, double eps);

/// Least-squares line through log(error) on the window where the error falls
/// from `upper` to `lower`. Needs at least 20 samples spanning two decades.
std::optional<LogLinearFit> fit_log_decay(const Eigen::VectorXd& times, const Eigen::VectorXd& error,
                                          double upper = 1e-1, double lower = 1e-4);

/// Plain least-squares line through (t, log e) over all samples with e > floor.
LogLinearFit fit_log_linear(const Eigen::VectorXd& times, const Eigen::VectorXd& error, double floor = 0.0);

Metrics compute_metrics(const Trajectory& traj, const ClosedLoop& loop, const Eigen::VectorXd& y_star,
                        double settle_epsilon = 1e-2);

/// Equilibrium of the closed loop with outputs at y*: x_i = Psi_i y*,
/// rho_i = y*, v_i = -grad f_i(y*) / (gamma2 r_i), z = 1 kron r (xhat = x).
Eigen::VectorXd equilibrium_state(const ClosedLoop& loop, const Eigen::VectorXd& y_star);

/// Gain-condition advisory for a scenario: per-agent convexity constants,
/// the aggregated inputs and the checker verdict. Never throws for
/// non-convex costs; such scenarios are reported as rejected.
struct GainAdvisory {
  enum class Verdict { Feasible, Infeasible, Rejected };
  Verdict verdict = Verdict::Rejected;
  std::string reason;
  std::vector<std::optional<ConvexityConstants>> per_agent;  // nullopt: non-convex on its box
  GainConditionInputs inputs;
  std::optional<GainCheck> check;
};

GainAdvisory assess_gains(const Scenario& scenario, double gamma1, double gamma2,
                          const NumericPolicy& policy = default_policy());

std::string to_string(GainAdvisory::Verdict verdict);

}  // namespace ooc
