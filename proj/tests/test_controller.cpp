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

#include <doctest.h>

#include <array>
#include <cmath>

#include "ooc/controller.hpp"
#include "test_support.hpp"

using namespace ooc;
using namespace ooc::testing;

namespace {

struct Integrator {
  AgentPlant plant{mat({{0}}), mat({{1}}), mat({{1}})};
  SolutionTriplet triplet{mat({{1}}), mat({{0}}), mat({{1}}), 0.0};
  GainSet gains;
  CostFunction cost;

  explicit Integrator(CostFunction c, std::optional<Eigen::MatrixXd> H = std::nullopt)
      : gains(validate_gains(plant, mat({{1}}), H)), cost(std::move(c)) {}
  LocalAgent local() const { return LocalAgent{plant, triplet, gains, cost}; }
};

CostFunction zero_cost() { return expression_cost(parse_cost_expression("0*y")); }
CostFunction half_square() { return quadratic_cost(mat({{0.5}}), vecd({0}), 0.0); }

ControllerState state(double rho, double v, Eigen::VectorXd z) {
  return ControllerState{vecd({rho}), vecd({v}), std::move(z), std::nullopt};
}

// Direct evaluation of the three sufficient inequalities.
std::array<double, 3> margins(const GainConditionInputs& in, double g1, double g2, double delta, double w) {
  const double c2 = in.norm_c * in.norm_c;
  return {2 * in.m - (in.M * in.M + w * c2) / delta, g2 * in.r_min - 1.25 * delta - w * c2 / (4 * delta),
          g1 * in.lambda2 - g2 * g2 / delta};
}

}  // namespace

TEST_CASE("controller initialization") {
  const auto s = init_controller_states(2, 1, {1, 1}, ControllerMode::State);
  REQUIRE(s.size() == 2);
  CHECK(s[0].z == vecd({1, 0}));
  CHECK(s[1].z == vecd({0, 1}));
  CHECK(s[0].v.isZero(0.0));
  CHECK(s[0].rho.isZero(0.0));
  CHECK_FALSE(s[0].xhat);

  const auto six = init_controller_states(6, 1, {2, 2, 2, 2, 3, 3}, ControllerMode::Output);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(six[i].v.isZero(0.0));
    REQUIRE(six[i].xhat);
    CHECK(six[i].xhat->size() == (i < 4 ? 2 : 3));
  }

  const std::vector<ControllerInit> bad{{std::nullopt, vecd({0.3}), std::nullopt}, {}};
  CHECK(error_code_of([&] { init_controller_states(2, 1, {1, 1}, ControllerMode::State, bad); }) ==
        ErrorCode::ConfigOverridesV0);
  const std::vector<ControllerInit> zero{{vecd({2.0}), vecd({0.0}), std::nullopt}, {}};
  const auto ok = init_controller_states(2, 1, {1, 1}, ControllerMode::State, zero);
  CHECK(ok[0].rho == vecd({2.0}));
}

TEST_CASE("state feedback at consensus with zero gradients is at rest") {
  const Integrator a(zero_cost());
  const std::vector<NeighborValue> ny{{1.0, vecd({0.0})}};
  const std::vector<NeighborValue> nz{{1.0, vecd({1.0, 0.0})}};
  const auto d = state_feedback_derivatives(0, vecd({0.0}), vecd({0.0}), ny, nz, state(0, 0, vecd({1, 0})),
                                            a.local(), {1.0, 1.0});
  CHECK(d.u.isZero(0.0));
  CHECK(d.drho.isZero(0.0));
  CHECK(d.dv.isZero(0.0));
  CHECK(d.dz.isZero(0.0));
}

TEST_CASE("state feedback single agent substitution") {
  const Integrator a(half_square());
  const auto d = state_feedback_derivatives(0, vecd({1.0}), vecd({1.0}), {}, {}, state(0, 0, vecd({1})), a.local(),
                                            {1.0, 1.0});
  CHECK(d.drho(0) == doctest::Approx(-1.0));
  CHECK(d.dv(0) == 0.0);
  CHECK(d.dz(0) == 0.0);
  // u = -K x + Upsilon omega = -1 - 1.
  CHECK(d.u(0) == doctest::Approx(-2.0));
}

TEST_CASE("state feedback two symmetric integrators") {
  const Integrator a(zero_cost());
  const std::vector<NeighborValue> from2{{1.0, vecd({-1.0})}};
  const std::vector<NeighborValue> from1{{1.0, vecd({1.0})}};
  const auto d1 = state_feedback_derivatives(0, vecd({1.0}), vecd({1.0}), from2, {}, state(0, 0, vecd({1, 0})),
                                             a.local(), {1.0, 1.0});
  const auto d2 = state_feedback_derivatives(1, vecd({-1.0}), vecd({-1.0}), from1, {}, state(0, 0, vecd({0, 1})),
                                             a.local(), {1.0, 1.0});
  CHECK(d1.dv(0) == 2.0);
  CHECK(d2.dv(0) == -2.0);
}

TEST_CASE("z guard") {
  const Integrator a(half_square());
  CHECK(error_code_of([&] {
          state_feedback_derivatives(0, vecd({1.0}), vecd({1.0}), {}, {}, state(0, 0, vecd({0.0})), a.local(),
                                     {1.0, 1.0});
        }) == ErrorCode::ZGuardViolated);
}

TEST_CASE("output feedback reduces to state feedback when the estimate is exact") {
  const Integrator a(half_square(), mat({{2}}));
  const std::vector<NeighborValue> ny{{0.7, vecd({0.3})}};
  const std::vector<NeighborValue> nz{{0.7, vecd({0.2, 0.8})}};
  ControllerState s = state(0.4, -0.1, vecd({0.9, 0.1}));
  const auto sf = state_feedback_derivatives(0, vecd({1.5}), vecd({1.5}), ny, nz, s, a.local(), {2.0, 3.0});
  s.xhat = vecd({1.5});
  const auto of = output_feedback_derivatives(0, vecd({1.5}), ny, nz, s, a.local(), {2.0, 3.0});
  CHECK(of.u == sf.u);
  CHECK(of.drho == sf.drho);
  CHECK(of.dv == sf.dv);
  CHECK(of.dz == sf.dz);
  CHECK(of.dxhat == a.plant.A() * vecd({1.5}) + a.plant.B() * sf.u);
}

TEST_CASE("output feedback innovation term") {
  const Integrator a(zero_cost(), mat({{2}}));
  ControllerState s = state(0, 0, vecd({1}));
  s.xhat = vecd({0.0});
  const auto d = output_feedback_derivatives(0, vecd({1.0}), {}, {}, s, a.local(), {1.0, 1.0});
  CHECK(d.u(0) == 0.0);
  CHECK(d.dxhat(0) == 2.0);

  const Integrator no_h(zero_cost());
  CHECK(error_code_of([&] { output_feedback_derivatives(0, vecd({1.0}), {}, {}, s, no_h.local(), {1.0, 1.0}); }) ==
        ErrorCode::ValidationError);
}

TEST_CASE("gain condition checker examples") {
  const GainConditionInputs in{1.0, 1.0, 1.0, 0.5, 1.0};
  const GainCheck ok = check_gain_conditions(in, 100.0, 10.0, ControllerMode::State);
  CHECK(ok.feasible);
  CHECK(ok.delta_lower == doctest::Approx(1.0));
  CHECK(ok.margins[0] > 0.0);
  CHECK(ok.margins[1] > 0.0);
  CHECK(ok.margins[2] > 0.0);
  // The derived witness delta = 2 satisfies all three.
  const auto at2 = margins(in, 100.0, 10.0, 2.0, 1.0);
  CHECK(at2[0] == doctest::Approx(1.0));
  CHECK(at2[1] == doctest::Approx(2.375));
  CHECK(at2[2] == doctest::Approx(50.0));

  CHECK_FALSE(check_gain_conditions(in, 0.001, 0.001, ControllerMode::State).feasible);
  CHECK(check_gain_conditions(in, 100.0, 10.0, ControllerMode::Output).delta_lower == doctest::Approx(1.5));
  CHECK(error_code_of([&] { check_gain_conditions({0.0, 1.0, 1.0, 0.5, 1.0}, 1, 1, ControllerMode::State); }) ==
        ErrorCode::ValidationError);
}

TEST_CASE("suggested gains") {
  const GainConditionInputs in{1.0, 1.0, 1.0, 0.5, 1.0};
  const SuggestedGains s = suggest_gains(in, ControllerMode::State);
  CHECK(s.delta == doctest::Approx(2.0));
  CHECK(s.gamma2 == doctest::Approx(10.5));
  CHECK(s.gamma1 == doctest::Approx(110.25));

  GainConditionInputs doubled = in;
  doubled.m = 2.0;
  CHECK(suggest_gains(doubled, ControllerMode::State).delta == doctest::Approx(1.0));

  const SuggestedGains o = suggest_gains(in, ControllerMode::Output);
  CHECK(o.delta == doctest::Approx(3.0));
  CHECK(o.gamma1 > s.gamma1);
  CHECK(o.gamma2 > s.gamma2);
}

TEST_CASE("suggested gains are always feasible") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> logu(-2.0, 2.0);
  auto draw = [&] { return std::pow(10.0, logu(rng)); };
  for (int trial = 0; trial < 100; ++trial) {
    GainConditionInputs in{draw(), 0.0, draw(), std::min(0.5, draw() / 10.0), draw()};
    in.M = in.m * (1.0 + draw());
    for (ControllerMode mode : {ControllerMode::State, ControllerMode::Output}) {
      const SuggestedGains s = suggest_gains(in, mode);
      CAPTURE(trial);
      CHECK(check_gain_conditions(in, s.gamma1, s.gamma2, mode).feasible);
    }
  }
}

TEST_CASE("scaling gamma1 by c^2 and gamma2 by c preserves feasibility at the same delta") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> logu(-1.0, 1.0);
  std::uniform_real_distribution<double> cu(1.0, 10.0);
  auto draw = [&] { return std::pow(10.0, logu(rng)); };
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    GainConditionInputs in{draw(), 0.0, draw(), 0.2, draw()};
    in.M = in.m * (1.0 + draw());
    const SuggestedGains s = suggest_gains(in, ControllerMode::State);
    const double g1 = s.gamma1 * draw(), g2 = s.gamma2 * draw();
    const GainCheck base = check_gain_conditions(in, g1, g2, ControllerMode::State);
    if (!base.feasible) continue;
    ++checked;
    const double c = cu(rng);
    const auto scaled = margins(in, c * c * g1, c * g2, base.delta, 1.0);
    CHECK(scaled[0] > 0.0);
    CHECK(scaled[1] > 0.0);
    CHECK(scaled[2] > 0.0);
    CHECK(check_gain_conditions(in, c * c * g1, c * g2, ControllerMode::State).feasible);
  }
  CHECK(checked > 20);
}
