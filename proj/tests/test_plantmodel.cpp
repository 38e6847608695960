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

#include <cmath>

#include "ooc/plantmodel.hpp"
#include "test_support.hpp"

using namespace ooc;
using namespace ooc::testing;

namespace {

AgentPlant rlc(double r1, double r2, double l, double c1, double c2) {
  return AgentPlant(mat({{-1 / (c1 * r1), 0, -1 / c1}, {0, 0, 1 / c2}, {1 / l, -1 / l, -r2 / l}}),
                    mat({{1 / (c1 * r1), 1 / c1}, {0, -1 / c2}, {0, 1 / l}}), mat({{1, 0, 0}}));
}

std::vector<AgentPlant> example_plants() {
  std::vector<AgentPlant> plants{rlc(2, 1, 3, 1, 2), rlc(1, 2, 2, 3, 1), rlc(0.5, 2, 1, 0.5, 3),
                                 rlc(3, 0.5, 2, 1, 0.5)};
  const AgentPlant p12(mat({{0, 1}, {0, 0}}), mat({{0, 1}, {1, -2}}), mat({{1, 1}}));
  const AgentPlant p34(mat({{0, -1}, {1, -2}}), mat({{1, 0}, {3, -1}}), mat({{-1, 1}}));
  const AgentPlant p56(mat({{0, 1, 0}, {0, 0, 1}, {0.5, 1, -2}}), mat({{1, 0}, {0, 1}, {1, 0}}), mat({{1, -1, 1}}));
  for (const AgentPlant& p : {p12, p12, p34, p34, p56, p56}) plants.push_back(p);
  return plants;
}

AgentPlant integrator() { return AgentPlant(mat({{0}}), mat({{1}}), mat({{1}})); }

}  // namespace

TEST_CASE("plant shapes are validated") {
  CHECK(error_code_of([] { AgentPlant(mat({{0, 1}}), mat({{1}}), mat({{1}})); }) == ErrorCode::ShapeMismatch);
  CHECK(error_code_of([] { AgentPlant(mat({{0}}), mat({{1}, {1}}), mat({{1}})); }) == ErrorCode::ShapeMismatch);
  CHECK(error_code_of([] { AgentPlant(mat({{0}}), mat({{1}}), mat({{1, 1}})); }) == ErrorCode::ShapeMismatch);
  const AgentPlant p = example_plants()[8];
  CHECK(p.n() == 3);
  CHECK(p.p() == 2);
  CHECK(p.q() == 1);
}

TEST_CASE("regulation rank check") {
  const RankCheck ok = check_regulation_rank(integrator());
  CHECK(ok.ok);
  CHECK(ok.rank == 2);
  CHECK(check_regulation_rank(example_plants()[4]).ok);
  const RankCheck bad = check_regulation_rank(AgentPlant(mat({{0}}), mat({{0}}), mat({{1}})));
  CHECK_FALSE(bad.ok);
  CHECK(bad.rank < bad.required);
}

TEST_CASE("regulation equations for the single integrator") {
  const SolutionTriplet t = solve_regulation_equations(integrator());
  CHECK(std::abs(t.Psi(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(t.Phi(0, 0)) < 1e-12);
  CHECK(std::abs(t.Upsilon(0, 0) - 1.0) < 1e-12);
}

TEST_CASE("solver residuals for all ten example plants") {
  for (const AgentPlant& p : example_plants()) {
    REQUIRE(check_regulation_rank(p).ok);
    const SolutionTriplet t = solve_regulation_equations(p);
    const TripletResiduals r = triplet_residuals(p, t.Upsilon, t.Phi, t.Psi);
    CHECK(r.output <= 1e-10);
    CHECK(r.state <= 1e-10);
    CHECK(r.input <= 1e-10);
    CHECK(t.residual <= 1e-10);
  }
}

TEST_CASE("solver is deterministic") {
  for (const AgentPlant& p : example_plants()) {
    const SolutionTriplet a = solve_regulation_equations(p);
    const SolutionTriplet b = solve_regulation_equations(p);
    CHECK(a.Upsilon == b.Upsilon);
    CHECK(a.Phi == b.Phi);
    CHECK(a.Psi == b.Psi);
  }
}

TEST_CASE("listed triplets of the second example verify by substitution") {
  const std::vector<AgentPlant> plants = example_plants();
  const TripletResiduals r1 = triplet_residuals(plants[4], mat({{1.5}, {0.5}}), mat({{1}, {0.5}}), mat({{0.5}, {0.5}}));
  CHECK(r1.max() <= 1e-12);
  const TripletResiduals r3 =
      triplet_residuals(plants[6], mat({{-0.5}, {-2}}), mat({{-0.5}, {0}}), mat({{-0.5}, {0.5}}));
  CHECK(r3.max() <= 1e-12);
  const TripletResiduals r5 =
      triplet_residuals(plants[8], mat({{0}, {-1}}), mat({{-1}, {0}}), mat({{0}, {-1}, {0}}));
  CHECK(r5.max() <= 1e-12);
  CHECK_NOTHROW(validate_triplet(plants[4], mat({{1.5}, {0.5}}), mat({{1}, {0.5}}), mat({{0.5}, {0.5}})));
}

TEST_CASE("listed first triplet of the first example is inconsistent") {
  // B1 Upsilon1 = Psi1 cannot hold with Upsilon1 = [8, -1].
  const AgentPlant p = example_plants()[0];
  const TripletResiduals r = triplet_residuals(p, mat({{8}, {-1}}), mat({{-1}, {0.5}}), mat({{1}, {1}, {-0.5}}));
  CHECK(r.input > 1e-3);
  CHECK(error_code_of([&] { validate_triplet(p, mat({{8}, {-1}}), mat({{-1}, {0.5}}), mat({{1}, {1}, {-0.5}})); }) ==
        ErrorCode::Unsolvable);
}

TEST_CASE("gain validation") {
  const std::vector<AgentPlant> plants = example_plants();
  const GainSet g = validate_gains(plants[4], mat({{3, 5}, {1.5, 1}}));
  CHECK(g.spectral_abscissa_closed == doctest::Approx(-1.5));
  CHECK(error_code_of([] { validate_gains(integrator(), mat({{0}})); }) == ErrorCode::NotHurwitz);
  const GainSet h = validate_gains(plants[8], mat({{2.167, 1, 0.333}, {0, 3, 1}}), mat({{4}, {3}, {2}}));
  REQUIRE(h.spectral_abscissa_observer);
  CHECK(*h.spectral_abscissa_observer < 0.0);
  // The first example's listed K1 leaves a right-half-plane pair.
  CHECK(error_code_of([&] { validate_gains(plants[0], mat({{1, 2, -2}, {-1, 0, 1}})); }) == ErrorCode::NotHurwitz);
  CHECK(error_code_of([&] { validate_gains(plants[4], mat({{3, 5}})); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("listed gains of the examples") {
  const std::vector<AgentPlant> plants = example_plants();
  const Eigen::MatrixXd K[] = {mat({{0.5, 2, -1}, {-2, 0, 2}}), mat({{2, -1, -2}, {0, -3, 3}}),
                               mat({{-2, 1, 2}, {0, -1, 2}})};
  for (int i = 0; i < 3; ++i) CHECK_NOTHROW(validate_gains(plants[static_cast<std::size_t>(i + 1)], K[i]));
  CHECK_NOTHROW(validate_gains(plants[6], mat({{0.75, -1}, {1.25, -4}}), mat({{-2}, {-1}})));
  CHECK_NOTHROW(validate_gains(plants[4], mat({{3, 5}, {1.5, 1}}), mat({{1}, {2}})));
}

TEST_CASE("Riccati gain synthesis") {
  CHECK(synthesize_stabilizing_gain(mat({{0}}), mat({{1}}))(0, 0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(synthesize_stabilizing_gain(mat({{1}}), mat({{1}}))(0, 0) ==
        doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-10));
  const Eigen::MatrixXd K = synthesize_stabilizing_gain(mat({{0, 1}, {0, 0}}), mat({{0}, {1}}));
  // Reference from an independent Riccati solver.
  CHECK(K(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(K(0, 1) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
  CHECK_NOTHROW(validate_gains(AgentPlant(mat({{0, 1}, {0, 0}}), mat({{0}, {1}}), mat({{1, 0}})), K));

  for (const AgentPlant& p : example_plants()) {
    CHECK_NOTHROW(validate_gains(p, synthesize_stabilizing_gain(p.A(), p.B()),
                                 synthesize_observer_gain(p.A(), p.C())));
  }
}

TEST_CASE("stabilizability and detectability") {
  CHECK(is_stabilizable(mat({{1}}), mat({{1}})));
  CHECK_FALSE(is_stabilizable(mat({{1}}), mat({{0}})));
  CHECK(is_stabilizable(mat({{-1}}), mat({{0}})));
  CHECK(error_code_of([] { synthesize_stabilizing_gain(mat({{1, 0}, {0, -1}}), mat({{0}, {1}})); }) ==
        ErrorCode::NotStabilizable);
  CHECK(error_code_of([] { synthesize_observer_gain(mat({{1, 0}, {0, -1}}), mat({{0, 1}})); }) ==
        ErrorCode::NotDetectable);
}

TEST_CASE("Lyapunov solve") {
  const Eigen::MatrixXd A = mat({{-1, 2}, {0, -3}});
  const Eigen::MatrixXd P = solve_lyapunov(A, Eigen::MatrixXd::Identity(2, 2));
  CHECK((A.transpose() * P + P * A + Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-12);
}
