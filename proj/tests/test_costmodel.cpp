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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ooc/costmodel.hpp"
#include "test_support.hpp"

using namespace ooc;
using namespace ooc::testing;

namespace {

const char* const kExampleTwoCosts[] = {
    "sin(0.2*y - (pi/2))",           "0.2*cos(ln(y^2 + 4) - 0.2)", "0.1*(y + 0.3)^2 + 0.2*(y - 2)^2",
    "0.4*y^2*ln(5 + y^2)",           "0.2*y^2*(ln(y^2 + 1) + 1)",  "0.3*y^2/sqrt(y^2 + 5)",
};

CostFunction scalar_quadratic(double a, double b, double c) {
  return quadratic_cost(mat({{a}}), vecd({b}), c);
}

}  // namespace

TEST_CASE("expression parsing and evaluation") {
  CHECK(parse_cost_expression("0.2*y^2 - 2*y + 1").value(0.0) == 1.0);
  CHECK(parse_cost_expression("0.2*y^2 - 2*y + 1").value(5.0) == doctest::Approx(-4.0));
  CHECK(parse_cost_expression("0.3*y^2/sqrt(y^2+5)").value(0.0) == 0.0);
  const Dual d = parse_cost_expression("sin(0.2*y - (pi/2))").eval_with_derivative(0.0);
  CHECK(d.value == doctest::Approx(-1.0));
  CHECK(std::abs(d.deriv) < 1e-15);
}

TEST_CASE("expression precedence") {
  CHECK(parse_cost_expression("-y^2").value(3.0) == -9.0);
  CHECK(parse_cost_expression("2^3^2").value(0.0) == 512.0);
  CHECK(parse_cost_expression("2^-1").value(0.0) == 0.5);
  CHECK(parse_cost_expression("1 - 2 - 3").value(0.0) == -4.0);
  CHECK(parse_cost_expression("8/4/2").value(0.0) == 1.0);
  CHECK(parse_cost_expression("2*pi").value(0.0) == doctest::Approx(2 * std::numbers::pi));
  CHECK(parse_cost_expression("exp(ln(y))").value(2.5) == doctest::Approx(2.5));
  CHECK(parse_cost_expression("log(y)").value(std::exp(1.0)) == doctest::Approx(1.0));
  CHECK(parse_cost_expression("1.5e1 + .5").value(0.0) == 15.5);
}

TEST_CASE("expression syntax errors carry a position") {
  for (const char* bad : {"", "y +", "2*(y", "foo(y)", "y y", "sin y", "1..2", "y^", ")"}) {
    CAPTURE(bad);
    try {
      parse_cost_expression(bad);
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(std::string(e.what()).find("position") != std::string::npos);
    }
  }
  CHECK(error_code_of([] { parse_cost_expression("y", 2); }) == ErrorCode::ValidationError);
}

TEST_CASE("expression domain errors surface at evaluation") {
  const CostExpr e = parse_cost_expression("ln(y)");
  CHECK(error_code_of([&] { e.value(-1.0); }) == ErrorCode::DomainError);
  CHECK(error_code_of([&] { parse_cost_expression("sqrt(y)").value(-1.0); }) == ErrorCode::DomainError);
  CHECK(error_code_of([&] { parse_cost_expression("1/y").value(0.0); }) == ErrorCode::DomainError);
}

TEST_CASE("dual-number derivatives match central differences") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-4.0, 6.0);
  const std::vector<std::string> exprs(std::begin(kExampleTwoCosts), std::end(kExampleTwoCosts));
  int points = 0;
  for (const std::string& text : exprs) {
    const CostExpr e = parse_cost_expression(text);
    for (int k = 0; k < 1000 / static_cast<int>(exprs.size()) + 1; ++k, ++points) {
      const double y = u(rng);
      const double h = 1e-6;
      const double fd = (e.value(y + h) - e.value(y - h)) / (2 * h);
      const double ad = e.eval_with_derivative(y).deriv;
      CAPTURE(text);
      CAPTURE(y);
      CHECK(std::abs(ad - fd) <= 1e-6 * std::max(1.0, std::abs(ad)));
    }
  }
  CHECK(points >= 1000);
}

TEST_CASE("quadratic cost gradient and constants") {
  const CostFunction f = scalar_quadratic(0.2, -2.0, 1.0);
  CHECK(f.gradient(vecd({5.0}))(0) == doctest::Approx(0.0));
  CHECK(f.value(vecd({0.0})) == 1.0);
  REQUIRE(f.constants());
  CHECK(f.constants()->m == doctest::Approx(0.4));
  CHECK(f.constants()->provenance == Provenance::Analytic);

  const CostFunction g = quadratic_cost(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2), 0.0);
  CHECK(g.constants()->m == doctest::Approx(2.0));
  CHECK(g.constants()->M == doctest::Approx(2.0));

  CHECK(error_code_of([] { quadratic_cost(mat({{1, 0}, {0, -1}}), vecd({0, 0}), 0); }) ==
        ErrorCode::NotPositiveDefinite);
  CHECK(error_code_of([] { quadratic_cost(mat({{1, 2}, {0, 1}}), vecd({0, 0}), 0); }) ==
        ErrorCode::NotPositiveDefinite);
}

TEST_CASE("estimated convexity constants") {
  const ConvexityConstants a = estimate_convexity_constants(parse_cost_expression("0.2*y^2"), Box::uniform(1, -10, 10));
  CHECK(a.m == doctest::Approx(0.4).epsilon(1e-6));
  CHECK(a.M == doctest::Approx(0.4).epsilon(1e-6));
  CHECK(a.provenance == Provenance::Estimated);

  const ConvexityConstants f3 =
      estimate_convexity_constants(parse_cost_expression(kExampleTwoCosts[2]), Box::uniform(1, -10, 10));
  CHECK(std::abs(f3.m - 0.6) <= 1e-6);
  CHECK(std::abs(f3.M - 0.6) <= 1e-6);

  // y^4 is convex but not strongly: no error, m close to zero.
  const ConvexityConstants quartic = estimate_convexity_constants(parse_cost_expression("y^4"), Box::uniform(1, -1, 1));
  CHECK(quartic.m >= 0.0);
  CHECK(quartic.m < 0.05);

  CHECK(error_code_of([] {
          estimate_convexity_constants(parse_cost_expression("-y^2"), Box::uniform(1, -1, 1));
        }) == ErrorCode::NonConvexDetected);
  CHECK(error_code_of([] {
          estimate_convexity_constants(parse_cost_expression("y^2"), Box::uniform(1, -1, 1), 10);
        }) == ErrorCode::ValidationError);
}

TEST_CASE("second example cost two is locally concave near its minimizer") {
  // f2'' < 0 around y = 0, so per-agent strong convexity fails on any box
  // containing the optimum.
  CHECK(error_code_of([] {
          estimate_convexity_constants(parse_cost_expression(kExampleTwoCosts[1]), Box::uniform(1, -1, 1));
        }) == ErrorCode::NonConvexDetected);
}

TEST_CASE("centralized minimizer") {
  SUBCASE("first example quadratics") {
    const std::vector<CostFunction> costs{scalar_quadratic(0.2, -2, 1), scalar_quadratic(0.4, 1, 2),
                                          scalar_quadratic(0.6, -3, -1), scalar_quadratic(0.8, 1, 1)};
    CHECK(std::abs(centralized_minimizer(costs)(0) - 0.75) <= 1e-10);
  }
  SUBCASE("mean of two centred quadratics") {
    const double a = -1.3, b = 4.1;
    const std::vector<CostFunction> costs{scalar_quadratic(0.5, -a, 0.5 * a * a),
                                          scalar_quadratic(0.5, -b, 0.5 * b * b)};
    CHECK(std::abs(centralized_minimizer(costs)(0) - (a + b) / 2) <= 1e-10);
  }
  SUBCASE("second example costs") {
    std::vector<CostFunction> costs;
    for (const char* text : kExampleTwoCosts) costs.push_back(expression_cost(parse_cost_expression(text)));
    const double y = centralized_minimizer(costs)(0);
    CHECK(std::abs(y - 0.286) <= 5e-3);
    // Root of the summed gradient from an independent bracketing solve.
    CHECK(std::abs(y - 0.28598759874098467) <= 1e-9);
  }
  SUBCASE("vector quadratics match the closed form") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<CostFunction> costs;
      Eigen::MatrixXd H = Eigen::MatrixXd::Zero(3, 3);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(3);
      for (int i = 0; i < 4; ++i) {
        const Eigen::MatrixXd R = random_matrix(rng, 3, 3);
        const Eigen::MatrixXd Q = R * R.transpose() + 0.5 * Eigen::MatrixXd::Identity(3, 3);
        const Eigen::VectorXd b = random_matrix(rng, 3, 1);
        costs.push_back(quadratic_cost(Q, b, 0.0));
        H += 2 * Q;
        rhs -= b;
      }
      const Eigen::VectorXd expected = H.ldlt().solve(rhs);
      CHECK((centralized_minimizer(costs) - expected).norm() <= 1e-10);
    }
  }
}

TEST_CASE("centralized minimizer is invariant under permutation") {
  std::vector<CostFunction> costs;
  for (const char* text : kExampleTwoCosts) costs.push_back(expression_cost(parse_cost_expression(text)));
  const double base = centralized_minimizer(costs)(0);
  std::vector<int> order{0, 1, 2, 3, 4, 5};
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<CostFunction> permuted;
    for (int k : order) permuted.push_back(costs[static_cast<std::size_t>(k)]);
    CHECK(std::abs(centralized_minimizer(permuted)(0) - base) <= 1e-9);
  }
}

TEST_CASE("cost specs") {
  const CostSpec quad{QuadraticSpec{mat({{0.2}}), vecd({-2}), 1.0}, std::nullopt};
  CHECK(make_cost(quad, 1).gradient(vecd({5.0}))(0) == doctest::Approx(0.0));
  CHECK(effective_box(quad, 1) == Box::uniform(1, -10, 10));
  const CostSpec expr{std::string("y^2"), Box::uniform(1, -4, 6)};
  CHECK(make_cost(expr, 1).value(vecd({3.0})) == 9.0);
  CHECK(effective_box(expr, 1) == Box::uniform(1, -4, 6));
}
