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

#include "ooc/builtin_scenarios.hpp"

namespace ooc {

namespace {

Eigen::MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

Eigen::MatrixXd col(std::initializer_list<double> values) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(values.size()), 1);
  Eigen::Index r = 0;
  for (double v : values) m(r++, 0) = v;
  return m;
}

CostSpec scalar_quadratic(double a, double b, double c) {
  return CostSpec{QuadraticSpec{mat({{a}}), Eigen::VectorXd::Constant(1, b), c}, std::nullopt};
}

struct RlcParameters {
  double r1, r2, l, c1, c2;
};

AgentPlant rlc_plant(const RlcParameters& p) {
  const Eigen::MatrixXd A = mat({{-1.0 / (p.c1 * p.r1), 0.0, -1.0 / p.c1},
                                 {0.0, 0.0, 1.0 / p.c2},
                                 {1.0 / p.l, -1.0 / p.l, -p.r2 / p.l}});
  const Eigen::MatrixXd B = mat({{1.0 / (p.c1 * p.r1), 1.0 / p.c1}, {0.0, -1.0 / p.c2}, {0.0, 1.0 / p.l}});
  return AgentPlant(A, B, mat({{1.0, 0.0, 0.0}}));
}

}  // namespace

Scenario example1() {
  Scenario sc;
  sc.name = "example1";
  sc.nodes = 4;
  sc.edges = {{3, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}, {4, 2, 1.0}};

  const RlcParameters table[4] = {
      {2.0, 1.0, 3.0, 1.0, 2.0},
      {1.0, 2.0, 2.0, 3.0, 1.0},
      {0.5, 2.0, 1.0, 0.5, 3.0},
      {3.0, 0.5, 2.0, 1.0, 0.5},
  };
  // Listed gains. The first, [[1, 2, -2], [-1, 0, 1]], leaves A1 - B1 K1 with
  // eigenvalues 0.072 +- 0.782i, so agent 1 gets a synthesized gain instead.
  const std::optional<Eigen::MatrixXd> gains[4] = {
      std::nullopt,
      mat({{0.5, 2.0, -1.0}, {-2.0, 0.0, 2.0}}),
      mat({{2.0, -1.0, -2.0}, {0.0, -3.0, 3.0}}),
      mat({{-2.0, 1.0, 2.0}, {0.0, -1.0, 2.0}}),
  };
  // Listed triplets (Upsilon; Phi; Psi), kept for reference only. Upsilon1
  // does not satisfy B1 Upsilon1 = Psi1 under the table above, so all four
  // triplets are solved from the plants.
  //   1: [8, -1];     [-1, 0.5];  [1, 1, -0.5]
  //   2: [0.5, 1.5];  [-1, -1.5]; [1, -0.5, 1.5]
  //   3: [0.8, -0.6]; [-1, 0.2];  [1, 1.2, -0.2]
  //   4: [7.5, -0.5]; [-1, 1];    [1, 0.5, -1]
  for (int i = 0; i < 4; ++i) {
    AgentSpec a{rlc_plant(table[i]), gains[i], std::nullopt, std::nullopt,
                std::nullopt,        std::nullopt, std::nullopt, std::nullopt};
    sc.agents.push_back(std::move(a));
  }
  sc.costs = {scalar_quadratic(0.2, -2.0, 1.0), scalar_quadratic(0.4, 1.0, 2.0), scalar_quadratic(0.6, -3.0, -1.0),
              scalar_quadratic(0.8, 1.0, 1.0)};

  sc.mode = ControllerMode::State;
  sc.gamma1 = 8.0;
  sc.gamma2 = 4.0;
  sc.reference_y_star = 1.5;
  sc.horizon = 100.0;
  sc.tolerance = 1e-2;
  return sc;
}

Scenario example2() {
  Scenario sc;
  sc.name = "example2";
  sc.nodes = 6;
  sc.edges = {{1, 3, 1.0}, {2, 1, 1.0}, {2, 4, 1.0}, {3, 2, 1.0}, {4, 5, 1.0}, {5, 6, 1.0}, {6, 3, 1.0}};

  const AgentPlant p12(mat({{0, 1}, {0, 0}}), mat({{0, 1}, {1, -2}}), mat({{1, 1}}));
  const AgentPlant p34(mat({{0, -1}, {1, -2}}), mat({{1, 0}, {3, -1}}), mat({{-1, 1}}));
  const AgentPlant p56(mat({{0, 1, 0}, {0, 0, 1}, {0.5, 1, -2}}), mat({{1, 0}, {0, 1}, {1, 0}}), mat({{1, -1, 1}}));

  const TripletSpec t12{col({1.5, 0.5}), col({1, 0.5}), col({0.5, 0.5})};
  const TripletSpec t34{col({-0.5, -2}), col({-0.5, 0}), col({-0.5, 0.5})};
  const TripletSpec t56{col({0, -1}), col({-1, 0}), col({0, -1, 0})};

  const Eigen::MatrixXd k12 = mat({{3, 5}, {1.5, 1}});
  const Eigen::MatrixXd k34 = mat({{0.75, -1}, {1.25, -4}});
  const Eigen::MatrixXd k56 = mat({{2.167, 1, 0.333}, {0, 3, 1}});

  const Eigen::MatrixXd h12 = col({1, 2});
  const Eigen::MatrixXd h34 = col({-2, -1});
  const Eigen::MatrixXd h56 = col({4, 3, 2});

  auto agent = [](const AgentPlant& p, const Eigen::MatrixXd& K, const Eigen::MatrixXd& H, const TripletSpec& t) {
    return AgentSpec{p, K, H, t, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
  };
  sc.agents = {agent(p12, k12, h12, t12), agent(p12, k12, h12, t12), agent(p34, k34, h34, t34),
               agent(p34, k34, h34, t34), agent(p56, k56, h56, t56), agent(p56, k56, h56, t56)};

  const Box box = Box::uniform(1, -4.0, 6.0);
  for (const char* text : {"sin(0.2*y - (pi/2))", "0.2*cos(ln(y^2 + 4) - 0.2)", "0.1*(y + 0.3)^2 + 0.2*(y - 2)^2",
                           "0.4*y^2*ln(5 + y^2)", "0.2*y^2*(ln(y^2 + 1) + 1)", "0.3*y^2/sqrt(y^2 + 5)"}) {
    sc.costs.push_back(CostSpec{std::string(text), box});
  }

  sc.mode = ControllerMode::State;
  sc.gamma1 = 8.0;
  sc.gamma2 = 1.0;
  sc.presets = {{"g8_1", 8.0, 1.0}, {"g8_8", 8.0, 8.0}, {"g20_8", 20.0, 8.0}};
  sc.horizon = 40.0;
  return sc;
}

std::vector<std::string> builtin_names() { return {"example1", "example2"}; }

std::optional<Scenario> builtin_scenario(const std::string& name) {
  if (name == "example1") return example1();
  if (name == "example2") return example2();
  return std::nullopt;
}

}  // namespace ooc
