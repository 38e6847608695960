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

#include "ooc/netgraph.hpp"
#include "test_support.hpp"

using namespace ooc;
using namespace ooc::testing;

TEST_CASE("build_digraph places a_ij for edge j -> i") {
  const Digraph g = build_digraph(two_cycle(), 2);
  CHECK(g.size() == 2);
  CHECK(g.weight(0, 1) == 1.0);
  CHECK(g.weight(1, 0) == 1.0);
  CHECK(g.weight(0, 0) == 0.0);

  const Digraph h = build_digraph({{1, 2, 2.5}}, 3);
  CHECK(h.weight(1, 0) == 2.5);
  CHECK(h.weight(0, 1) == 0.0);
  CHECK(h.in_neighbors(1) == std::vector<std::size_t>{0});
  CHECK(h.in_neighbors(0).empty());
}

TEST_CASE("build_digraph rejects malformed edges") {
  CHECK(error_code_of([] { build_digraph({{1, 1, 1.0}}, 2); }) == ErrorCode::SelfLoop);
  CHECK(error_code_of([] { build_digraph({{1, 2, 1.0}, {1, 2, 3.0}}, 2); }) == ErrorCode::DuplicateEdge);
  CHECK(error_code_of([] { build_digraph({{1, 3, 1.0}}, 2); }) == ErrorCode::BadIndex);
  CHECK(error_code_of([] { build_digraph({{0, 1, 1.0}}, 2); }) == ErrorCode::BadIndex);
  CHECK(error_code_of([] { build_digraph({{1, 2, 0.0}}, 2); }) == ErrorCode::ValidationError);
  CHECK(error_code_of([] { build_digraph({}, 0); }) == ErrorCode::ValidationError);
}

TEST_CASE("edges() lists edges back in 1-based form") {
  const Digraph g = build_digraph(unbalanced_six(), 6);
  const std::vector<Edge> e = g.edges();
  CHECK(e.size() == 7);
  const Digraph again = build_digraph(e, 6);
  CHECK(again == g);
}

TEST_CASE("laplacian of the examples") {
  CHECK(laplacian(build_digraph(two_cycle(), 2)) == mat({{1, -1}, {-1, 1}}));

  const Eigen::MatrixXd L4 = laplacian(build_digraph(ring_with_chord(), 4));
  CHECK(L4 == mat({{1, 0, -1, 0}, {-1, 2, 0, -1}, {0, -1, 1, 0}, {0, 0, -1, 1}}));

  const Eigen::MatrixXd L6 = laplacian(build_digraph(unbalanced_six(), 6));
  CHECK(Eigen::VectorXd(L6.row(2).transpose()) == vecd({-1, 0, 2, 0, 0, -1}));
  CHECK((L6 * Eigen::VectorXd::Ones(6)).isZero(0.0));
}

TEST_CASE("strong connectivity") {
  CHECK(is_strongly_connected(build_digraph(two_cycle(), 2)));
  CHECK(is_strongly_connected(build_digraph(ring_with_chord(), 4)));
  CHECK(is_strongly_connected(build_digraph(unbalanced_six(), 6)));
  CHECK_FALSE(is_strongly_connected(build_digraph({{1, 2, 1.0}}, 2)));
  CHECK_FALSE(is_strongly_connected(build_digraph({{1, 2, 1.0}, {2, 1, 1.0}, {3, 1, 1.0}}, 3)));
  CHECK(is_strongly_connected(build_digraph({}, 1)));
}

TEST_CASE("spectral info of the symmetric two-cycle") {
  const SpectralInfo s = spectral_info(build_digraph(two_cycle(), 2));
  CHECK(s.r(0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s.r(1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s.lambda2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("spectral info of the four-node example graph") {
  const SpectralInfo s = spectral_info(build_digraph(ring_with_chord(), 4));
  CHECK((s.r - vecd({0.2, 0.2, 0.4, 0.2})).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(s.r_min == doctest::Approx(0.2).epsilon(1e-12));
  // Independent eigensolve: eigenvalues of the symmetrized Laplacian are 0, 0.2, 0.4, 0.6.
  CHECK((s.sym_eigenvalues - vecd({0.0, 0.2, 0.4, 0.6})).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(s.lambda2 == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("spectral info of the six-node unbalanced graph") {
  const SpectralInfo s = spectral_info(build_digraph(unbalanced_six(), 6));
  CHECK((s.r - vecd({1, 2, 1, 1, 1, 1}) / 7.0).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(s.lambda2 == doctest::Approx(1.0 / 14.0).epsilon(1e-12));
  CHECK(s.sym_eigenvalues(2) == doctest::Approx(0.125995144).epsilon(1e-8));
  CHECK(s.sym_eigenvalues(5) == doctest::Approx(0.445433427).epsilon(1e-8));
}

TEST_CASE("spectral info rejects graphs that are not strongly connected") {
  CHECK(error_code_of([] { spectral_info(build_digraph({{1, 2, 1.0}}, 2)); }) == ErrorCode::NotStronglyConnected);
}

TEST_CASE("spectral invariants hold on random strongly connected digraphs") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> w(0.1, 3.0);
  std::bernoulli_distribution extra(0.3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 9;
    std::vector<Edge> edges;
    // A directed ring guarantees strong connectivity; extra chords unbalance it.
    for (std::size_t i = 1; i <= n; ++i) edges.push_back({i, i % n + 1, w(rng)});
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n; ++j) {
        if (i != j && j != i % n + 1 && extra(rng)) edges.push_back({i, j, w(rng)});
      }
    }
    const Digraph g = build_digraph(edges, n);
    const SpectralInfo s = spectral_info(g);
    for (Eigen::Index i = 0; i < s.laplacian.rows(); ++i) {
      double off = 0.0;
      for (Eigen::Index j = 0; j < s.laplacian.cols(); ++j) {
        if (j != i) off += s.laplacian(i, j);
      }
      CHECK(s.laplacian(i, i) + off == 0.0);
    }
    CHECK((s.laplacian * Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n))).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((s.r.transpose() * s.laplacian).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(std::abs(s.r.sum() - 1.0) <= 1e-12);
    CHECK(s.r.minCoeff() > 0.0);
    CHECK((s.sym_laplacian - s.sym_laplacian.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(std::abs(s.sym_eigenvalues(0)) <= 1e-10);
    CHECK(s.lambda2 > 0.0);
  }
}

TEST_CASE("kron and vec basics") {
  const Eigen::MatrixXd M = mat({{1, 2}, {3, 4}});
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(4, 4);
  expected.topLeftCorner(2, 2) = M;
  expected.bottomRightCorner(2, 2) = M;
  CHECK(kron(Eigen::MatrixXd::Identity(2, 2), M) == expected);
  CHECK(vec(mat({{1, 3}, {2, 4}})) == vecd({1, 2, 3, 4}));
  CHECK(unvec(vecd({1, 2, 3, 4, 5, 6}), 2, 3) == mat({{1, 3, 5}, {2, 4, 6}}));
}

TEST_CASE("Kronecker identities over random triples") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const int a = dim(rng), b = dim(rng), c = dim(rng), d = dim(rng);
    const Eigen::MatrixXd E = random_matrix(rng, a, b);
    const Eigen::MatrixXd F = random_matrix(rng, b, c);
    const Eigen::MatrixXd G = random_matrix(rng, c, d);
    const Eigen::VectorXd lhs = vec(E * F * G);
    const Eigen::VectorXd rhs = kron(G.transpose(), E) * vec(F);
    CHECK((lhs - rhs).norm() <= 1e-10 * std::max(1.0, lhs.norm()));

    const Eigen::MatrixXd S = random_matrix(rng, a, b);
    const Eigen::MatrixXd T = random_matrix(rng, b, a);
    const double tr_st = (S * T).trace();
    const double tr_ts = (T * S).trace();
    const double via_vec = vec(S.transpose()).dot(vec(T));
    CHECK(std::abs(tr_st - tr_ts) <= 1e-10 * std::max(1.0, std::abs(tr_st)));
    CHECK(std::abs(tr_st - via_vec) <= 1e-10 * std::max(1.0, std::abs(tr_st)));
  }
}
