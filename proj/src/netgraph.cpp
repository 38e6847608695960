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

#include "ooc/netgraph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ooc/errors.hpp"

namespace ooc {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

// Iterative DFS; appends nodes to `order` in post-order.
void dfs_postorder(const Eigen::MatrixXd& adj, bool transpose, std::size_t start,
                   std::vector<char>& seen, std::vector<std::size_t>& order) {
  const std::size_t n = static_cast<std::size_t>(adj.rows());
  std::vector<std::pair<std::size_t, std::size_t>> stack{{start, 0}};
  seen[start] = 1;
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    bool pushed = false;
    while (next < n) {
      const std::size_t w = next++;
      // edge node -> w exists iff a_{w,node} > 0
      const double a = transpose ? adj(idx(node), idx(w)) : adj(idx(w), idx(node));
      if (a > 0.0 && !seen[w]) {
        seen[w] = 1;
        stack.emplace_back(w, 0);
        pushed = true;
        break;
      }
    }
    if (!pushed) {
      order.push_back(node);
      stack.pop_back();
    }
  }
}

}  // namespace

Digraph::Digraph(Eigen::MatrixXd weights) : weights_(std::move(weights)) {
  const std::size_t n = size();
  in_neighbors_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (weights_(idx(i), idx(j)) > 0.0) in_neighbors_[i].push_back(j);
    }
  }
}

std::vector<Edge> Digraph::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j : in_neighbors_[i]) out.push_back({j + 1, i + 1, weight(i, j)});
  }
  return out;
}

Digraph build_digraph(const std::vector<Edge>& edges, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::ValidationError, "graph must have at least one node");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(idx(n), idx(n));
  for (const Edge& e : edges) {
    const std::string label =
        "edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) + ")";
    if (e.src < 1 || e.src > n || e.dst < 1 || e.dst > n) {
      throw Error(ErrorCode::BadIndex, label + " outside 1.." + std::to_string(n));
    }
    if (e.src == e.dst) throw Error(ErrorCode::SelfLoop, label);
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::ValidationError, label + " must have a positive finite weight");
    }
    double& slot = w(idx(e.dst - 1), idx(e.src - 1));
    if (slot != 0.0) throw Error(ErrorCode::DuplicateEdge, label);
    slot = e.weight;
  }
  return Digraph(std::move(w));
}

Eigen::MatrixXd laplacian(const Digraph& g) {
  const Eigen::MatrixXd& a = g.weights();
  Eigen::MatrixXd lap = -a;
  for (Index i = 0; i < a.rows(); ++i) {
    double row_sum = 0.0;
    for (Index j = 0; j < a.cols(); ++j) {
      if (j != i) row_sum += a(i, j);
    }
    lap(i, i) = row_sum;
  }
  return lap;
}

bool is_strongly_connected(const Digraph& g) {
  // One component iff every node is reachable from node 0 in both G and G^T.
  const std::size_t n = g.size();
  for (bool transpose : {false, true}) {
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> order;
    dfs_postorder(g.weights(), transpose, 0, seen, order);
    if (order.size() != n) return false;
  }
  return true;
}

SpectralInfo spectral_info(const Digraph& g, const NumericPolicy& policy) {
  if (!is_strongly_connected(g)) {
    throw Error(ErrorCode::NotStronglyConnected, "left eigenvector requires a strongly connected graph");
  }
  const Index n = idx(g.size());
  SpectralInfo info;
  info.laplacian = laplacian(g);
  const Eigen::MatrixXd& lap = info.laplacian;

  if (n > 1) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(lap.transpose());
    const Eigen::VectorXd& sv = svd.singularValues();  // descending
    const double scale = std::max(1.0, sv(0));
    if (sv(n - 2) <= policy.structural_zero * scale) {
      throw Error(ErrorCode::NullSpaceDegenerate, "kernel of L^T is not one-dimensional");
    }
  }

  // [L^T; 1^T] r = [0; 1]
  Eigen::MatrixXd stacked(n + 1, n);
  stacked << lap.transpose(), Eigen::RowVectorXd::Ones(n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = 1.0;
  Eigen::VectorXd r = stacked.colPivHouseholderQr().solve(rhs);
  r /= r.sum();
  if (r.minCoeff() <= 0.0) {
    throw Error(ErrorCode::NullSpaceDegenerate, "left eigenvector is not strictly positive");
  }
  info.r = r;
  info.r_min = r.minCoeff();

  const Eigen::MatrixXd rl = r.asDiagonal() * lap;
  info.sym_laplacian = 0.5 * (rl + rl.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(info.sym_laplacian, Eigen::EigenvaluesOnly);
  info.sym_eigenvalues = eig.eigenvalues();

  if (n == 1) {
    info.lambda2 = 0.0;
    return info;
  }
  // The zero eigenvalue is the one closest to zero; lambda2 is the smallest of the rest.
  Index zero_at = 0;
  info.sym_eigenvalues.cwiseAbs().minCoeff(&zero_at);
  double lambda2 = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < n; ++k) {
    if (k != zero_at) lambda2 = std::min(lambda2, info.sym_eigenvalues(k));
  }
  info.lambda2 = lambda2;
  return info;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& e, const Eigen::MatrixXd& f) {
  Eigen::MatrixXd out(e.rows() * f.rows(), e.cols() * f.cols());
  for (Index i = 0; i < e.rows(); ++i) {
    for (Index j = 0; j < e.cols(); ++j) {
      out.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = e(i, j) * f;
    }
  }
  return out;
}

Eigen::VectorXd vec(const Eigen::MatrixXd& e) {
  // Eigen's default storage is column-major, so the raw buffer is vec(E).
  return Eigen::Map<const Eigen::VectorXd>(e.data(), e.size());
}

Eigen::MatrixXd unvec(const Eigen::VectorXd& v, Index rows, Index cols) {
  return Eigen::Map<const Eigen::MatrixXd>(v.data(), rows, cols);
}

}  // namespace ooc
