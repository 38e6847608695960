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
#include <vector>

#include <Eigen/Dense>

#include "ooc/matrix_compare.hpp"
#include "ooc/numeric_policy.hpp"

namespace ooc {

/// A directed edge src -> dst with positive weight. Indices are 1-based, as
/// they appear in scenario files.
struct Edge {
  std::size_t src = 0;
  std::size_t dst = 0;
  double weight = 1.0;

  bool operator==(const Edge&) const = default;
};

/// Weighted digraph stored as its adjacency matrix: weights()(i, j) = a_ij > 0
/// iff agent i receives from agent j (edge j -> i). Immutable once built.
class Digraph {
 public:
  std::size_t size() const { return static_cast<std::size_t>(weights_.rows()); }
  const Eigen::MatrixXd& weights() const { return weights_; }
  double weight(std::size_t i, std::size_t j) const {
    return weights_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  /// In-neighbours of agent i (0-based), in increasing index order.
  const std::vector<std::size_t>& in_neighbors(std::size_t i) const { return in_neighbors_[i]; }

  /// Edges in 1-based (src, dst, weight) form, ordered by (dst, src).
  std::vector<Edge> edges() const;

  bool operator==(const Digraph& other) const { return same_matrix(weights_, other.weights_); }

 private:
  friend Digraph build_digraph(const std::vector<Edge>& edges, std::size_t n);
  explicit Digraph(Eigen::MatrixXd weights);

  Eigen::MatrixXd weights_;
  std::vector<std::vector<std::size_t>> in_neighbors_;
};

/// Throws Error{SelfLoop | DuplicateEdge | BadIndex} on malformed input, and
/// Error{ValidationError} for non-positive weights or n = 0.
Digraph build_digraph(const std::vector<Edge>& edges, std::size_t n);

/// l_ii = sum_j a_ij, l_ij = -a_ij. Rows sum to exactly zero.
Eigen::MatrixXd laplacian(const Digraph& g);

bool is_strongly_connected(const Digraph& g);

struct SpectralInfo {
  Eigen::MatrixXd laplacian;      // L
  Eigen::VectorXd r;              // left null vector of L, positive, sums to 1
  double r_min = 0.0;
  Eigen::MatrixXd sym_laplacian;  // (R L + L^T R) / 2
  Eigen::VectorXd sym_eigenvalues;  // ascending
  double lambda2 = 0.0;
};

/// Left eigenvector and algebraic connectivity of the r-weighted symmetrized
/// Laplacian. Requires strong connectivity.
SpectralInfo spectral_info(const Digraph& g, const NumericPolicy& policy = default_policy());

// Kronecker/vec utilities.
Eigen::MatrixXd kron(const Eigen::MatrixXd& e, const Eigen::MatrixXd& f);
/// Column stacking.
Eigen::VectorXd vec(const Eigen::MatrixXd& e);
/// Inverse of vec for a rows x cols matrix.
Eigen::MatrixXd unvec(const Eigen::VectorXd& v, Eigen::Index rows, Eigen::Index cols);

}  // namespace ooc
