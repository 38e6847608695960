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
#include <optional>

#include <Eigen/Dense>

#include "ooc/matrix_compare.hpp"
#include "ooc/numeric_policy.hpp"

namespace ooc {

/// LTI agent x' = A x + B u, y = C x.
class AgentPlant {
 public:
  /// Throws Error{ShapeMismatch} unless A is n x n, B is n x p, C is q x n.
  AgentPlant(Eigen::MatrixXd A, Eigen::MatrixXd B, Eigen::MatrixXd C);

  const Eigen::MatrixXd& A() const { return a_; }
  const Eigen::MatrixXd& B() const { return b_; }
  const Eigen::MatrixXd& C() const { return c_; }
  std::size_t n() const { return static_cast<std::size_t>(a_.rows()); }
  std::size_t p() const { return static_cast<std::size_t>(b_.cols()); }
  std::size_t q() const { return static_cast<std::size_t>(c_.rows()); }

  bool operator==(const AgentPlant& o) const {
    return same_matrix(a_, o.a_) && same_matrix(b_, o.b_) && same_matrix(c_, o.c_);
  }

 private:
  Eigen::MatrixXd a_, b_, c_;
};

/// (Upsilon, Phi, Psi) with C Psi = I, B Phi = A Psi, B Upsilon = Psi.
struct SolutionTriplet {
  Eigen::MatrixXd Upsilon;  // p x q
  Eigen::MatrixXd Phi;      // p x q
  Eigen::MatrixXd Psi;      // n x q
  double residual = 0.0;    // largest Frobenius residual of the three equations
};

struct TripletResiduals {
  double output = 0.0;     // ||C Psi - I||
  double state = 0.0;      // ||B Phi - A Psi||
  double input = 0.0;      // ||B Upsilon - Psi||
  double max() const;
};

struct RankCheck {
  bool ok = false;
  std::size_t rank = 0;
  std::size_t required = 0;  // n + q
};

/// Numerical rank of [[C B, 0], [-A B, B]] against n + q.
RankCheck check_regulation_rank(const AgentPlant& plant, const NumericPolicy& policy = default_policy());

TripletResiduals triplet_residuals(const AgentPlant& plant, const Eigen::MatrixXd& Upsilon,
                                   const Eigen::MatrixXd& Phi, const Eigen::MatrixXd& Psi);

/// Minimum-norm least-squares solution of the vectorized regulation
/// equations. Throws Unsolvable when the residual exceeds the policy limit.
SolutionTriplet solve_regulation_equations(const AgentPlant& plant,
                                           const NumericPolicy& policy = default_policy());

/// Accepts a user-supplied triplet if its residual is within policy; throws
/// Error{Unsolvable} (naming the worst equation) otherwise.
SolutionTriplet validate_triplet(const AgentPlant& plant, const Eigen::MatrixXd& Upsilon,
                                 const Eigen::MatrixXd& Phi, const Eigen::MatrixXd& Psi,
                                 const NumericPolicy& policy = default_policy());

struct GainSet {
  Eigen::MatrixXd K;                // p x n
  std::optional<Eigen::MatrixXd> H;  // n x q
  double spectral_abscissa_closed = 0.0;
  std::optional<double> spectral_abscissa_observer;
};

/// Accepts iff A - B K (and A - H C when H is given) is Hurwitz.
GainSet validate_gains(const AgentPlant& plant, const Eigen::MatrixXd& K,
                       const std::optional<Eigen::MatrixXd>& H = std::nullopt,
                       const NumericPolicy& policy = default_policy());

double spectral_abscissa(const Eigen::MatrixXd& m);

/// Hautus test on every eigenvalue with non-negative real part.
bool is_stabilizable(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                     const NumericPolicy& policy = default_policy());
bool is_detectable(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C,
                   const NumericPolicy& policy = default_policy());

/// Solves A^T P + P A = -Q for Hurwitz A.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q);

/// K = B^T P where P is the stabilizing solution of
/// A^T P + P A - P B B^T P + I = 0 (identity weights), by Newton-Kleinman.
Eigen::MatrixXd synthesize_stabilizing_gain(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                            const NumericPolicy& policy = default_policy());
/// Dual problem on (A^T, C^T); A - H C is Hurwitz.
Eigen::MatrixXd synthesize_observer_gain(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C,
                                         const NumericPolicy& policy = default_policy());

}  // namespace ooc
