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

#include "ooc/plantmodel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include "ooc/errors.hpp"
#include "ooc/netgraph.hpp"

namespace ooc {

namespace {

using Index = Eigen::Index;

std::string describe(std::complex<double> z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

template <typename Matrix>
std::size_t numerical_rank(const Matrix& m, double relative) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > relative * sv(0)) ++rank;
  }
  return rank;
}

// Hautus rank test of [A - lambda I, B] for every eigenvalue with Re >= 0.
bool hautus(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double relative) {
  const Index n = A.rows();
  Eigen::EigenSolver<Eigen::MatrixXd> eig(A, false);
  for (Index k = 0; k < n; ++k) {
    const std::complex<double> lambda = eig.eigenvalues()(k);
    if (lambda.real() < 0.0) continue;
    Eigen::MatrixXcd pencil(n, n + B.cols());
    pencil << A.cast<std::complex<double>>() - lambda * Eigen::MatrixXcd::Identity(n, n),
        B.cast<std::complex<double>>();
    if (numerical_rank(pencil, relative) < static_cast<std::size_t>(n)) return false;
  }
  return true;
}

bool hurwitz(const Eigen::MatrixXd& m, double margin) { return spectral_abscissa(m) < -margin; }

// Newton-Kleinman from a stabilizing K; Q = I, R = I.
Eigen::MatrixXd newton_kleinman(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, Eigen::MatrixXd K) {
  const Index n = A.rows();
  for (int iter = 0; iter < 200; ++iter) {
    const Eigen::MatrixXd closed = A - B * K;
    const Eigen::MatrixXd P =
        solve_lyapunov(closed, Eigen::MatrixXd::Identity(n, n) + K.transpose() * K);
    Eigen::MatrixXd next = B.transpose() * P;
    const double change = (next - K).norm();
    K = std::move(next);
    if (change <= 1e-13 * (1.0 + K.norm())) break;
  }
  return K;
}

}  // namespace

AgentPlant::AgentPlant(Eigen::MatrixXd A, Eigen::MatrixXd B, Eigen::MatrixXd C)
    : a_(std::move(A)), b_(std::move(B)), c_(std::move(C)) {
  if (a_.rows() == 0 || a_.rows() != a_.cols()) throw Error(ErrorCode::ShapeMismatch, "A must be square and non-empty");
  if (b_.rows() != a_.rows() || b_.cols() == 0) throw Error(ErrorCode::ShapeMismatch, "B must have n rows");
  if (c_.cols() != a_.rows() || c_.rows() == 0) throw Error(ErrorCode::ShapeMismatch, "C must have n columns");
}

double TripletResiduals::max() const { return std::max({output, state, input}); }

RankCheck check_regulation_rank(const AgentPlant& plant, const NumericPolicy& policy) {
  const auto n = static_cast<Index>(plant.n());
  const auto p = static_cast<Index>(plant.p());
  const auto q = static_cast<Index>(plant.q());
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(q + n, 2 * p);
  block.topLeftCorner(q, p) = plant.C() * plant.B();
  block.bottomLeftCorner(n, p) = -plant.A() * plant.B();
  block.bottomRightCorner(n, p) = plant.B();
  RankCheck out;
  out.rank = numerical_rank(block, policy.rank_relative);
  out.required = static_cast<std::size_t>(n + q);
  out.ok = out.rank == out.required;
  return out;
}

TripletResiduals triplet_residuals(const AgentPlant& plant, const Eigen::MatrixXd& Upsilon,
                                   const Eigen::MatrixXd& Phi, const Eigen::MatrixXd& Psi) {
  const auto n = static_cast<Index>(plant.n());
  const auto p = static_cast<Index>(plant.p());
  const auto q = static_cast<Index>(plant.q());
  if (Upsilon.rows() != p || Upsilon.cols() != q || Phi.rows() != p || Phi.cols() != q ||
      Psi.rows() != n || Psi.cols() != q) {
    throw Error(ErrorCode::ShapeMismatch, "triplet shapes must be p x q, p x q, n x q");
  }
  TripletResiduals r;
  r.output = (plant.C() * Psi - Eigen::MatrixXd::Identity(q, q)).norm();
  r.state = (plant.B() * Phi - plant.A() * Psi).norm();
  r.input = (plant.B() * Upsilon - Psi).norm();
  return r;
}

SolutionTriplet solve_regulation_equations(const AgentPlant& plant, const NumericPolicy& policy) {
  const auto n = static_cast<Index>(plant.n());
  const auto p = static_cast<Index>(plant.p());
  const auto q = static_cast<Index>(plant.q());
  const Eigen::MatrixXd Iq = Eigen::MatrixXd::Identity(q, q);

  // Unknowns s = [vec Psi; vec Phi; vec Upsilon], using vec(E F G) = (G^T kron E) vec F.
  const Index cols = n * q + 2 * p * q;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(q * q + 2 * n * q, cols);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(M.rows());
  // C Psi = I
  M.block(0, 0, q * q, n * q) = kron(Iq, plant.C());
  rhs.head(q * q) = vec(Iq);
  // B Phi - A Psi = 0
  M.block(q * q, 0, n * q, n * q) = -kron(Iq, plant.A());
  M.block(q * q, n * q, n * q, p * q) = kron(Iq, plant.B());
  // B Upsilon - Psi = 0
  M.block(q * q + n * q, 0, n * q, n * q) = -Eigen::MatrixXd::Identity(n * q, n * q);
  M.block(q * q + n * q, n * q + p * q, n * q, p * q) = kron(Iq, plant.B());

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(M);
  const Eigen::VectorXd s = cod.solve(rhs);

  SolutionTriplet t;
  t.Psi = unvec(s.segment(0, n * q), n, q);
  t.Phi = unvec(s.segment(n * q, p * q), p, q);
  t.Upsilon = unvec(s.segment(n * q + p * q, p * q), p, q);
  t.residual = triplet_residuals(plant, t.Upsilon, t.Phi, t.Psi).max();
  if (t.residual > policy.unsolvable_residual) {
    throw Error(ErrorCode::Unsolvable,
                "least-squares residual " + std::to_string(t.residual) + " (rank condition violated?)");
  }
  return t;
}

SolutionTriplet validate_triplet(const AgentPlant& plant, const Eigen::MatrixXd& Upsilon,
                                 const Eigen::MatrixXd& Phi, const Eigen::MatrixXd& Psi,
                                 const NumericPolicy& policy) {
  const TripletResiduals r = triplet_residuals(plant, Upsilon, Phi, Psi);
  if (r.max() > policy.triplet_residual) {
    std::ostringstream os;
    os << "supplied triplet residuals: ||C Psi - I|| = " << r.output << ", ||B Phi - A Psi|| = " << r.state
       << ", ||B Upsilon - Psi|| = " << r.input;
    throw Error(ErrorCode::Unsolvable, os.str());
  }
  return SolutionTriplet{Upsilon, Phi, Psi, r.max()};
}

double spectral_abscissa(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> eig(m, false);
  return eig.eigenvalues().real().maxCoeff();
}

GainSet validate_gains(const AgentPlant& plant, const Eigen::MatrixXd& K,
                       const std::optional<Eigen::MatrixXd>& H, const NumericPolicy& policy) {
  if (K.rows() != static_cast<Index>(plant.p()) || K.cols() != static_cast<Index>(plant.n())) {
    throw Error(ErrorCode::ShapeMismatch, "K must be p x n");
  }
  auto check = [&](const Eigen::MatrixXd& m, const char* what) {
    Eigen::EigenSolver<Eigen::MatrixXd> eig(m, false);
    const Eigen::VectorXcd& ev = eig.eigenvalues();
    Index worst = 0;
    ev.real().maxCoeff(&worst);
    if (!(ev(worst).real() < -policy.hurwitz_margin)) {
      throw Error(ErrorCode::NotHurwitz, std::string(what) + " has eigenvalue " + describe(ev(worst)));
    }
    return ev(worst).real();
  };
  GainSet gains;
  gains.K = K;
  gains.spectral_abscissa_closed = check(plant.A() - plant.B() * K, "A - B K");
  if (H) {
    if (H->rows() != static_cast<Index>(plant.n()) || H->cols() != static_cast<Index>(plant.q())) {
      throw Error(ErrorCode::ShapeMismatch, "H must be n x q");
    }
    gains.H = *H;
    gains.spectral_abscissa_observer = check(plant.A() - *H * plant.C(), "A - H C");
  }
  return gains;
}

bool is_stabilizable(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const NumericPolicy& policy) {
  return hautus(A, B, policy.rank_relative);
}

bool is_detectable(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C, const NumericPolicy& policy) {
  return hautus(A.transpose(), C.transpose(), policy.rank_relative);
}

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q) {
  const Index n = A.rows();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd At = A.transpose();
  const Eigen::MatrixXd op = kron(I, At) + kron(At, I);
  const Eigen::VectorXd p = op.partialPivLu().solve(-vec(Q));
  const Eigen::MatrixXd P = unvec(p, n, n);
  return 0.5 * (P + P.transpose());
}

Eigen::MatrixXd synthesize_stabilizing_gain(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                            const NumericPolicy& policy) {
  if (A.rows() != A.cols() || B.rows() != A.rows()) throw Error(ErrorCode::ShapeMismatch, "A n x n, B n x p");
  if (!is_stabilizable(A, B, policy)) throw Error(ErrorCode::NotStabilizable, "(A, B) fails the Hautus test");
  const Index n = A.rows();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);

  // K = 0 stabilizes A - beta I for beta past the spectral abscissa; walk beta
  // down to zero, re-solving the Riccati equation at each shift.
  double beta = std::max(0.0, spectral_abscissa(A)) + 1.0;
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(B.cols(), n);
  K = newton_kleinman(A - beta * I, B, K);
  while (beta > 0.0) {
    double next = 0.0;
    int halvings = 0;
    while (!hurwitz(A - next * I - B * K, 0.0)) {
      next = 0.5 * (next + beta);
      if (++halvings > 60) throw Error(ErrorCode::NoConvergence, "shift continuation stalled");
    }
    beta = next;
    K = newton_kleinman(A - beta * I, B, K);
  }
  if (!hurwitz(A - B * K, policy.hurwitz_margin)) {
    throw Error(ErrorCode::NotHurwitz, "Riccati gain failed to stabilize");
  }
  return K;
}

Eigen::MatrixXd synthesize_observer_gain(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C,
                                         const NumericPolicy& policy) {
  if (!is_detectable(A, C, policy)) throw Error(ErrorCode::NotDetectable, "(A, C) fails the Hautus test");
  return synthesize_stabilizing_gain(A.transpose(), C.transpose(), policy).transpose();
}

}  // namespace ooc
