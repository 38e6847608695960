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

#include "ooc/costmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ooc/errors.hpp"

namespace ooc {

Box Box::uniform(std::size_t q, double lo, double hi) {
  const auto n = static_cast<Eigen::Index>(q);
  return {Eigen::VectorXd::Constant(n, lo), Eigen::VectorXd::Constant(n, hi)};
}

CostFunction::CostFunction(std::size_t dimension, Evaluator evaluator,
                           std::optional<ConvexityConstants> constants, std::string description)
    : dimension_(dimension),
      evaluator_(std::move(evaluator)),
      constants_(constants),
      description_(std::move(description)) {}

Eigen::VectorXd CostFunction::gradient(const Eigen::VectorXd& y) const {
  Eigen::VectorXd g(static_cast<Eigen::Index>(dimension_));
  evaluator_(y, &g);
  return g;
}

double CostFunction::value_and_gradient(const Eigen::VectorXd& y, Eigen::VectorXd& grad) const {
  grad.resize(static_cast<Eigen::Index>(dimension_));
  return evaluator_(y, &grad);
}

CostFunction CostFunction::with_constants(ConvexityConstants constants) const {
  CostFunction copy = *this;
  copy.constants_ = constants;
  return copy;
}

CostFunction quadratic_cost(const Eigen::MatrixXd& Q, const Eigen::VectorXd& b, double c) {
  if (Q.rows() != Q.cols() || Q.rows() != b.size() || Q.rows() == 0) {
    throw Error(ErrorCode::ShapeMismatch, "quadratic cost needs square Q matching b");
  }
  if ((Q - Q.transpose()).norm() > 1e-12 * std::max(1.0, Q.norm())) {
    throw Error(ErrorCode::NotPositiveDefinite, "Q must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Q, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) throw Error(ErrorCode::NotPositiveDefinite, "smallest eigenvalue of Q is " + std::to_string(lo));

  const Eigen::MatrixXd hessian = Q + Q.transpose();
  auto eval = [Q, b, c, hessian](const Eigen::VectorXd& y, Eigen::VectorXd* grad) {
    if (grad) *grad = hessian * y + b;
    return y.dot(Q * y) + b.dot(y) + c;
  };
  return CostFunction(static_cast<std::size_t>(Q.rows()), eval,
                      ConvexityConstants{2.0 * lo, 2.0 * hi, Provenance::Analytic}, "quadratic");
}

CostFunction expression_cost(const CostExpr& expr) {
  auto eval = [expr](const Eigen::VectorXd& y, Eigen::VectorXd* grad) {
    const Dual d = expr.eval_with_derivative(y(0));
    if (grad) (*grad)(0) = d.deriv;
    return d.value;
  };
  return CostFunction(1, eval, std::nullopt, expr.text());
}

ConvexityConstants estimate_convexity_constants(const CostFunction& cost, const Box& box,
                                                std::size_t samples, const NumericPolicy& policy) {
  const auto q = static_cast<Eigen::Index>(cost.dimension());
  if (box.lower.size() != q || box.upper.size() != q) {
    throw Error(ErrorCode::ShapeMismatch, "box dimension does not match the cost");
  }
  if ((box.upper - box.lower).minCoeff() <= 0.0) throw Error(ErrorCode::ValidationError, "empty box");
  if (samples < 100) throw Error(ErrorCode::ValidationError, "at least 100 samples are required");

  std::mt19937_64 rng(0x0c0ffee5eedULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Eigen::VectorXd> points(samples, Eigen::VectorXd(q));
  std::vector<Eigen::VectorXd> grads(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    for (Eigen::Index k = 0; k < q; ++k) {
      points[s](k) = box.lower(k) + unit(rng) * (box.upper(k) - box.lower(k));
    }
    grads[s] = cost.gradient(points[s]);
  }

  // Near-coincident pairs amplify rounding in the quotients; skip them.
  const double min_sep = 1e-3 * (box.upper - box.lower).norm();
  double m = std::numeric_limits<double>::infinity();
  double M = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    for (std::size_t j = i + 1; j < samples; ++j) {
      const Eigen::VectorXd dx = points[i] - points[j];
      const double dist = dx.norm();
      if (dist < min_sep) continue;
      const Eigen::VectorXd dg = grads[i] - grads[j];
      const double mono = dx.dot(dg) / (dist * dist);
      if (mono < -policy.convexity_tolerance) {
        throw Error(ErrorCode::NonConvexDetected,
                    "monotonicity quotient " + std::to_string(mono) + " on sampled pair");
      }
      m = std::min(m, mono);
      M = std::max(M, dg.norm() / dist);
    }
  }
  if (!std::isfinite(m)) throw Error(ErrorCode::ValidationError, "box too small for sampling");
  return {std::max(m, 0.0), std::max(M, std::max(m, 0.0)), Provenance::Estimated};
}

ConvexityConstants estimate_convexity_constants(const CostExpr& expr, const Box& box,
                                                std::size_t samples, const NumericPolicy& policy) {
  return estimate_convexity_constants(expression_cost(expr), box, samples, policy);
}

Eigen::VectorXd centralized_minimizer(const std::vector<CostFunction>& costs) {
  if (costs.empty()) throw Error(ErrorCode::ValidationError, "no costs to minimize");
  const std::size_t q = costs.front().dimension();
  for (const auto& c : costs) {
    if (c.dimension() != q) throw Error(ErrorCode::ShapeMismatch, "costs disagree on dimension");
  }
  const auto n = static_cast<Eigen::Index>(q);

  auto total = [&](const Eigen::VectorXd& y, Eigen::VectorXd& grad) {
    grad = Eigen::VectorXd::Zero(n);
    double f = 0.0;
    Eigen::VectorXd g;
    for (const auto& c : costs) {
      f += c.value_and_gradient(y, g);
      grad += g;
    }
    return f;
  };

  constexpr double kGradTol = 1e-10;
  constexpr int kMaxIter = 500;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd g;
  double f = total(y, g);
  double step_scale = 1.0;  // inverse curvature guess for the descent fallback

  for (int iter = 0; iter < kMaxIter; ++iter) {
    if (g.norm() <= kGradTol) return y;

    // Hessian of the aggregate by central differences of its gradient.
    Eigen::MatrixXd hess(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double h = 1e-5 * std::max(1.0, std::abs(y(k)));
      Eigen::VectorXd yp = y, ym = y, gp, gm;
      yp(k) += h;
      ym(k) -= h;
      total(yp, gp);
      total(ym, gm);
      hess.col(k) = (gp - gm) / (2.0 * h);
    }
    hess = 0.5 * (hess + hess.transpose());

    Eigen::VectorXd dir;
    Eigen::LLT<Eigen::MatrixXd> llt(hess);
    if (llt.info() == Eigen::Success) {
      dir = -llt.solve(g);
    }
    if (dir.size() == 0 || !dir.allFinite() || dir.dot(g) >= 0.0) {
      dir = -step_scale * g;
    } else {
      step_scale = std::max(step_scale, dir.norm() / g.norm());
    }

    double alpha = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      Eigen::VectorXd trial = y + alpha * dir;
      Eigen::VectorXd gt;
      double ft = 0.0;
      try {
        ft = total(trial, gt);
      } catch (const Error&) {
        alpha *= 0.5;
        continue;
      }
      if (std::isfinite(ft) && (ft <= f + 1e-4 * alpha * g.dot(dir) || gt.norm() < g.norm())) {
        y = trial;
        f = ft;
        g = gt;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
  }
  if (g.norm() <= kGradTol) return y;
  throw Error(ErrorCode::NoConvergence,
              "aggregate gradient norm " + std::to_string(g.norm()) + " after iteration cap");
}

Box effective_box(const CostSpec& spec, std::size_t q) {
  return spec.domain_box ? *spec.domain_box : Box::uniform(q, kDefaultBoxLower, kDefaultBoxUpper);
}

CostFunction make_cost(const CostSpec& spec, std::size_t q) {
  if (const auto* text = std::get_if<std::string>(&spec.form)) {
    return expression_cost(parse_cost_expression(*text, q));
  }
  const auto& quad = std::get<QuadraticSpec>(spec.form);
  if (static_cast<std::size_t>(quad.Q.rows()) != q) {
    throw Error(ErrorCode::ShapeMismatch, "quadratic cost dimension differs from q");
  }
  return quadratic_cost(quad.Q, quad.b, quad.c);
}

}  // namespace ooc
