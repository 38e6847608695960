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
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "ooc/cost_expr.hpp"
#include "ooc/matrix_compare.hpp"
#include "ooc/numeric_policy.hpp"

namespace ooc {

enum class Provenance { Analytic, Estimated };

/// Strong-convexity constant m and gradient Lipschitz constant M.
struct ConvexityConstants {
  double m = 0.0;
  double M = 0.0;
  Provenance provenance = Provenance::Analytic;
};

/// Axis-aligned region on which sampled constants are valid.
struct Box {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  static Box uniform(std::size_t q, double lo, double hi);
  bool operator==(const Box& other) const {
    return same_matrix(lower, other.lower) && same_matrix(upper, other.upper);
  }
};

/// A differentiable local cost f_i : R^q -> R.
class CostFunction {
 public:
  /// Returns f(y); writes the gradient into `grad` when non-null.
  using Evaluator = std::function<double(const Eigen::VectorXd& y, Eigen::VectorXd* grad)>;

  CostFunction(std::size_t dimension, Evaluator evaluator,
               std::optional<ConvexityConstants> constants, std::string description);

  std::size_t dimension() const { return dimension_; }
  double value(const Eigen::VectorXd& y) const { return evaluator_(y, nullptr); }
  Eigen::VectorXd gradient(const Eigen::VectorXd& y) const;
  double value_and_gradient(const Eigen::VectorXd& y, Eigen::VectorXd& grad) const;

  /// Known analytically (quadratics) or attached after estimation.
  const std::optional<ConvexityConstants>& constants() const { return constants_; }
  CostFunction with_constants(ConvexityConstants constants) const;

  const std::string& description() const { return description_; }

 private:
  std::size_t dimension_;
  Evaluator evaluator_;
  std::optional<ConvexityConstants> constants_;
  std::string description_;
};

/// f(y) = y^T Q y + b^T y + c, gradient (Q + Q^T) y + b, m = 2 lambda_min(Q),
/// M = 2 lambda_max(Q). Throws NotPositiveDefinite unless Q is symmetric PD.
CostFunction quadratic_cost(const Eigen::MatrixXd& Q, const Eigen::VectorXd& b, double c);

/// Scalar cost from a parsed expression; constants are not known up front.
CostFunction expression_cost(const CostExpr& expr);

/// Samples `samples` points in the box (deterministically) and takes the
/// extreme monotonicity / Lipschitz quotients over all well-separated pairs.
/// Throws NonConvexDetected when a quotient is negative beyond tolerance.
ConvexityConstants estimate_convexity_constants(const CostFunction& cost, const Box& box,
                                                std::size_t samples = 200,
                                                const NumericPolicy& policy = default_policy());
ConvexityConstants estimate_convexity_constants(const CostExpr& expr, const Box& box,
                                                std::size_t samples = 200,
                                                const NumericPolicy& policy = default_policy());

/// Minimizer of sum_i f_i by damped Newton with a gradient-descent fallback.
/// Converges to ||sum_i grad f_i(y*)|| <= 1e-10 or throws NoConvergence.
Eigen::VectorXd centralized_minimizer(const std::vector<CostFunction>& costs);

// Declarative cost entries as they appear in scenario files.
struct QuadraticSpec {
  Eigen::MatrixXd Q;
  Eigen::VectorXd b;
  double c = 0.0;

  bool operator==(const QuadraticSpec& o) const { return same_matrix(Q, o.Q) && same_matrix(b, o.b) && c == o.c; }
};

struct CostSpec {
  std::variant<std::string, QuadraticSpec> form;  // expression text or quadratic
  std::optional<Box> domain_box;

  bool operator==(const CostSpec&) const = default;
};

inline constexpr double kDefaultBoxLower = -10.0;
inline constexpr double kDefaultBoxUpper = 10.0;

CostFunction make_cost(const CostSpec& spec, std::size_t q);
Box effective_box(const CostSpec& spec, std::size_t q);

}  // namespace ooc
