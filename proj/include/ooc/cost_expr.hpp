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
#include <memory>
#include <string>

namespace ooc {

/// Forward-mode dual number: value plus derivative with respect to y.
struct Dual {
  double value = 0.0;
  double deriv = 0.0;
};

Dual operator+(Dual a, Dual b);
Dual operator-(Dual a, Dual b);
Dual operator*(Dual a, Dual b);
Dual operator/(Dual a, Dual b);
Dual operator-(Dual a);

/// Parsed scalar expression in the variable `y`.
///
/// Grammar (usual precedence, `^` right-associative and binding tighter than
/// unary minus):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := ('+' | '-') unary | power
///     power   := primary ('^' unary)?
///     primary := number | 'y' | 'pi' | func '(' expr ')' | '(' expr ')'
///     func    := sin | cos | ln | log | sqrt | exp
///
/// Syntax errors throw Error{ParseError} naming the byte offset and the token
/// that was expected. Domain violations (ln of a non-positive number, sqrt of
/// a negative one, division by zero) throw Error{DomainError} at evaluation.
class CostExpr {
 public:
  struct Node;

  static CostExpr parse(const std::string& text);

  double value(double y) const { return eval(Dual{y, 0.0}).value; }
  /// f(y) and f'(y) by dual-number propagation.
  Dual eval_with_derivative(double y) const { return eval(Dual{y, 1.0}); }
  Dual eval(Dual y) const;

  const std::string& text() const { return text_; }

 private:
  CostExpr(std::string text, std::shared_ptr<const Node> root)
      : text_(std::move(text)), root_(std::move(root)) {}

  std::string text_;
  std::shared_ptr<const Node> root_;
};

/// The expression language is scalar-only; q must be 1.
CostExpr parse_cost_expression(const std::string& text, std::size_t q = 1);

}  // namespace ooc
