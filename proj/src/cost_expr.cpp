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

#include "ooc/cost_expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <string_view>
#include <vector>

#include "ooc/errors.hpp"

namespace ooc {

Dual operator+(Dual a, Dual b) { return {a.value + b.value, a.deriv + b.deriv}; }
Dual operator-(Dual a, Dual b) { return {a.value - b.value, a.deriv - b.deriv}; }
Dual operator*(Dual a, Dual b) { return {a.value * b.value, a.deriv * b.value + a.value * b.deriv}; }
Dual operator-(Dual a) { return {-a.value, -a.deriv}; }
Dual operator/(Dual a, Dual b) {
  if (b.value == 0.0) throw Error(ErrorCode::DomainError, "division by zero");
  return {a.value / b.value, (a.deriv * b.value - a.value * b.deriv) / (b.value * b.value)};
}

namespace {

enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Ln, Sqrt, Exp };

bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }

Dual power(Dual base, Dual exponent, bool exponent_constant) {
  if (exponent_constant && (is_integer(exponent.value) || base.value > 0.0)) {
    const double c = exponent.value;
    if (base.value == 0.0 && c < 0.0) throw Error(ErrorCode::DomainError, "zero raised to a negative power");
    const double v = std::pow(base.value, c);
    const double d = (c == 0.0) ? 0.0 : c * std::pow(base.value, c - 1.0) * base.deriv;
    return {v, d};
  }
  if (base.value <= 0.0) {
    throw Error(ErrorCode::DomainError, "non-positive base with a non-integer or variable exponent");
  }
  const double v = std::pow(base.value, exponent.value);
  const double lb = std::log(base.value);
  return {v, v * (exponent.deriv * lb + exponent.value * base.deriv / base.value)};
}

}  // namespace

struct CostExpr::Node {
  Op op = Op::Const;
  double constant = 0.0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;

  bool depends_on_y() const {
    if (op == Op::Var) return true;
    return (lhs && lhs->depends_on_y()) || (rhs && rhs->depends_on_y());
  }

  Dual eval(Dual y) const {
    switch (op) {
      case Op::Const: return {constant, 0.0};
      case Op::Var: return y;
      case Op::Add: return lhs->eval(y) + rhs->eval(y);
      case Op::Sub: return lhs->eval(y) - rhs->eval(y);
      case Op::Mul: return lhs->eval(y) * rhs->eval(y);
      case Op::Div: return lhs->eval(y) / rhs->eval(y);
      case Op::Neg: return -lhs->eval(y);
      case Op::Pow: return power(lhs->eval(y), rhs->eval(y), !rhs->depends_on_y());
      case Op::Sin: {
        const Dual a = lhs->eval(y);
        return {std::sin(a.value), std::cos(a.value) * a.deriv};
      }
      case Op::Cos: {
        const Dual a = lhs->eval(y);
        return {std::cos(a.value), -std::sin(a.value) * a.deriv};
      }
      case Op::Ln: {
        const Dual a = lhs->eval(y);
        if (a.value <= 0.0) throw Error(ErrorCode::DomainError, "ln of a non-positive value");
        return {std::log(a.value), a.deriv / a.value};
      }
      case Op::Sqrt: {
        const Dual a = lhs->eval(y);
        if (a.value < 0.0) throw Error(ErrorCode::DomainError, "sqrt of a negative value");
        const double s = std::sqrt(a.value);
        return {s, a.deriv / (2.0 * s)};
      }
      case Op::Exp: {
        const Dual a = lhs->eval(y);
        const double e = std::exp(a.value);
        return {e, e * a.deriv};
      }
    }
    return {};
  }
};

namespace {

using NodePtr = std::shared_ptr<const CostExpr::Node>;

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double constant = 0.0) {
  auto node = std::make_shared<CostExpr::Node>();
  node->op = op;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  node->constant = constant;
  return node;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_space();
    if (pos_ != text_.size()) fail("end of expression");
    return root;
  }

 private:
  [[noreturn]] void fail(std::string_view expected) const {
    std::string found = pos_ < text_.size() ? std::string("'") + text_[pos_] + "'" : "end of input";
    throw Error(ErrorCode::ParseError, "at position " + std::to_string(pos_) + ": expected " +
                                           std::string(expected) + ", found " + found);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("'") + c + "'");
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Op::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make(Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Op::Mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make(Op::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Op::Pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("number, 'y', function or '('");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "y") return make(Op::Var);
      if (name == "pi") return make(Op::Const, nullptr, nullptr, std::numbers::pi);
      Op op;
      if (name == "sin") {
        op = Op::Sin;
      } else if (name == "cos") {
        op = Op::Cos;
      } else if (name == "ln" || name == "log") {
        op = Op::Ln;
      } else if (name == "sqrt") {
        op = Op::Sqrt;
      } else if (name == "exp") {
        op = Op::Exp;
      } else {
        pos_ = start;
        fail("'y', 'pi' or one of sin, cos, ln, log, sqrt, exp");
      }
      expect('(');
      NodePtr arg = expr();
      expect(')');
      return make(op, arg);
    }
    fail("number, 'y', function or '('");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    const char* begin = text_.data() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("number");
    pos_ = start + static_cast<std::size_t>(end - begin);
    return make(Op::Const, nullptr, nullptr, v);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

CostExpr CostExpr::parse(const std::string& text) {
  Parser parser(text);
  NodePtr root = parser.parse();
  return CostExpr(text, std::move(root));
}

Dual CostExpr::eval(Dual y) const { return root_->eval(y); }

CostExpr parse_cost_expression(const std::string& text, std::size_t q) {
  if (q != 1) {
    throw Error(ErrorCode::ValidationError,
                "expression costs are scalar (q = 1); use a quadratic cost for q = " + std::to_string(q));
  }
  return CostExpr::parse(text);
}

}  // namespace ooc
