// Copyright 2026 The lindblad-pc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Scalar rate functions gamma(t): a small expression language with a parser,
// an evaluator and a table-driven antiderivative with a quadrature fallback.
//
// Grammar (whitespace insensitive):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' int)?
//   base   := number | name | 't' | '(' expr ')'
//           | ('sin'|'cos'|'exp') '(' expr ')' | '-' base
//
// Unary minus binds to a base, so "-t^2" parses as (-t)^2.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lindblad_pc {

using ParamMap = std::map<std::string, double, std::less<>>;

/// Immutable expression tree over the time variable `t`.
///
/// Parameters are substituted at parse time, so a RateExpr only ever holds
/// literals and `t`. Factories fold constant subtrees and the identities
/// x*1, x+0, x^1, --x, which gives a canonical form for structural equality.
class RateExpr {
 public:
  enum class Kind { Constant, Time, Negate, Add, Subtract, Multiply, Divide, Power, Sin, Cos, Exp };

  RateExpr();  // the constant 0

  static RateExpr constant(double value);
  static RateExpr time();
  static RateExpr negate(RateExpr operand);
  static RateExpr binary(Kind kind, RateExpr lhs, RateExpr rhs);
  static RateExpr power(RateExpr base, int exponent);
  static RateExpr function(Kind kind, RateExpr argument);

  Kind kind() const noexcept;
  /// Literal value; only meaningful for Kind::Constant.
  double value() const noexcept;
  /// Integer exponent; only meaningful for Kind::Power.
  int exponent() const noexcept;
  /// Child count is 0, 1 or 2 depending on the kind.
  const RateExpr& child(std::size_t index) const;
  std::size_t child_count() const noexcept;

  bool is_constant() const noexcept { return kind() == Kind::Constant; }
  bool depends_on_time() const noexcept;

  /// Evaluates at `t`; throws NonFinite if any intermediate is not finite.
  double operator()(double t) const;

  /// Source text that parses back to an equal expression.
  std::string to_string() const;

  friend bool operator==(const RateExpr& a, const RateExpr& b);

 private:
  struct Node;
  explicit RateExpr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

RateExpr operator+(RateExpr a, RateExpr b);
RateExpr operator-(RateExpr a, RateExpr b);
RateExpr operator*(RateExpr a, RateExpr b);
RateExpr operator/(RateExpr a, RateExpr b);
RateExpr operator-(RateExpr a);
RateExpr sin(RateExpr a);
RateExpr cos(RateExpr a);
RateExpr exp(RateExpr a);
RateExpr pow(RateExpr a, int n);

/// Parses `text`, substituting every name other than `t` from `params`.
/// Throws SyntaxError or UnboundParameter.
RateExpr parse_rate_expr(std::string_view text, const ParamMap& params = {});

double eval_expr(const RateExpr& f, double t);

/// F(t) = integral of f over [0, t], either closed form or cached quadrature.
class Antiderivative {
 public:
  static constexpr double kQuadratureTolerance = 1e-10;

  static Antiderivative closed_form(RateExpr integrand, RateExpr primitive);
  static Antiderivative quadrature(RateExpr integrand);

  bool is_closed_form() const noexcept { return closed_.has_value(); }
  /// The closed-form primitive. Precondition: is_closed_form().
  const RateExpr& expression() const { return *closed_; }
  const RateExpr& integrand() const noexcept { return integrand_; }

  double operator()(double t) const;

 private:
  class QuadratureCache;

  Antiderivative(RateExpr integrand, std::optional<RateExpr> closed,
                 std::shared_ptr<QuadratureCache> cache);

  RateExpr integrand_;
  std::optional<RateExpr> closed_;
  std::shared_ptr<QuadratureCache> cache_;
};

/// Matches f against sums and constant multiples of c, t^n, sin(at+b),
/// cos(at+b), sin^2(at+b), cos^2(at+b), exp(at+b). Returns nullopt when f is
/// outside that table or a frequency |a| < 1e-6 would appear as 1/a.
std::optional<RateExpr> closed_form_antiderivative(const RateExpr& f);

/// Closed form when available, quadrature otherwise. Never fails.
Antiderivative antiderivative(const RateExpr& f);

}  // namespace lindblad_pc
