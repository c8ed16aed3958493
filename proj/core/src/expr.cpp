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

#include "lindblad_pc/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

#include "lindblad_pc/errors.hpp"

namespace lindblad_pc {

struct RateExpr::Node {
  Kind kind = Kind::Constant;
  double value = 0.0;
  int exponent = 0;
  std::array<std::optional<RateExpr>, 2> children;  // engaged up to arity
  std::size_t arity = 0;
  bool time_dependent = false;
};

namespace {

double checked(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw NonFinite(std::string("non-finite value in ") + what);
  }
  return x;
}

double apply_binary(RateExpr::Kind kind, double a, double b) {
  switch (kind) {
    case RateExpr::Kind::Add: return checked(a + b, "addition");
    case RateExpr::Kind::Subtract: return checked(a - b, "subtraction");
    case RateExpr::Kind::Multiply: return checked(a * b, "multiplication");
    case RateExpr::Kind::Divide:
      if (b == 0.0) throw NonFinite("division by zero");
      return checked(a / b, "division");
    default: break;
  }
  throw Error("internal: not a binary operator");
}

double apply_function(RateExpr::Kind kind, double x) {
  switch (kind) {
    case RateExpr::Kind::Sin: return checked(std::sin(x), "sin");
    case RateExpr::Kind::Cos: return checked(std::cos(x), "cos");
    case RateExpr::Kind::Exp: return checked(std::exp(x), "exp");
    default: break;
  }
  throw Error("internal: not a function");
}

double integer_power(double x, int n) { return checked(std::pow(x, n), "power"); }

int precedence(const RateExpr& e) {
  switch (e.kind()) {
    case RateExpr::Kind::Add:
    case RateExpr::Kind::Subtract: return 1;
    case RateExpr::Kind::Multiply:
    case RateExpr::Kind::Divide: return 2;
    case RateExpr::Kind::Power: return 3;
    case RateExpr::Kind::Constant: return e.value() < 0.0 ? 0 : 5;
    case RateExpr::Kind::Negate: return 0;
    default: return 5;
  }
}

std::string format_number(double v) {
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

std::string wrap(const RateExpr& e, bool needed) {
  return needed ? "(" + e.to_string() + ")" : e.to_string();
}

}  // namespace

RateExpr::RateExpr() : RateExpr(constant(0.0)) {}

RateExpr::RateExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

RateExpr RateExpr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = checked(value, "constant");
  return RateExpr(std::move(n));
}

RateExpr RateExpr::time() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Time;
  n->time_dependent = true;
  return RateExpr(std::move(n));
}

RateExpr RateExpr::negate(RateExpr operand) {
  if (operand.is_constant()) return constant(-operand.value());
  if (operand.kind() == Kind::Negate) return operand.child(0);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Negate;
  n->time_dependent = operand.depends_on_time();
  n->children[0] = std::move(operand);
  n->arity = 1;
  return RateExpr(std::move(n));
}

RateExpr RateExpr::binary(Kind kind, RateExpr lhs, RateExpr rhs) {
  if (lhs.is_constant() && rhs.is_constant()) {
    return constant(apply_binary(kind, lhs.value(), rhs.value()));
  }
  const auto is = [](const RateExpr& e, double v) { return e.is_constant() && e.value() == v; };
  switch (kind) {
    case Kind::Add:
      if (is(lhs, 0.0)) return rhs;
      if (is(rhs, 0.0)) return lhs;
      break;
    case Kind::Subtract:
      if (is(rhs, 0.0)) return lhs;
      if (is(lhs, 0.0)) return negate(std::move(rhs));
      break;
    case Kind::Multiply:
      if (is(lhs, 1.0)) return rhs;
      if (is(rhs, 1.0)) return lhs;
      if (is(lhs, 0.0) || is(rhs, 0.0)) return constant(0.0);
      break;
    case Kind::Divide:
      if (is(rhs, 0.0)) throw NonFinite("division by zero");
      if (is(rhs, 1.0)) return lhs;
      if (is(lhs, 0.0)) return constant(0.0);
      break;
    default:
      throw Error("internal: not a binary operator");
  }
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->time_dependent = lhs.depends_on_time() || rhs.depends_on_time();
  n->children[0] = std::move(lhs);
  n->children[1] = std::move(rhs);
  n->arity = 2;
  return RateExpr(std::move(n));
}

RateExpr RateExpr::power(RateExpr base, int exponent) {
  if (exponent == 0) return constant(1.0);
  if (exponent == 1) return base;
  if (base.is_constant()) return constant(integer_power(base.value(), exponent));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Power;
  n->exponent = exponent;
  n->time_dependent = base.depends_on_time();
  n->children[0] = std::move(base);
  n->arity = 1;
  return RateExpr(std::move(n));
}

RateExpr RateExpr::function(Kind kind, RateExpr argument) {
  if (argument.is_constant()) return constant(apply_function(kind, argument.value()));
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->time_dependent = argument.depends_on_time();
  n->children[0] = std::move(argument);
  n->arity = 1;
  return RateExpr(std::move(n));
}

RateExpr::Kind RateExpr::kind() const noexcept { return node_->kind; }
double RateExpr::value() const noexcept { return node_->value; }
int RateExpr::exponent() const noexcept { return node_->exponent; }
std::size_t RateExpr::child_count() const noexcept { return node_->arity; }
bool RateExpr::depends_on_time() const noexcept { return node_->time_dependent; }

const RateExpr& RateExpr::child(std::size_t index) const {
  if (index >= node_->arity) throw IndexOutOfRange("expression child index out of range");
  return *node_->children[index];
}

double RateExpr::operator()(double t) const {
  switch (kind()) {
    case Kind::Constant: return value();
    case Kind::Time: return checked(t, "time argument");
    case Kind::Negate: return -child(0)(t);
    case Kind::Add:
    case Kind::Subtract:
    case Kind::Multiply:
    case Kind::Divide: return apply_binary(kind(), child(0)(t), child(1)(t));
    case Kind::Power: return integer_power(child(0)(t), exponent());
    case Kind::Sin:
    case Kind::Cos:
    case Kind::Exp: return apply_function(kind(), child(0)(t));
  }
  return 0.0;
}

std::string RateExpr::to_string() const {
  switch (kind()) {
    case Kind::Constant: return format_number(value());
    case Kind::Time: return "t";
    case Kind::Negate: return "-" + wrap(child(0), precedence(child(0)) < 5);
    case Kind::Add:
    case Kind::Subtract:
    case Kind::Multiply:
    case Kind::Divide: {
      static constexpr const char* ops[] = {"+", "-", "*", "/"};
      const int p = precedence(*this);
      const char* op = ops[static_cast<int>(kind()) - static_cast<int>(Kind::Add)];
      // Negative literals and negations print as "-x", which the grammar
      // accepts as a base, so they never need wrapping on either side.
      const auto side = [&](const RateExpr& c, bool right) {
        const int q = precedence(c);
        if (q == 0) return c.to_string();
        return wrap(c, right ? q <= p : q < p);
      };
      return side(child(0), false) + op + side(child(1), true);
    }
    case Kind::Power:
      return wrap(child(0), precedence(child(0)) < 5) + "^" + std::to_string(exponent());
    case Kind::Sin: return "sin(" + child(0).to_string() + ")";
    case Kind::Cos: return "cos(" + child(0).to_string() + ")";
    case Kind::Exp: return "exp(" + child(0).to_string() + ")";
  }
  return {};
}

bool operator==(const RateExpr& a, const RateExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.child_count() != b.child_count()) return false;
  if (a.kind() == RateExpr::Kind::Constant) return a.value() == b.value();
  if (a.kind() == RateExpr::Kind::Power && a.exponent() != b.exponent()) return false;
  for (std::size_t i = 0; i < a.child_count(); ++i) {
    if (!(a.child(i) == b.child(i))) return false;
  }
  return true;
}

RateExpr operator+(RateExpr a, RateExpr b) {
  return RateExpr::binary(RateExpr::Kind::Add, std::move(a), std::move(b));
}
RateExpr operator-(RateExpr a, RateExpr b) {
  return RateExpr::binary(RateExpr::Kind::Subtract, std::move(a), std::move(b));
}
RateExpr operator*(RateExpr a, RateExpr b) {
  return RateExpr::binary(RateExpr::Kind::Multiply, std::move(a), std::move(b));
}
RateExpr operator/(RateExpr a, RateExpr b) {
  return RateExpr::binary(RateExpr::Kind::Divide, std::move(a), std::move(b));
}
RateExpr operator-(RateExpr a) { return RateExpr::negate(std::move(a)); }
RateExpr sin(RateExpr a) { return RateExpr::function(RateExpr::Kind::Sin, std::move(a)); }
RateExpr cos(RateExpr a) { return RateExpr::function(RateExpr::Kind::Cos, std::move(a)); }
RateExpr exp(RateExpr a) { return RateExpr::function(RateExpr::Kind::Exp, std::move(a)); }
RateExpr pow(RateExpr a, int n) { return RateExpr::power(std::move(a), n); }

double eval_expr(const RateExpr& f, double t) {
  if (!std::isfinite(t)) throw NonFinite("evaluation time is not finite");
  return f(t);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Number, Name, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  std::size_t pos = 0;
  std::string_view text;
  double number = 0.0;
  bool integral = false;
};

std::string describe(const Token& tok) {
  if (tok.kind == Tok::End) return "end of input";
  return "'" + std::string(tok.text) + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    Token tok;
    tok.pos = pos_;
    if (pos_ >= src_.size()) return tok;
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_')) {
        ++end;
      }
      tok.kind = Tok::Name;
      tok.text = src_.substr(pos_, end - pos_);
      pos_ = end;
      return tok;
    }
    tok.text = src_.substr(pos_, 1);
    switch (c) {
      case '+': tok.kind = Tok::Plus; break;
      case '-': tok.kind = Tok::Minus; break;
      case '*': tok.kind = Tok::Star; break;
      case '/': tok.kind = Tok::Slash; break;
      case '^': tok.kind = Tok::Caret; break;
      case '(': tok.kind = Tok::LParen; break;
      case ')': tok.kind = Tok::RParen; break;
      default:
        throw SyntaxError(pos_, {"number", "name", "'('", "'-'"}, "'" + std::string(1, c) + "'");
    }
    ++pos_;
    return tok;
  }

 private:
  Token number() {
    Token tok;
    tok.kind = Tok::Number;
    tok.pos = pos_;
    std::size_t end = pos_;
    bool integral = true;
    const auto digits = [&] {
      std::size_t start = end;
      while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
      return end - start;
    };
    std::size_t mantissa = digits();
    if (end < src_.size() && src_[end] == '.') {
      integral = false;
      ++end;
      mantissa += digits();
    }
    if (mantissa == 0) throw SyntaxError(pos_, {"digit"}, "'.'");
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      std::size_t save = end;
      ++end;
      if (end < src_.size() && (src_[end] == '+' || src_[end] == '-')) ++end;
      if (digits() == 0) {
        end = save;  // "2e" is the number 2 followed by the name "e"
      } else {
        integral = false;
      }
    }
    tok.text = src_.substr(pos_, end - pos_);
    const auto res = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), tok.number);
    if (res.ec != std::errc() || !std::isfinite(tok.number)) {
      throw SyntaxError(pos_, {"finite number"}, "'" + std::string(tok.text) + "'");
    }
    tok.integral = integral;
    pos_ = end;
    return tok;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::string_view src, const ParamMap& params) : lexer_(src), params_(params) {
    advance();
  }

  RateExpr parse() {
    RateExpr e = expr();
    if (cur_.kind != Tok::End) throw SyntaxError(cur_.pos, {"operator", "end of input"}, describe(cur_));
    return e;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) throw SyntaxError(cur_.pos, {what}, describe(cur_));
    advance();
  }

  RateExpr expr() {
    RateExpr lhs = term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      const auto op = cur_.kind == Tok::Plus ? RateExpr::Kind::Add : RateExpr::Kind::Subtract;
      advance();
      lhs = RateExpr::binary(op, std::move(lhs), term());
    }
    return lhs;
  }

  RateExpr term() {
    RateExpr lhs = factor();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      const auto op = cur_.kind == Tok::Star ? RateExpr::Kind::Multiply : RateExpr::Kind::Divide;
      advance();
      lhs = RateExpr::binary(op, std::move(lhs), factor());
    }
    return lhs;
  }

  RateExpr factor() {
    RateExpr b = base();
    if (cur_.kind == Tok::Caret) {
      advance();
      if (cur_.kind != Tok::Number || !cur_.integral || cur_.number > 1024.0) {
        throw SyntaxError(cur_.pos, {"integer exponent"}, describe(cur_));
      }
      const int n = static_cast<int>(cur_.number);
      advance();
      b = RateExpr::power(std::move(b), n);
    }
    return b;
  }

  RateExpr base() {
    switch (cur_.kind) {
      case Tok::Number: {
        const double v = cur_.number;
        advance();
        return RateExpr::constant(v);
      }
      case Tok::Minus:
        advance();
        return RateExpr::negate(base());
      case Tok::LParen: {
        advance();
        RateExpr inner = expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Name: return name();
      default:
        throw SyntaxError(cur_.pos, {"number", "name", "'('", "'-'"}, describe(cur_));
    }
  }

  RateExpr name() {
    const std::string_view id = cur_.text;
    advance();
    if (id == "t") return RateExpr::time();
    RateExpr::Kind fn{};
    if (id == "sin") {
      fn = RateExpr::Kind::Sin;
    } else if (id == "cos") {
      fn = RateExpr::Kind::Cos;
    } else if (id == "exp") {
      fn = RateExpr::Kind::Exp;
    } else {
      const auto it = params_.find(id);
      if (it == params_.end()) throw UnboundParameter(std::string(id));
      return RateExpr::constant(it->second);
    }
    expect(Tok::LParen, "'('");
    RateExpr arg = expr();
    expect(Tok::RParen, "')'");
    return RateExpr::function(fn, std::move(arg));
  }

  Lexer lexer_;
  const ParamMap& params_;
  Token cur_;
};

}  // namespace

RateExpr parse_rate_expr(std::string_view text, const ParamMap& params) {
  return Parser(text, params).parse();
}

}  // namespace lindblad_pc
