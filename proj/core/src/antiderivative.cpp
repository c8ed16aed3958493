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

#include <cmath>
#include <limits>
#include <mutex>
#include <utility>
#include <vector>

#include "lindblad_pc/errors.hpp"
#include "lindblad_pc/expr.hpp"

namespace lindblad_pc {
namespace {

using Kind = RateExpr::Kind;

constexpr double kMinFrequency = 1e-6;

// a*t + b
struct Linear {
  double slope = 0.0;
  double offset = 0.0;
};

std::optional<Linear> as_linear(const RateExpr& e) {
  switch (e.kind()) {
    case Kind::Constant: return Linear{0.0, e.value()};
    case Kind::Time: return Linear{1.0, 0.0};
    case Kind::Negate: {
      auto x = as_linear(e.child(0));
      if (!x) return std::nullopt;
      return Linear{-x->slope, -x->offset};
    }
    case Kind::Add:
    case Kind::Subtract: {
      auto l = as_linear(e.child(0));
      auto r = as_linear(e.child(1));
      if (!l || !r) return std::nullopt;
      const double s = e.kind() == Kind::Add ? 1.0 : -1.0;
      return Linear{l->slope + s * r->slope, l->offset + s * r->offset};
    }
    case Kind::Multiply: {
      const RateExpr* c = nullptr;
      const RateExpr* x = nullptr;
      if (e.child(0).is_constant()) {
        c = &e.child(0);
        x = &e.child(1);
      } else if (e.child(1).is_constant()) {
        c = &e.child(1);
        x = &e.child(0);
      } else {
        return std::nullopt;
      }
      auto l = as_linear(*x);
      if (!l) return std::nullopt;
      return Linear{c->value() * l->slope, c->value() * l->offset};
    }
    case Kind::Divide: {
      if (!e.child(1).is_constant()) return std::nullopt;
      auto l = as_linear(e.child(0));
      if (!l) return std::nullopt;
      const double c = e.child(1).value();
      return Linear{l->slope / c, l->offset / c};
    }
    default: return std::nullopt;
  }
}

// c * t^n
struct Monomial {
  double coefficient = 1.0;
  int degree = 0;
};

std::optional<Monomial> as_monomial(const RateExpr& e) {
  switch (e.kind()) {
    case Kind::Constant: return Monomial{e.value(), 0};
    case Kind::Time: return Monomial{1.0, 1};
    case Kind::Negate: {
      auto m = as_monomial(e.child(0));
      if (!m) return std::nullopt;
      return Monomial{-m->coefficient, m->degree};
    }
    case Kind::Multiply: {
      auto l = as_monomial(e.child(0));
      auto r = as_monomial(e.child(1));
      if (!l || !r) return std::nullopt;
      return Monomial{l->coefficient * r->coefficient, l->degree + r->degree};
    }
    case Kind::Divide: {
      if (!e.child(1).is_constant()) return std::nullopt;
      auto m = as_monomial(e.child(0));
      if (!m) return std::nullopt;
      return Monomial{m->coefficient / e.child(1).value(), m->degree};
    }
    case Kind::Power: {
      auto m = as_monomial(e.child(0));
      if (!m) return std::nullopt;
      return Monomial{std::pow(m->coefficient, e.exponent()), m->degree * e.exponent()};
    }
    default: return std::nullopt;
  }
}

enum class Shape { Polynomial, Sin, Cos, SinSquared, CosSquared, Exp };

struct Term {
  Shape shape = Shape::Polynomial;
  double coefficient = 0.0;
  int degree = 0;    // Polynomial
  Linear argument;   // trigonometric / exponential
};

bool collect(const RateExpr& e, double scale, std::vector<Term>& out) {
  switch (e.kind()) {
    case Kind::Add: return collect(e.child(0), scale, out) && collect(e.child(1), scale, out);
    case Kind::Subtract: return collect(e.child(0), scale, out) && collect(e.child(1), -scale, out);
    case Kind::Negate: return collect(e.child(0), -scale, out);
    case Kind::Multiply:
      if (e.child(0).is_constant()) return collect(e.child(1), scale * e.child(0).value(), out);
      if (e.child(1).is_constant()) return collect(e.child(0), scale * e.child(1).value(), out);
      break;
    case Kind::Divide:
      if (e.child(1).is_constant()) return collect(e.child(0), scale / e.child(1).value(), out);
      return false;
    case Kind::Sin:
    case Kind::Cos:
    case Kind::Exp: {
      auto arg = as_linear(e.child(0));
      if (!arg) return false;
      const Shape s = e.kind() == Kind::Sin ? Shape::Sin : e.kind() == Kind::Cos ? Shape::Cos : Shape::Exp;
      out.push_back(Term{s, scale, 0, *arg});
      return true;
    }
    case Kind::Power: {
      const RateExpr& b = e.child(0);
      const int n = e.exponent();
      if (n == 2 && (b.kind() == Kind::Sin || b.kind() == Kind::Cos)) {
        auto arg = as_linear(b.child(0));
        if (!arg) return false;
        out.push_back(Term{b.kind() == Kind::Sin ? Shape::SinSquared : Shape::CosSquared, scale, 0, *arg});
        return true;
      }
      if (b.kind() == Kind::Exp) {
        auto arg = as_linear(b.child(0));
        if (!arg) return false;
        out.push_back(Term{Shape::Exp, scale, 0, Linear{n * arg->slope, n * arg->offset}});
        return true;
      }
      break;
    }
    default: break;
  }
  auto m = as_monomial(e);
  if (!m) return false;
  out.push_back(Term{Shape::Polynomial, scale * m->coefficient, m->degree, {}});
  return true;
}

RateExpr linear_expr(const Linear& l) {
  return RateExpr::constant(l.slope) * RateExpr::time() + RateExpr::constant(l.offset);
}

// Each primitive is written as g(a*t+b) - g(b) so it vanishes exactly at t = 0.
RateExpr primitive(const Term& term) {
  const RateExpr t = RateExpr::time();
  const RateExpr c = RateExpr::constant(term.coefficient);
  const double a = term.argument.slope;
  const double b = term.argument.offset;
  const RateExpr arg = linear_expr(term.argument);
  const RateExpr double_arg = linear_expr(Linear{2.0 * a, 2.0 * b});
  switch (term.shape) {
    case Shape::Polynomial:
      return c * pow(t, term.degree + 1) / RateExpr::constant(term.degree + 1);
    case Shape::Sin:
      return c * (RateExpr::constant(std::cos(b)) - cos(arg)) / RateExpr::constant(a);
    case Shape::Cos:
      return c * (sin(arg) - RateExpr::constant(std::sin(b))) / RateExpr::constant(a);
    case Shape::SinSquared:
    case Shape::CosSquared: {
      RateExpr osc = (sin(double_arg) - RateExpr::constant(std::sin(2.0 * b))) /
                     RateExpr::constant(4.0 * a);
      RateExpr half = t / RateExpr::constant(2.0);
      return c * (term.shape == Shape::SinSquared ? half - osc : half + osc);
    }
    case Shape::Exp:
      return c * (exp(arg) - RateExpr::constant(std::exp(b))) / RateExpr::constant(a);
  }
  return RateExpr::constant(0.0);
}

bool needs_frequency(Shape s) { return s != Shape::Polynomial; }

// Adaptive Simpson on [a, b] with the classic |S2 - S1| <= 15 eps test. The
// tolerance never drops below a few ulps of the local integral, so large
// integrands terminate instead of chasing an unreachable absolute target.
double simpson_recursive(const RateExpr& f, double a, double b, double fa, double fm, double fb,
                         double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(left) + std::abs(right));
  if (depth <= 0 || std::abs(delta) <= 15.0 * std::max(eps, floor)) return left + right + delta / 15.0;
  return simpson_recursive(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         simpson_recursive(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

double adaptive_simpson(const RateExpr& f, double a, double b, double eps) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_recursive(f, a, b, fa, fm, fb, whole, eps, 40);
}

}  // namespace

// Cumulative integrals at knots k*kSpacing, grown on demand. Values between
// knots integrate from the nearest knot below, so results do not depend on
// the order of queries.
class Antiderivative::QuadratureCache {
 public:
  static constexpr double kSpacing = 0.25;
  static constexpr double kSegmentTolerance = 1e-11 * kSpacing;

  explicit QuadratureCache(RateExpr f) : f_(std::move(f)) { knots_.push_back(0.0); }

  double value(double t) const {
    if (t == 0.0) return 0.0;
    if (t < 0.0) return -adaptive_simpson(f_, t, 0.0, kSegmentTolerance * (1.0 - t / kSpacing));
    const auto k = static_cast<std::size_t>(std::floor(t / kSpacing));
    const double base = knot(k);
    const double start = static_cast<double>(k) * kSpacing;
    return base + adaptive_simpson(f_, start, t, kSegmentTolerance);
  }

 private:
  double knot(std::size_t k) const {
    std::lock_guard<std::mutex> lock(mutex_);
    while (knots_.size() <= k) {
      const std::size_t j = knots_.size();
      const double a = static_cast<double>(j - 1) * kSpacing;
      const double b = static_cast<double>(j) * kSpacing;
      knots_.push_back(knots_.back() + adaptive_simpson(f_, a, b, kSegmentTolerance));
    }
    return knots_[k];
  }

  RateExpr f_;
  mutable std::mutex mutex_;
  mutable std::vector<double> knots_;
};

Antiderivative::Antiderivative(RateExpr integrand, std::optional<RateExpr> closed,
                               std::shared_ptr<QuadratureCache> cache)
    : integrand_(std::move(integrand)), closed_(std::move(closed)), cache_(std::move(cache)) {}

Antiderivative Antiderivative::closed_form(RateExpr integrand, RateExpr primitive) {
  return Antiderivative(std::move(integrand), std::move(primitive), nullptr);
}

Antiderivative Antiderivative::quadrature(RateExpr integrand) {
  auto cache = std::make_shared<QuadratureCache>(integrand);
  return Antiderivative(std::move(integrand), std::nullopt, std::move(cache));
}

double Antiderivative::operator()(double t) const {
  if (!std::isfinite(t)) throw NonFinite("antiderivative evaluated at non-finite time");
  if (closed_) return (*closed_)(t);
  return cache_->value(t);
}

std::optional<RateExpr> closed_form_antiderivative(const RateExpr& f) {
  std::vector<Term> terms;
  if (!collect(f, 1.0, terms)) return std::nullopt;
  RateExpr sum = RateExpr::constant(0.0);
  for (const Term& term : terms) {
    if (term.coefficient == 0.0) continue;
    if (needs_frequency(term.shape) && std::abs(term.argument.slope) < kMinFrequency) {
      return std::nullopt;
    }
    sum = sum + primitive(term);
  }
  return sum;
}

Antiderivative antiderivative(const RateExpr& f) {
  if (auto closed = closed_form_antiderivative(f)) {
    return Antiderivative::closed_form(f, std::move(*closed));
  }
  return Antiderivative::quadrature(f);
}

}  // namespace lindblad_pc
