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
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "lindblad_pc/errors.hpp"
#include "lindblad_pc/expr.hpp"

namespace lindblad_pc {
namespace {

constexpr double kPi = 3.14159265358979323846;

TEST(ParseRateExpr, SubstitutesParameters) {
  const RateExpr f = parse_rate_expr("sin(w*t)^2", {{"w", 1.0}});
  EXPECT_EQ(f, pow(sin(RateExpr::time()), 2));
  const RateExpr g = parse_rate_expr("exp(-w*t)", {{"w", 2.0}});
  EXPECT_NEAR(g(0.7), std::exp(-1.4), 1e-15);
  EXPECT_EQ(g.to_string(), parse_rate_expr(g.to_string()).to_string());
}

TEST(ParseRateExpr, UnboundParameterNamesTheSymbol) {
  try {
    parse_rate_expr("sin(q*t)^2", {});
    FAIL() << "expected UnboundParameter";
  } catch (const UnboundParameter& e) {
    EXPECT_NE(std::string(e.what()).find("q"), std::string::npos);
  }
}

TEST(ParseRateExpr, PrecedenceAndAssociativity) {
  EXPECT_DOUBLE_EQ(parse_rate_expr("1+2*3")(0), 7.0);
  EXPECT_DOUBLE_EQ(parse_rate_expr("8/4/2")(0), 1.0);
  EXPECT_DOUBLE_EQ(parse_rate_expr("10-3-2")(0), 5.0);
  EXPECT_DOUBLE_EQ(parse_rate_expr("2*t^3")(2.0), 16.0);
  EXPECT_DOUBLE_EQ(parse_rate_expr("(1+t)^2")(1.0), 4.0);
  EXPECT_DOUBLE_EQ(parse_rate_expr("  1.5e1 *\tt ")(2.0), 30.0);
}

TEST(ParseRateExpr, UnaryMinusBindsToTheBase) {
  // The power applies to the signed base, so -t^2 is (-t)^2.
  EXPECT_DOUBLE_EQ(parse_rate_expr("-t^2")(3.0), 9.0);
  EXPECT_DOUBLE_EQ(parse_rate_expr("-(t^2)")(3.0), -9.0);
  EXPECT_DOUBLE_EQ(parse_rate_expr("--t")(3.0), 3.0);
  EXPECT_DOUBLE_EQ(parse_rate_expr("2*-t")(3.0), -6.0);
}

TEST(ParseRateExpr, SyntaxErrorsReportPosition) {
  try {
    parse_rate_expr("sin(t");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
  EXPECT_THROW(parse_rate_expr(""), SyntaxError);
  EXPECT_THROW(parse_rate_expr("t^"), SyntaxError);
  EXPECT_THROW(parse_rate_expr("t^1.5"), SyntaxError);
  EXPECT_THROW(parse_rate_expr("t t"), SyntaxError);
  EXPECT_THROW(parse_rate_expr("sin t"), SyntaxError);
  EXPECT_THROW(parse_rate_expr("3 $ 4"), SyntaxError);
  EXPECT_THROW(parse_rate_expr("t^100000"), SyntaxError);
}

TEST(EvalExpr, Examples) {
  EXPECT_NEAR(eval_expr(parse_rate_expr("sin(t)^2"), kPi / 2.0), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(eval_expr(parse_rate_expr("cos(t)^2"), 0.0), 1.0);
  EXPECT_DOUBLE_EQ(eval_expr(parse_rate_expr("exp(-t)"), 0.0), 1.0);
}

TEST(EvalExpr, NonFiniteIsAnError) {
  EXPECT_THROW(eval_expr(parse_rate_expr("1/t"), 0.0), NonFinite);
  EXPECT_THROW(eval_expr(parse_rate_expr("exp(t)"), 1000.0), NonFinite);
  EXPECT_THROW(eval_expr(parse_rate_expr("t/t"), 0.0), NonFinite);
  EXPECT_NO_THROW(eval_expr(parse_rate_expr("1/t"), 1e-3));
}

TEST(RateExpr, ConstantFoldingGivesCanonicalForms) {
  const RateExpr t = RateExpr::time();
  EXPECT_EQ(t * RateExpr::constant(1.0), t);
  EXPECT_EQ(RateExpr::constant(0.0) + t, t);
  EXPECT_EQ(-(-t), t);
  EXPECT_EQ(pow(t, 1), t);
  EXPECT_TRUE(parse_rate_expr("2*3+1").is_constant());
  EXPECT_DOUBLE_EQ(parse_rate_expr("2*3+1").value(), 7.0);
  EXPECT_FALSE(parse_rate_expr("2*3+1").depends_on_time());
  EXPECT_TRUE(parse_rate_expr("t*0+t").depends_on_time());
}

// Random trees over a small grammar, used for round-trip and derivative checks.
RateExpr random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 8);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  switch (pick(rng)) {
    case 0: return RateExpr::constant(coef(rng));
    case 1: return RateExpr::time();
    case 2: return random_expr(rng, depth - 1) + random_expr(rng, depth - 1);
    case 3: return random_expr(rng, depth - 1) - random_expr(rng, depth - 1);
    case 4: return random_expr(rng, depth - 1) * random_expr(rng, depth - 1);
    case 5: return sin(random_expr(rng, depth - 1));
    case 6: return cos(random_expr(rng, depth - 1));
    case 7: return pow(random_expr(rng, depth - 1), 2);
    default: return -random_expr(rng, depth - 1);
  }
}

TEST(RateExpr, ToStringRoundTripsExactly) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int k = 0; k < 300; ++k) {
    const RateExpr f = random_expr(rng, 4);
    const RateExpr g = parse_rate_expr(f.to_string());
    EXPECT_EQ(f, g) << f.to_string();
    const double t = u(rng);
    EXPECT_EQ(f(t), g(t)) << f.to_string();
  }
}

TEST(Antiderivative, TableEntries) {
  const double w = 1.7;
  const ParamMap p{{"w", w}};
  const auto sin2 = antiderivative(parse_rate_expr("sin(w*t)^2", p));
  ASSERT_TRUE(sin2.is_closed_form());
  const auto c = antiderivative(parse_rate_expr("3.5", p));
  ASSERT_TRUE(c.is_closed_form());
  const auto e = antiderivative(parse_rate_expr("exp(-w*t)", p));
  ASSERT_TRUE(e.is_closed_form());
  for (double t : {0.0, 0.3, 1.0, 2.5, 7.0, 19.0}) {
    EXPECT_NEAR(sin2(t), t / 2.0 - std::sin(2.0 * w * t) / (4.0 * w), 1e-13);
    EXPECT_NEAR(c(t), 3.5 * t, 1e-13);
    EXPECT_NEAR(e(t), (1.0 - std::exp(-w * t)) / w, 1e-13);
  }
  EXPECT_EQ(sin2(0.0), 0.0);
  EXPECT_EQ(e(0.0), 0.0);
}

TEST(Antiderivative, ClosedFormDifferentiatesBack) {
  const char* cases[] = {"exp(-2*t)",         "sin(3*t+1)^2",     "cos(0.5*t)^2", "2*t^3 - t + 4",
                         "sin(t) + cos(2*t)", "exp(0.3*t+0.1)^2", "-(t^2)",       "sin(3*t)^2 + exp(-t)"};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (const char* text : cases) {
    const RateExpr f = parse_rate_expr(text);
    const auto F = antiderivative(f);
    ASSERT_TRUE(F.is_closed_form()) << text;
    for (int k = 0; k < 100; ++k) {
      const double t = u(rng);
      const double h = 1e-5;
      const double d = (F(t + h) - F(t - h)) / (2.0 * h);
      EXPECT_NEAR(d, f(t), 1e-6 * std::max(1.0, std::abs(f(t)))) << text << " at " << t;
    }
  }
}

TEST(Antiderivative, ExponentialDerivativeAtRandomPoints) {
  // F(t) = (1 - e^{-wt})/w; F'(t) computed symbolically must match f.
  const double w = 0.9;
  const auto F = antiderivative(parse_rate_expr("exp(-w*t)", {{"w", w}}));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int k = 0; k < 100; ++k) {
    const double t = u(rng);
    // Richardson-extrapolated central difference to reach ~1e-12.
    const double h = 1e-3;
    const double d1 = (F(t + h) - F(t - h)) / (2.0 * h);
    const double d2 = (F(t + h / 2) - F(t - h / 2)) / h;
    const double d = (4.0 * d2 - d1) / 3.0;
    EXPECT_NEAR(d, std::exp(-w * t), 1e-10);
  }
}

TEST(Antiderivative, SmallFrequencyFallsBackToQuadrature) {
  const auto F = antiderivative(parse_rate_expr("sin(w*t)^2", {{"w", 1e-8}}));
  EXPECT_FALSE(F.is_closed_form());
  EXPECT_NEAR(F(3.0), 1e-16 * 9.0, 1e-20);
}

TEST(Antiderivative, QuadratureMatchesClosedForm) {
  const char* cases[] = {"sin(t)^2", "cos(3*t)^2", "exp(-t)", "1 + t^2", "sin(0.5*t+2)"};
  for (const char* text : cases) {
    const RateExpr f = parse_rate_expr(text);
    const auto closed = antiderivative(f);
    const auto quad = Antiderivative::quadrature(f);
    ASSERT_TRUE(closed.is_closed_form());
    for (double t = 0.0; t <= 20.0; t += 0.37) {
      EXPECT_NEAR(quad(t), closed(t), 1e-9 * std::max(1.0, std::abs(closed(t)))) << text << " at " << t;
    }
  }
}

TEST(Antiderivative, QuadratureForFunctionsOutsideTheTable) {
  // int_0^t exp(-s^2) ds = sqrt(pi)/2 erf(t)
  const auto F = antiderivative(parse_rate_expr("exp(-(t^2))"));
  EXPECT_FALSE(F.is_closed_form());
  for (double t : {0.1, 0.5, 1.0, 2.0, 4.0, 12.0}) {
    EXPECT_NEAR(F(t), std::sqrt(kPi) / 2.0 * std::erf(t), 1e-10);
  }
  EXPECT_NEAR(F(-1.0), -std::sqrt(kPi) / 2.0 * std::erf(1.0), 1e-10);
}

TEST(Antiderivative, QuadratureIsIndependentOfQueryOrder) {
  const RateExpr f = parse_rate_expr("t*exp(-t)*sin(t)^2");
  const auto a = Antiderivative::quadrature(f);
  const auto b = Antiderivative::quadrature(f);
  const double late = a(17.3);
  for (double t = 0.0; t < 17.0; t += 0.5) b(t);
  EXPECT_EQ(b(17.3), late);
}

TEST(Antiderivative, FiniteDifferenceMatchesIntegrandForRandomRates) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.05, 10.0);
  const char* cases[] = {"sin(2*t)^2", "exp(-0.5*t)", "t*sin(t)", "1/(1+t^2)", "cos(t)^2*exp(-t)"};
  for (const char* text : cases) {
    const RateExpr f = parse_rate_expr(text);
    const auto F = antiderivative(f);
    for (int k = 0; k < 200; ++k) {
      const double t = u(rng);
      const double h = 1e-4;
      EXPECT_NEAR((F(t + h) - F(t - h)) / (2.0 * h), f(t), 1e-5) << text << " at " << t;
    }
  }
}

}  // namespace
}  // namespace lindblad_pc
