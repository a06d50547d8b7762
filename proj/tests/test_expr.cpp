// Copyright 2026 The torodyn authors
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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "oracles.hpp"
#include "torodyn/expr.hpp"
#include "torodyn/rng.hpp"

using torodyn::Expr;
using torodyn::ParseError;
using torodyn::EvalError;

TEST_CASE("parse basic shapes") {
  Expr e = Expr::parse("x + 0.25");
  CHECK(e.eval(0.5, 0.0) == 0.75);
  CHECK(e.str() == "x + 0.25");

  Expr skew = Expr::parse("y + 0.05*sin(2*pi*x)");
  CHECK(skew.eval(0.25, 1.0) == Catch::Approx(1.05).epsilon(1e-14));
  CHECK(skew.depends_on_x());
  CHECK(skew.depends_on_y());
}

TEST_CASE("syntax error carries byte offset") {
  try {
    Expr::parse("x + * y");
    FAIL("expected ParseError");
  } catch (const ParseError& pe) {
    CHECK(pe.offset() == 4);
  }
  try {
    Expr::parse("x + foo(y)");
    FAIL("expected ParseError");
  } catch (const ParseError& pe) {
    CHECK(pe.offset() == 4);
  }
}

TEST_CASE("eval matches closed forms") {
  CHECK(Expr::parse("2*pi*x").eval(0.5, 0.0) ==
        Catch::Approx(std::numbers::pi).margin(1e-15));
  CHECK(std::abs(Expr::parse("sin(pi)").eval(0, 0)) < 1e-15);
  CHECK(Expr::parse("x^3").eval(2, 0) == 8.0);
  CHECK(Expr::parse("2^-2").eval(0, 0) == 0.25);
  CHECK(Expr::parse("-x^2").eval(3, 0) == -9.0);  // ^ binds tighter than unary -
  CHECK(Expr::parse("-x*y").eval(3, 2) == -6.0);
}

TEST_CASE("division by zero reports the operator offset") {
  Expr e = Expr::parse("1/(x - x)");
  try {
    e.eval(2.0, 0.0);
    FAIL("expected EvalError");
  } catch (const EvalError& ee) {
    CHECK(ee.offset() == 1);
  }
}

namespace {

// Random expression source text of bounded depth. Denominators are kept away
// from zero so the oracle comparison is well-conditioned.
std::string random_expr(torodyn::Rng& rng, int depth) {
  if (depth == 0) {
    switch (rng.uniform_int(0, 3)) {
      case 0: return "x";
      case 1: return "y";
      case 2: return "pi";
      default: return torodyn::format_double(rng.range(0.0, 2.0));
    }
  }
  switch (rng.uniform_int(0, 6)) {
    case 0: return "(" + random_expr(rng, depth - 1) + " + " +
                   random_expr(rng, depth - 1) + ")";
    case 1: return "(" + random_expr(rng, depth - 1) + " - " +
                   random_expr(rng, depth - 1) + ")";
    case 2: return "(" + random_expr(rng, depth - 1) + "*" +
                   random_expr(rng, depth - 1) + ")";
    case 3: return "(" + random_expr(rng, depth - 1) + "/(1.5 + " +
                   torodyn::format_double(rng.range(0.0, 1.0)) + "))";
    case 4: return "sin(" + random_expr(rng, depth - 1) + ")";
    case 5: return "cos(" + random_expr(rng, depth - 1) + ")";
    default: return "(" + random_expr(rng, depth - 1) + ")^" +
                    std::to_string(rng.uniform_int(0, 4));
  }
}

}  // namespace

TEST_CASE("eval agrees with the independent one-pass evaluator") {
  torodyn::Rng rng(424242);
  for (int i = 0; i < 1000; ++i) {
    std::string src = random_expr(rng, static_cast<int>(rng.uniform_int(1, 6)));
    double x = rng.range(-2.0, 2.0), y = rng.range(-2.0, 2.0);
    double got = Expr::parse(src).eval(x, y);
    double want = oracle::Eval::run(src, x, y);
    CHECK(std::abs(got - want) <=
          1e-12 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("print-then-parse is an AST fixed point") {
  torodyn::Rng rng(777);
  for (int i = 0; i < 500; ++i) {
    std::string src = random_expr(rng, static_cast<int>(rng.uniform_int(1, 5)));
    Expr e1 = Expr::parse(src);
    Expr e2 = Expr::parse(e1.str());
    CHECK(e1.identical(e2));
    CHECK(e1.str() == e2.str());
  }
}

TEST_CASE("swap exchanges the variables") {
  Expr e = Expr::parse("x + 0.5*sin(2*pi*y)");
  Expr s = e.swapped_xy();
  CHECK(s.eval(1.0, 2.0) == e.eval(2.0, 1.0));
}
