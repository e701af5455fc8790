#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tensorlift/parser.hpp"
#include "tensorlift/verify.hpp"

using namespace tensorlift;

namespace {
Expr x(int index, int level = 0) { return Expr::variable(index, level); }
}  // namespace

TEST_CASE("grammar basics") {
  Expr e = parse_expression("x1@0^2 + i*x2@1");
  Expr want = Expr::power(x(1), 2) + Expr::imaginary() * x(2, 1);
  CHECK(e == want);

  CHECK(parse_expression("x1") == x(1, 0));      // @0 omissible
  CHECK(parse_expression("x12@3") == x(12, 3));
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_expression("2*x1 + (");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.column == 9);
  }

  CHECK_THROWS_AS(parse_expression("x1 +"), ParseError);
  CHECK_THROWS_AS(parse_expression("(x1"), ParseError);
  CHECK_THROWS_AS(parse_expression("x1 x2"), ParseError);
  CHECK_THROWS_AS(parse_expression("2."), ParseError);
}

TEST_CASE("unknown identifiers") {
  try {
    parse_expression("2*y1");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("unknown variable or function") != std::string::npos);
    CHECK(e.column == 3);
  }
  CHECK_THROWS_AS(parse_expression("tan(x1)"), ParseError);
  CHECK_THROWS_AS(parse_expression("x0"), ParseError);  // indices are 1-based
}

TEST_CASE("precedence: unary minus binds below the power operator") {
  Expr e = parse_expression("-x1^2");
  CHECK(e == -Expr::power(x(1), 2));
  CHECK(e != Expr::power(-x(1), 2));

  // and multiplication binds below powers
  CHECK(parse_expression("2*x1^3") == Expr::integer(2) * Expr::power(x(1), 3));
}

TEST_CASE("power is right-associative with integer exponents") {
  CHECK(parse_expression("2^3^2") == Expr::integer(512));
  CHECK(parse_expression("x1^-1") == Expr::power(x(1), -1));
  CHECK_THROWS_AS(parse_expression("x1^x2"), ParseError);
  CHECK_THROWS_AS(parse_expression("x1^(1/2)"), ParseError);
}

TEST_CASE("decimal constants are exact rationals") {
  CHECK(parse_expression("0.5") == Expr::rational(1, 2));
  CHECK(parse_expression("2.25") == Expr::rational(9, 4));
  CHECK(parse_expression("0.1") == Expr::rational(1, 10));
  // 0.1 is not the double 0.1
  CHECK(is_identically_zero(parse_expression("10*0.1 - 1")));
}

TEST_CASE("imaginary unit and functions") {
  CHECK(parse_expression("i*i") == Expr::integer(-1));
  CHECK(parse_expression("sin(x1)") == Expr::call(Primitive::Sin, x(1)));
  CHECK(parse_expression("exp(-x1)") == Expr::call(Primitive::Exp, -x(1)));
  CHECK_THROWS_AS(parse_expression("sin x1"), ParseError);
}

TEST_CASE("division and quotient nodes") {
  CHECK(parse_expression("1/2") == Expr::rational(1, 2));
  Expr q = parse_expression("x1/x2");
  CHECK(q.kind() == Expr::Kind::Quotient);
  CHECK_THROWS_AS(parse_expression("x1/0"), ParseError);
  // a/b*c groups as (a/b)*c
  Expr e = parse_expression("x1/x2*x3");
  CHECK(e == Expr::quotient(x(1), x(2)) * x(3));
}

TEST_CASE("printing and parsing are mutually inverse on random expressions") {
  SplitMix64 rng(43);
  for (int i = 0; i < 40; ++i) {
    Expr e = random_polynomial(rng, 3, 3, 5);
    Expr back = parse_expression(e.str());
    CHECK(back == e);
  }
  // with quotients, powers, functions and complex constants
  for (const char* s : {"x1/(x2+1)", "sin(x1)*cos(x2@1)^2", "(1+2*i)*x1 - 1/2*i",
                        "exp(-x1)^3/(x1^2+1)", "-x1^2 + x2@2"}) {
    Expr e = parse_expression(s);
    CHECK(parse_expression(e.str()) == e);
  }
}
