#include "doctest.h"

#include "motint/expr.hpp"

using namespace motint;

TEST_CASE("parse tree shape") {
  CHECK(parse_expr("L^2 - 1")->to_sexpr() == "sub(pow(L,2),1)");
  CHECK(parse_expr("-L*inv1m(3)^-2")->to_sexpr() == "mul(neg(L),pow(inv1m(3),-2))");
  CHECK(parse_expr("2*(i + j)", {"i", "j"})->to_sexpr() == "mul(2,add(i,j))");
}

TEST_CASE("syntax errors carry the column") {
  try {
    parse_expr("L^^2");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse_expr("L +"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("(L"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("x"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("L # 2"), SyntaxError);
}

TEST_CASE("inv1m argument validation") {
  try {
    parse_expr("inv1m(0)");
    FAIL("expected a value error");
  } catch (const SyntaxError&) {
    FAIL("wrong error kind");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Value);
  }
  CHECK_THROWS_AS(parse_expr("inv1m(-2)"), Error);
}

TEST_CASE("ring evaluation") {
  CHECK(eq(parse_mot_elem("inv1m(1)"), parse_mot_elem("L*(L-1)^-1")));
  CHECK(parse_mot_elem("L^-2").eval(EvalPoint(Rational(3))) == Rational(1, 9));
  CHECK(parse_mot_elem("(L^2-1)*(L-1)^-1").to_string() == "L + 1");
  CHECK(parse_serialized("L + 1 | 2 | [(1,1),(3,2)]").eval(EvalPoint(Rational(2))) == Rational(3, 4 * 49));
}

TEST_CASE("affine and polynomial views") {
  std::vector<std::string> vars{"i", "j"};
  AffineExpr a = to_affine(*parse_expr("-2*i + 3*(j - 1) + 4", {"i", "j"}), vars);
  CHECK(a.coeffs[0] == -2);
  CHECK(a.coeffs[1] == 3);
  CHECK(a.constant == 1);
  CHECK_THROWS_AS(to_affine(*parse_expr("i*j", {"i", "j"}), vars), Error);
  IntPoly p = to_int_poly(*parse_expr("(i+1)^2 - 1", {"i"}), "i");
  CHECK(p.to_string("i") == "i^2 + 2*i");
}
