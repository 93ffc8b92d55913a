#include "doctest.h"
#include "support/gen.hpp"

#include "motint/expr.hpp"

using namespace motint;

namespace {

// Independent decision procedure: the numerator is >= 0 on (1, inf) iff its
// leading coefficient is positive and no root of odd multiplicity lies above 1.
bool nonneg_oracle(const IntPoly& p) {
  if (p.is_zero()) return true;
  if (p.lead() < 0) return false;
  auto parts = squarefree_decomposition(p);
  for (std::size_t k = 0; k < parts.size(); k += 2) {
    const IntPoly& s = parts[k];
    if (s.degree() <= 0) continue;
    if (!isolate_roots_above_one(squarefree_part(s)).empty()) return false;
  }
  return true;
}

Rational nu(const MotElem& a, const Rational& q) { return a.eval(EvalPoint(q)); }

} // namespace

TEST_CASE("worked examples") {
  MotElem inv = MotElem::inv_l_pow_minus_one(1);
  MotElem s = inv + MotElem(1);
  CHECK(eq(s, parse_mot_elem("L*(L-1)^-1")));
  CHECK(nu(s, 2) == 2);
  CHECK(nu(MotElem::inv_l_pow_minus_one(3), Rational(3, 2)) == Rational(8, 19));
  CHECK(eq(MotElem::inv1m(1), parse_mot_elem("L*(L-1)^-1")));
  CHECK(s.to_string() == "L/(L - 1)");
  CHECK(MotElem::inv_l_pow_minus_one(4).to_string() == "1/(L^4 - 1)");

  auto p = is_nonneg(parse_mot_elem("L-2"));
  CHECK_FALSE(p.nonneg);
  REQUIRE(p.witness);
  CHECK(*p.witness > 1);
  CHECK(*p.witness < 2);
  CHECK(is_nonneg(parse_mot_elem("(L-2)^2")).nonneg);
  CHECK(is_nonneg(parse_mot_elem("L-1")).nonneg);
  CHECK(is_nonneg(parse_mot_elem("L^-3")).nonneg);
  CHECK(leq(MotElem(1), MotElem::inv1m(1)));
}

TEST_CASE("evaluation point validation") {
  CHECK_THROWS_AS(EvalPoint(Rational(1)), Error);
  CHECK_THROWS_AS(EvalPoint(Rational(1, 2)), Error);
}

TEST_CASE("evaluation is a ring homomorphism") {
  testing::Gen g(21);
  for (int t = 0; t < 200; ++t) {
    MotElem a = g.elem(), b = g.elem();
    Rational q = g.q_point(50);
    CHECK(nu(a + b, q) == nu(a, q) + nu(b, q));
    CHECK(nu(a - b, q) == nu(a, q) - nu(b, q));
    CHECK(nu(a * b, q) == nu(a, q) * nu(b, q));
  }
}

TEST_CASE("canonical form is equal, unique and stable") {
  testing::Gen g(22);
  for (int t = 0; t < 200; ++t) {
    MotElem a = g.elem();
    MotElem extra = MotElem(x_pow_minus_one(static_cast<unsigned>(g.range(1, 4))), 0, {});
    MotElem b = (a * extra) * MotElem::inv_l_pow_minus_one(static_cast<unsigned>(extra.numerator().degree()));
    MotElem ca = a.canonical(), cb = b.canonical();
    CHECK(eq(ca, a));
    CHECK(ca.serialize() == cb.serialize());
    CHECK(ca.canonical().serialize() == ca.serialize());
    CHECK(eq(parse_serialized(ca.serialize()), a));
    CHECK(eq(parse_mot_elem(a.to_expr()), a));
  }
}

TEST_CASE("units invert") {
  testing::Gen g(23);
  for (int t = 0; t < 100; ++t) {
    MotElem u = MotElem::l_pow(g.range(-3, 3));
    long n = g.range(0, 3);
    for (long k = 0; k < n; ++k) u *= MotElem::from_poly(cyclotomic(static_cast<unsigned>(g.range(1, 8))));
    u *= MotElem(g.elem().denominator(), 0, {}) * MotElem(IntPoly(Integer(1)), 0, {});
    MotElem d = g.elem();
    u = u * MotElem(IntPoly(Integer(1)), d.l_power(), d.factors());
    if (g.coin()) u = -u;
    CHECK(eq(u * u.inverse(), MotElem(1)));
  }
  CHECK_THROWS_AS(parse_mot_elem("(L-2)^-1"), Error);
  CHECK_THROWS_AS(parse_mot_elem("0^-1"), Error);
}

TEST_CASE("sign decision matches the multiplicity oracle") {
  testing::Gen g(24);
  int negatives = 0;
  for (int t = 0; t < 300; ++t) {
    MotElem a = g.signed_elem();
    auto r = is_nonneg(a);
    CHECK(r.nonneg == nonneg_oracle(a.numerator()));
    if (!r.nonneg) {
      ++negatives;
      REQUIRE(r.witness);
      CHECK(*r.witness > 1);
      CHECK(nu(a, *r.witness) < 0);
    }
  }
  CHECK(negatives > 30);
}
