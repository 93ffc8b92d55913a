#include "doctest.h"
#include "support/gen.hpp"

#include "motint/real_roots.hpp"

#include <set>

using namespace motint;

namespace {

IntPoly P(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.emplace_back(x);
  return IntPoly(std::move(v));
}

} // namespace

TEST_CASE("polynomial rendering and arithmetic") {
  CHECK(P({1, -3, 1}).to_string() == "L^2 - 3*L + 1");
  CHECK(P({0, 0, -2}).to_string("x") == "-2*x^2");
  CHECK(IntPoly().to_string() == "0");
  CHECK((P({-1, 1}) * P({1, 1})) == P({-1, 0, 1}));
  CHECK(P({1, 1}).pow(3) == P({1, 3, 3, 1}));
  CHECK(P({5, 3, 2}).derivative() == P({3, 4}));
}

TEST_CASE("cyclotomic polynomials multiply to x^n - 1") {
  for (unsigned n = 1; n <= 30; ++n) {
    IntPoly prod(Integer(1));
    for (unsigned d = 1; d <= n; ++d)
      if (n % d == 0) prod *= cyclotomic(d);
    CHECK(prod == x_pow_minus_one(n));
  }
  CHECK(cyclotomic(6) == P({1, -1, 1}));
}

TEST_CASE("exact division and gcd") {
  testing::Gen g(11);
  for (int t = 0; t < 100; ++t) {
    IntPoly a = g.poly(4, 5), b = g.poly(3, 5);
    if (b.is_zero()) continue;
    IntPoly monic = b.shifted(1) + IntPoly::monomial(Integer(1), static_cast<std::size_t>(b.degree() + 2));
    IntPoly q;
    REQUIRE(divide_exact_monic(a * monic, monic, q));
    CHECK(q == a);
    auto [quo, rem] = divmod(to_rational(a), to_rational(b));
    CHECK(quo * to_rational(b) + rem == to_rational(a));
    CHECK(rem.degree() < b.degree());
  }
  RatPoly gc = gcd(to_rational(P({-1, 0, 1})), to_rational(P({-1, 1}) * P({2, 1})));
  CHECK(gc == to_rational(P({-1, 1})));
}

TEST_CASE("square-free decomposition reassembles the input") {
  testing::Gen g(12);
  for (int t = 0; t < 60; ++t) {
    IntPoly a = g.poly(2, 4), b = g.poly(2, 4);
    if (a.degree() < 1 || b.degree() < 1) continue;
    IntPoly p = a * b.pow(2);
    auto parts = squarefree_decomposition(p);
    IntPoly prod(Integer(1));
    for (std::size_t k = 0; k < parts.size(); ++k) prod *= parts[k].pow(static_cast<unsigned>(k + 1));
    // Equal up to a constant factor.
    auto [q, r] = divmod(to_rational(p), to_rational(prod));
    CHECK(r.is_zero());
    CHECK(q.degree() == 0);
  }
}

TEST_CASE("root isolation agrees with sign sampling on a fine grid") {
  testing::Gen g(13);
  for (int t = 0; t < 80; ++t) {
    IntPoly p(Integer(1));
    long n = g.range(1, 4);
    for (long k = 0; k < n; ++k) p *= P({-g.range(-3, 12), 1});
    IntPoly s = squarefree_part(p);
    auto roots = isolate_roots_above_one(s);
    // Oracle: distinct integer roots above one, known by construction.
    std::set<long> expected;
    for (long r = 2; r <= 12; ++r)
      if (p.eval(Rational(r)) == 0) expected.insert(r);
    REQUIRE(roots.size() == expected.size());
    auto it = expected.begin();
    for (const auto& iv : roots) {
      CHECK(iv.lo < *it);
      CHECK(iv.hi > *it);
      ++it;
    }
  }
}
