#include "doctest.h"
#include "support/gen.hpp"

#include "motint/presburger.hpp"

#include <functional>

using namespace motint;

namespace {

Affine aff(std::vector<long> a, long b) {
  Affine f(a.size(), Rational(b));
  for (std::size_t k = 0; k < a.size(); ++k) f.a[k] = a[k];
  return f;
}

SumTerm term(long coef, std::vector<long> slope, long shift) {
  return {QMotElem(Rational(coef)), MultiPoly(slope.size(), 1), aff(std::move(slope), shift)};
}

// Random region inside the box [0, hi]^n with a few extra cuts.
Region random_region(testing::Gen& g, std::size_t n, long hi) {
  Region r = Region::natural(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<long> a(n, 0);
    a[k] = -1;
    r.ineqs.push_back(aff(a, hi));
  }
  long cuts = g.range(0, 2);
  for (long c = 0; c < cuts; ++c) {
    std::vector<long> a;
    for (std::size_t k = 0; k < n; ++k) a.push_back(g.range(-3, 3));
    r.ineqs.push_back(aff(a, g.range(-2, 6)));
  }
  if (g.coin()) {
    std::vector<long> a;
    for (std::size_t k = 0; k < n; ++k) a.push_back(g.range(0, 3));
    r.congs.push_back({aff(a, g.range(0, 3)), Integer(g.range(2, 4))});
  }
  return r;
}

void for_box(std::size_t n, long hi, const std::function<void(const std::vector<long>&)>& f) {
  std::vector<long> x(n, 0);
  while (true) {
    f(x);
    std::size_t k = 0;
    while (k < n) {
      if (++x[k] <= hi) break;
      x[k] = 0;
      ++k;
    }
    if (k == n) return;
  }
}

Rational brute(const SumCell& c, long hi, const Rational& q, std::size_t outer = 0, const std::vector<long>& fixed = {}) {
  Rational s = 0;
  std::size_t n = c.region.nvars;
  for_box(n - outer, hi, [&](const std::vector<long>& inner) {
    std::vector<long> x = fixed;
    x.insert(x.end(), inner.begin(), inner.end());
    if (!c.region.contains(x)) return;
    for (const auto& t : c.terms)
      s += t.coef.eval(EvalPoint(q)) * t.weight.eval(x) * rational_pow(q, t.exponent.eval(x).get_num().get_si());
  });
  return s;
}

Rational closed_at(const ClosedForm& f, const std::vector<long>& x, const Rational& q) {
  Rational s = 0;
  for (const auto& c : f.cells) {
    if (!c.region.contains(x)) continue;
    for (const auto& t : c.terms) {
      Rational e = t.exponent.eval(x);
      REQUIRE(e.get_den() == 1);
      s += t.coef.eval(EvalPoint(q)) * t.weight.eval(x) * rational_pow(q, e.get_num().get_si());
    }
  }
  return s;
}

} // namespace

TEST_CASE("geometric series examples") {
  SumCell c{Region::natural(1), {term(1, {-1}, -1)}};
  QMotElem v = closed_value(sum_over_trailing({c}, 0));
  CHECK(eq(to_integral(v.canonical()), MotElem::inv_l_pow_minus_one(1)));

  Region even = Region::natural(1);
  even.congs.push_back({aff({1}, 0), Integer(2)});
  SumCell e{even, {term(1, {-2}, -4)}};
  QMotElem w = closed_value(sum_over_trailing({e}, 0));
  CHECK(eq(to_integral(w.canonical()), MotElem::inv_l_pow_minus_one(4)));

  Region empty = Region::natural(1);
  empty.ineqs.push_back(aff({-1}, -1));
  CHECK(closed_value(sum_over_trailing({{empty, {term(1, {-1}, 0)}}}, 0)).is_zero());
  CHECK(empty.is_empty());
}

TEST_CASE("stacked congruences on an unbounded sum") {
  // i = 0 mod m1 and i = r mod m2; the second substitution can flip sign
  for (long m1 : {2L, 3L, 4L})
    for (long m2 : {2L, 3L, 5L})
      for (long r = 0; r < m2; ++r) {
        Region reg = Region::natural(1);
        reg.congs.push_back({aff({1}, 0), Integer(m1)});
        reg.congs.push_back({aff({1}, -r), Integer(m2)});
        SumCell c{reg, {term(1, {-1}, 0)}};
        Rational got = closed_value(sum_over_trailing({c}, 0)).eval(EvalPoint(Rational(2)));
        Rational want = 0;
        for (long i = 0; i < 400; ++i)
          if (i % m1 == 0 && i % m2 == r) want += rational_pow(Rational(2), -i);
        CHECK(abs(Rational(got - want)) < rational_pow(Rational(2), -390));
      }
}

TEST_CASE("finite sums match enumeration") {
  testing::Gen g(41);
  for (int t = 0; t < 150; ++t) {
    std::size_t n = static_cast<std::size_t>(g.range(1, 3));
    long hi = n == 3 ? 4 : 6;
    SumCell c;
    c.region = random_region(g, n, hi);
    long nt = g.range(1, 2);
    for (long k = 0; k < nt; ++k) {
      std::vector<long> slope;
      for (std::size_t v = 0; v < n; ++v) slope.push_back(g.range(-2, 2));
      SumTerm st = term(g.range(-3, 3), slope, g.range(-2, 2));
      if (g.coin()) {
        std::size_t v = static_cast<std::size_t>(g.range(0, static_cast<long>(n) - 1));
        st.weight = MultiPoly::from_affine(Affine::var(n, v)) + MultiPoly(n, Rational(g.range(0, 2)));
        if (g.coin()) st.weight = st.weight * st.weight;
      }
      c.terms.push_back(st);
    }
    QMotElem v = closed_value(sum_over_trailing({c}, 0));
    for (long qn : {2L, 5L}) CHECK(v.eval(EvalPoint(Rational(qn))) == brute(c, hi, Rational(qn)));
    Rational q(7, 3);
    CHECK(v.eval(EvalPoint(q)) == brute(c, hi, q));
  }
}

TEST_CASE("partial summation keeps the outer variables exact") {
  testing::Gen g(42);
  for (int t = 0; t < 80; ++t) {
    std::size_t n = static_cast<std::size_t>(g.range(2, 3));
    long hi = 5;
    SumCell c;
    c.region = random_region(g, n, hi);
    std::vector<long> slope;
    for (std::size_t v = 0; v < n; ++v) slope.push_back(g.range(-2, 2));
    c.terms.push_back(term(g.range(1, 3), slope, 0));
    ClosedForm f = sum_over_trailing({c}, 1);
    for (long x0 = 0; x0 <= hi; ++x0) {
      Rational q(3);
      CHECK(closed_at(f, {x0}, q) == brute(c, hi, q, 1, {x0}));
    }
  }
}

TEST_CASE("infinite sums converge to the closed form") {
  testing::Gen g(43);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = static_cast<std::size_t>(g.range(1, 2));
    Region r = Region::natural(n);
    if (g.coin()) {
      std::vector<long> a;
      for (std::size_t k = 0; k < n; ++k) a.push_back(g.range(-1, 2));
      r.ineqs.push_back(aff(a, g.range(0, 4)));
    }
    if (g.coin()) r.congs.push_back({aff(std::vector<long>(n, 1), g.range(0, 2)), Integer(g.range(2, 3))});
    std::vector<long> slope;
    for (std::size_t k = 0; k < n; ++k) slope.push_back(-g.range(1, 3));
    SumCell c{r, {term(g.range(1, 4), slope, g.range(-2, 2))}};
    QMotElem v = closed_value(sum_over_trailing({c}, 0));
    Rational q(2);
    Rational partial = brute(c, 40, q);
    Rational diff = v.eval(EvalPoint(q)) - partial;
    CHECK(diff >= 0);
    CHECK(diff < Rational(1, 1000000));
  }
}

TEST_CASE("divergent infinite sums are rejected") {
  SumCell c{Region::natural(1), {term(1, {0}, 0)}};
  CHECK_THROWS_AS(sum_over_trailing({c}, 0), Error);
}

TEST_CASE("exact emptiness matches enumeration") {
  testing::Gen g(44);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = static_cast<std::size_t>(g.range(1, 3));
    long hi = 5;
    Region r = random_region(g, n, hi);
    bool any = false;
    for_box(n, hi, [&](const std::vector<long>& x) { any = any || r.contains(x); });
    CHECK(r.is_empty() == !any);
  }
}

TEST_CASE("recession rays and vertices") {
  Region r = Region::natural(2);
  r.ineqs.push_back(aff({1, -1}, 0)); // i >= j
  auto rays = recession_rays(r, {0, 1});
  REQUIRE(rays.size() == 2);
  std::vector<std::string> names{"i", "j"};
  CHECK(direction_name(rays[0], names) == "i");
  CHECK(direction_name(rays[1], names) == "i+j");
  auto vs = vertices(r);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0] == std::vector<Rational>{0, 0});

  Region box = Region::natural(1);
  box.ineqs.push_back(aff({-1}, 3));
  CHECK(recession_rays(box, {0}).empty());
  CHECK(vertices(box).size() == 2);
}
