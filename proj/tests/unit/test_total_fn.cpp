#include "doctest.h"
#include "motint/expr.hpp"
#include "motint/total_fn.hpp"
#include "support/models.hpp"

using namespace motint;
using testing::Gen;
using Index = SimplicialFamily::Index;

namespace {

Sieve one_point(const ModelPtr& m) { return Sieve::build(m, {{"x"}}, {}); }

// Point x present at every level of an n-index family.
SimplicialFamily flat_family(std::size_t n) {
  auto m = testing::point_model();
  std::map<Index, Sieve> lv{{Index(n, 0), one_point(m)}};
  return SimplicialFamily(m, Index(n, 0), std::vector<TailKind>(n, TailKind::Constant), lv);
}

const PointRef X{0, "x"};

Affine form(std::vector<long> a, long b) {
  Affine f(a.size(), Rational(b));
  for (std::size_t c = 0; c < a.size(); ++c) f.a[c] = a[c];
  return f;
}

MotElem inv_l_minus_one(unsigned i) { return MotElem::inv_l_pow_minus_one(i); }

} // namespace

TEST_CASE("values and positivity") {
  auto fam = flat_family(1);
  TotalFn f = total_scale(TotalFn::exponential(fam, Region::natural(1), form({-1}, 0)), MotElem(2));
  CHECK(f.eval(X, {3}, EvalPoint(2)) == Rational(1, 4));
  CHECK(eq(f.at(X, {3}), MotElem(2) * MotElem::l_pow(-3)));
  auto pos = is_total_positive(f);
  CHECK(pos.nonneg);
  CHECK(pos.certified);
  auto neg = is_total_positive(TotalFn::constant(fam, parse_mot_elem("L-2")));
  CHECK_FALSE(neg.nonneg);
  CHECK(neg.detail.find("negative") != std::string::npos);
  CHECK(is_total_positive(TotalFn::constant(fam, parse_mot_elem("L-1"))).nonneg);

  TotalFn alpha = TotalFn::exponential(fam, Region::natural(1), form({-1}, -1));
  TotalFn t = tau_total(alpha, {2});
  CHECK(t.dim() == 0);
  CHECK(eq(t.at(X, {}), MotElem::l_pow(-3)));
}

TEST_CASE("summability verdicts") {
  auto fam = flat_family(1);
  auto one = TotalFn::constant(fam, MotElem(1));
  auto c = is_summable(one, 1);
  CHECK_FALSE(c.summable);
  CHECK(c.reason == "unbounded direction i with exponent coefficient 0");
  try {
    integrate(one, 1);
    FAIL("expected divergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSummable);
  }
  auto grow = TotalFn(fam, {{std::nullopt, Region::natural(1), {{QMotElem(Rational(1)), MultiPoly::from_affine(form({1}, 0)), form({-1}, 0), std::nullopt}}}});
  CHECK(is_summable(grow, 1).reason == "factor unbounded along direction i");
  CHECK(is_summable(TotalFn::exponential(fam, Region::natural(1), form({-1}, 0)), 1).summable);
}

TEST_CASE("geometric integrals") {
  auto fam = flat_family(1);
  auto a = integrate(TotalFn::exponential(fam, Region::natural(1), form({-1}, -1)), 1).value;
  CHECK(eq(a.at(X, {}), inv_l_minus_one(1)));

  Region even = Region::natural(1);
  even.congs.push_back({Affine::var(1, 0), Integer(2)});
  auto b = integrate(TotalFn::exponential(fam, even, form({-2}, -4)), 1).value;
  CHECK(eq(b.at(X, {}), inv_l_minus_one(4)));

  Region none = Region::natural(1);
  none.ineqs.push_back(form({-1}, -1));
  CHECK(integrate(TotalFn::exponential(fam, none, form({-1}, 0)), 1).value.at(X, {}).is_zero());

  auto fam2 = flat_family(2);
  auto c = integrate(TotalFn::exponential(fam2, Region::natural(2), form({-1, -1}, -2)), 2).value;
  CHECK(eq(c.at(X, {}), inv_l_minus_one(1) * inv_l_minus_one(1)));
  auto inner = integrate(TotalFn::exponential(fam2, Region::natural(2), form({-1, -1}, -2)), 1).value;
  CHECK(inner.dim() == 1);
  CHECK(eq(inner.at(X, {3}), MotElem::l_pow(-5) * MotElem::inv1m(1)));
}

TEST_CASE("truncation bound holds against the closed form") {
  auto fam2 = flat_family(2);
  Region tri = Region::natural(2);
  tri.ineqs.push_back(form({1, -1}, 0)); // j <= i
  TotalFn f(fam2, {{std::nullopt, tri, {{QMotElem(Rational(3)), MultiPoly(2, 5), form({-2, 1}, 0), std::nullopt}}}});
  Rational exact = integrate(f, 2).value.eval(X, {}, EvalPoint(2));
  for (long T : {5L, 20L, 60L}) {
    Rational gap = abs(Rational(exact - partial_sum(f, 2, X, {}, EvalPoint(2), T)));
    CHECK(gap <= truncation_bound(f, 2, X, {}, EvalPoint(2), T));
  }
  CHECK(truncation_bound(f, 2, X, {}, EvalPoint(3), 80) < Rational(1, 1000000));
}

TEST_CASE("weak integration of a quadratic exponent") {
  auto fam = flat_family(1);
  TabularExponent tab{0, {Integer(1), Integer(0)}, IntPoly(std::vector<Integer>{Integer(0), Integer(0), Integer(-1)})};
  TotalFn f(fam, {{std::nullopt, Region::natural(1), {{QMotElem(Rational(2)), MultiPoly(1, 1), Affine(1), tab}}}});
  CHECK_FALSE(f.is_presburger());
  CHECK_THROWS_AS(integrate(f, 1), Error);
  for (long prec : {3L, 10L}) {
    auto w = weak_integrate(f, 1, prec);
    REQUIRE(w.values.size() == 1);
    for (long q : {2L, 3L}) {
      Rational oracle = partial_sum(f, 1, X, {}, EvalPoint(q), 40);
      Rational err = abs(Rational(oracle - w.values[0].series.eval(q)));
      CHECK(err <= w.values[0].bound(q));
    }
  }
  // Affine tails unfold into ordinary pieces.
  TabularExponent lin{0, {Integer(5)}, IntPoly(std::vector<Integer>{Integer(0), Integer(-1)})};
  TotalFn g(fam, {{std::nullopt, Region::natural(1), {{QMotElem(Rational(1)), MultiPoly(1, 1), Affine(1), lin}}}});
  CHECK(g.is_presburger());
  CHECK(eq(integrate(g, 1).value.at(X, {}), MotElem::l_pow(5) + MotElem::l_pow(-1) * MotElem::inv1m(1)));
}

TEST_CASE("groth factors and arc action") {
  auto m = testing::chain_model(3);
  Gen g(31);
  for (int trial = 0; trial < 10; ++trial) {
    auto base = SimplicialFamily::constant(testing::random_tree_sieve(g, m));
    PermFn a = testing::random_tree_fn(g, base), b = testing::random_tree_fn(g, base);
    TotalFn fa = TotalFn::from_groth({a, PermFn::constant(base, 0)});
    TotalFn fb = TotalFn::from_groth({b, PermFn::constant(base, 0)});
    CHECK(total_equal(total_add(fa, fb), TotalFn::from_groth({fn_add(a, b), PermFn::constant(base, 0)})));
    CHECK(total_equal(total_mul(fa, fb), TotalFn::from_groth({fn_mul(a, b), PermFn::constant(base, 0)})));
    for (int mm = 0; mm < 3; ++mm) {
      CHECK(total_equal(arc_total(mm, fa), TotalFn::from_groth({arc_fn(mm, a), PermFn::constant(base.arc(mm), 0)})));
      CHECK(total_equal(arc_total(mm, total_mul(fa, fb)), total_mul(arc_total(mm, fa), arc_total(mm, fb))));
    }
    TotalFn e = TotalFn::exponential(a);
    for (const auto& p : e.all_points()) CHECK(eq(e.at(p, {}), MotElem::l_pow(a.at({}, p.obj, p.point).get_si())));
  }
}

TEST_CASE("exponent partitions") {
  Region even = Region::natural(1), odd = Region::natural(1);
  even.congs.push_back({Affine::var(1, 0), Integer(2)});
  odd.congs.push_back({form({1}, -1), Integer(2)});
  CHECK_FALSE(check_exponent_partition({even, odd}, 1));
  auto gap = check_exponent_partition({even}, 1);
  REQUIRE(gap);
  CHECK(gap->message.find("(1)") != std::string::npos);
  auto overlap = check_exponent_partition({Region::natural(1), odd}, 1);
  REQUIRE(overlap);
  CHECK(overlap->message.find("overlap") != std::string::npos);
  Region low = Region::natural(2), high = Region::natural(2);
  low.ineqs.push_back(form({-1, 1}, -1)); // j > i
  high.ineqs.push_back(form({1, -1}, 0));
  CHECK_FALSE(check_exponent_partition({low, high}, 2));
}
