#include "doctest.h"
#include "support/models.hpp"

using namespace motint;
using testing::chain_model;
using testing::Gen;
using Index = SimplicialFamily::Index;

namespace {

// One object with two points and no transitions beyond the identity.
SimplicialFamily two_points() {
  FatModelSpec spec;
  spec.objects = {"A"};
  auto m = FatModel::build(spec);
  return SimplicialFamily::constant(Sieve::build(m, {{"p1", "p2"}}, {}));
}

PermFn on_two(const SimplicialFamily& base, long a, long b) {
  return PermFn::make(base, {{Index{}, {{Integer(a), Integer(b)}}}});
}

// A -i-> B embedding with B = {y}, A = {x}; i*(y) = x.
SimplicialFamily embedding_pair() {
  FatModelSpec spec;
  spec.objects = {"A", "B"};
  spec.arrows = {{"i", "A", "B", true}};
  auto m = FatModel::build(spec);
  return SimplicialFamily::constant(Sieve::build(m, {{"x"}, {"y"}}, {{"i", {{"y", "x"}}}}));
}

// Pointwise oracle independent of the library's value tables.
Integer value(const PermFn& f, int obj, const std::string& x) { return f.at({}, obj, x); }

} // namespace

TEST_CASE("pointwise arithmetic examples") {
  auto base = two_points();
  PermFn f = on_two(base, 0, 1), g = on_two(base, 1, 1);
  PermFn s = fn_add(f, g);
  CHECK(value(s, 0, "p1") == 1);
  CHECK(value(s, 0, "p2") == 2);
  SimplicialFamily gs = graph(s);
  CHECK(gs.level({2}).points(0) == std::vector<std::string>{"p2"});
  CHECK(fn_add(PermFn::constant(base, 2), PermFn::constant(base, 3)) == PermFn::constant(base, 5));
  CHECK(fn_add(f, PermFn::constant(base, 0)) == f);

  PermFn p = fn_mul(on_two(base, 2, 3), on_two(base, 1, 2));
  CHECK(value(p, 0, "p1") == 2);
  CHECK(value(p, 0, "p2") == 6);
  CHECK(fn_mul(PermFn::constant(base, 1), f) == f);
  CHECK(fn_mul(PermFn::constant(base, 0), f) == PermFn::constant(base, 0));
}

TEST_CASE("graphs") {
  auto base = two_points();
  SimplicialFamily g2 = graph(PermFn::constant(base, 2));
  CHECK(g2.level({2}) == base.level({}));
  CHECK(g2.level({0}).is_empty());
  CHECK(g2.level({1}).is_empty());
  CHECK(g2.level({7}).is_empty());

  FatModelSpec spec;
  spec.objects = {"A"};
  auto m = FatModel::build(spec);
  auto empty = SimplicialFamily::constant(Sieve(m));
  SimplicialFamily g0 = graph(PermFn::constant(empty, 0));
  for (long n = 0; n < 4; ++n) CHECK(g0.level({n}).is_empty());

  SimplicialFamily g = graph(on_two(base, 0, 1));
  CHECK(g.level({0}).points(0) == std::vector<std::string>{"p1"});
  CHECK(g.level({1}).points(0) == std::vector<std::string>{"p2"});
  CHECK(from_graph(base, g) == on_two(base, 0, 1));
}

TEST_CASE("permissibility") {
  auto pair = embedding_pair();
  CHECK_FALSE(is_permissible(PermFn::constant(pair, 4)));
  PermFn bad(pair, {{Index{}, {{Integer(1)}, {Integer(2)}}}});
  auto w = is_permissible(bad);
  REQUIRE(w);
  CHECK(w->message.rfind("compatibility fails along i", 0) == 0);
  CHECK_THROWS_AS(PermFn::make(pair, bad.values()), Error);
  CHECK_FALSE(is_permissible(on_two(two_points(), 3, 9)));
}

TEST_CASE("grothendieck pairs") {
  auto base = two_points();
  PermFn f = on_two(base, 2, 5), g = on_two(base, 1, 0), k = on_two(base, 4, 4), zero = PermFn::constant(base, 0);
  CHECK(groth_eq({f, f}, {zero, zero}));
  CHECK(groth_eq({fn_add(f, k), fn_add(g, k)}, {f, g}));
  CHECK(groth_eq({PermFn::constant(base, 2), PermFn::constant(base, 1)}, {PermFn::constant(base, 3), PermFn::constant(base, 2)}));
  CHECK_FALSE(groth_eq({f, g}, {g, f}));
  GrothElem a{f, g}, b{k, f};
  GrothElem prod = groth_mul(a, b);
  for (const char* x : {"p1", "p2"}) CHECK(prod.at({}, 0, x) == a.at({}, 0, x) * b.at({}, 0, x));
  CHECK(groth_add(a, b).at({}, 0, "p2") == 5 + 4 - 5);
}

TEST_CASE("restriction and gluing") {
  auto m = chain_model(3);
  // Two roots a and b with one branch each.
  Sieve s = Sieve::build(m, {{"a", "b"}, {"a0", "b0"}, {"a00", "b00"}},
                         {{"e01", {{"a0", "a"}, {"b0", "b"}}}, {"e12", {{"a00", "a0"}, {"b00", "b0"}}}, {"e02", {{"a00", "a"}, {"b00", "b"}}}});
  auto base = SimplicialFamily::constant(s);
  OpenSet ua{"Ua", {{"a"}, {"a0"}, {"a00"}}}, ub{"Ub", {{"a", "b"}, {"a0", "b0"}, {"b00"}}};
  CHECK_FALSE(ua.check(base));
  OpenSet broken{"bad", {{}, {"a0"}, {}}};
  CHECK(broken.check(base));

  PermFn f = PermFn::make(base, {{Index{}, {{Integer(1), Integer(2)}, {Integer(1), Integer(2)}, {Integer(1), Integer(2)}}}});
  CHECK(restrict(f, OpenSet::whole(base)) == f);
  CHECK(glue(base, {ua, ub}, {restrict(f, ua), restrict(f, ub)}) == f);

  PermFn c = PermFn::constant(base, 3);
  CHECK(glue(base, {ua, ub}, {restrict(c, ua), restrict(c, ub)}) == c);

  PermFn other = PermFn::constant(base, 1);
  try {
    glue(base, {ua, ub}, {restrict(f, ua), restrict(PermFn::constant(base, 2), ub)});
    FAIL("expected a gluing failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Gluing);
    CHECK(std::string(e.what()).find("point a of t0") != std::string::npos);
  }
  OpenSet small{"Ub0", {{"b"}, {"b0"}, {"b00"}}};
  CHECK_THROWS_AS(glue(base, {small}, {restrict(other, small)}), Error);
}

TEST_CASE("semiring laws, partition and sum graph on random functions") {
  auto m = chain_model(3);
  Gen g(21);
  for (int trial = 0; trial < 30; ++trial) {
    auto base = SimplicialFamily::constant(testing::random_tree_sieve(g, m));
    PermFn a = testing::random_tree_fn(g, base), b = testing::random_tree_fn(g, base), c = testing::random_tree_fn(g, base);
    PermFn zero = PermFn::constant(base, 0), one = PermFn::constant(base, 1);
    CHECK(fn_add(a, fn_add(b, c)) == fn_add(fn_add(a, b), c));
    CHECK(fn_mul(a, fn_mul(b, c)) == fn_mul(fn_mul(a, b), c));
    CHECK(fn_add(a, b) == fn_add(b, a));
    CHECK(fn_mul(a, b) == fn_mul(b, a));
    CHECK(fn_mul(a, fn_add(b, c)) == fn_add(fn_mul(a, b), fn_mul(a, c)));
    CHECK(fn_add(a, zero) == a);
    CHECK(fn_mul(a, one) == a);
    CHECK(fn_mul(a, zero) == zero);
    CHECK_FALSE(is_permissible(fn_add(a, b)));
    CHECK_FALSE(is_permissible(fn_mul(a, b)));
    CHECK_FALSE(check_partition(base, graph(a)));
    CHECK_FALSE(graph(a).check_functor());
    CHECK(same_levels(graph_sum(graph(a), graph(b)), graph(fn_add(a, b))));
  }
}

TEST_CASE("arc action on functions") {
  auto m = chain_model(3);
  Gen g(22);
  for (int trial = 0; trial < 30; ++trial) {
    auto base = SimplicialFamily::constant(testing::random_tree_sieve(g, m));
    PermFn a = testing::random_tree_fn(g, base), b = testing::random_tree_fn(g, base);
    CHECK(arc_fn(0, a) == a);
    for (int mm = 0; mm < 3; ++mm) {
      PermFn fa = arc_fn(mm, a);
      CHECK_FALSE(is_permissible(fa));
      CHECK(fa == from_graph(base.arc(mm), graph(a).arc(mm)));
      CHECK(arc_fn(mm, fn_add(a, b)) == fn_add(fa, arc_fn(mm, b)));
      CHECK(arc_fn(mm, fn_mul(a, b)) == fn_mul(fa, arc_fn(mm, b)));
      CHECK(arc_fn(mm, PermFn::constant(base, 5)) == PermFn::constant(base.arc(mm), 5));
    }
  }
}

TEST_CASE("colimits along a chain") {
  auto m = chain_model(3);
  Gen g(23);
  Sieve s = testing::random_tree_sieve(g, m, 3);
  LimitChain c{SimplicialFamily::constant(s), {0, 1, 2}};
  PermFn g0 = testing::random_tree_fn(g, c.level(0));
  auto x = colimit_inject(c, 0, g0);
  CHECK(colimit_eq(c, x, x));
  CHECK(colimit_eq(c, x, colimit_push(c, x)));
  auto top = c.level(2);
  auto p = colimit_inject(c, 2, PermFn::constant(top, 1)), q = colimit_inject(c, 2, PermFn::constant(top, 2));
  CHECK(colimit_eq(c, p, q) == top.level({}).is_empty());
  CHECK(colimit_eq(c, colimit_inject(c, 0, PermFn::constant(c.level(0), 1)), p));
}
