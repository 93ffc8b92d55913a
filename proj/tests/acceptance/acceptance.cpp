// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any fails.

#include "motint/expr.hpp"
#include "motint/model_file.hpp"
#include "motint/total_fn.hpp"
#include "support/models.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

using namespace motint;
using testing::Gen;
using Index = SimplicialFamily::Index;

namespace {

struct Tally {
  long checks = 0;
  long failures = 0;
  std::string first;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0) first = what;
  }
};

struct Criterion {
  int id;
  std::string title;
  std::function<std::string(Tally&)> run; // returns a summary of what was exercised
};

std::string str(const Rational& r) { return motint::to_string(r); }

const PointRef X{0, "x"};

// Shared per dimension; total functions combine only over the same model.
const SimplicialFamily& flat_family(std::size_t n) {
  static auto m = testing::point_model();
  static std::map<std::size_t, SimplicialFamily> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::map<Index, Sieve> lv{{Index(n, 0), Sieve::build(m, {{"x"}}, {})}};
    it = cache.emplace(n, SimplicialFamily(m, Index(n, 0), std::vector<TailKind>(n, TailKind::Constant), lv)).first;
  }
  return it->second;
}

Affine form(const std::vector<long>& a, long b) {
  Affine f(a.size(), Rational(b));
  for (std::size_t c = 0; c < a.size(); ++c) f.a[c] = a[c];
  return f;
}

// Random summable piecewise input on the flat family, described independently
// of the library so the oracle can enumerate it directly.
struct PieceSpec {
  long lo = 0, hi = -1;      // range of i; hi < 0 means unbounded
  long mod = 1, rem = 0;     // i mod `mod` == rem
  bool triangle = false;     // j <= i
  std::vector<long> a;
  long b = 0;
  Rational coef;
  long weight = 1;
  long weight_slope = 0;     // weight + slope * i, only on bounded pieces

  bool contains(const Index& t) const {
    long i = t[0];
    if (i < lo || (hi >= 0 && i > hi)) return false;
    if (((i - rem) % mod + mod) % mod != 0) return false;
    return !(triangle && t[1] > i);
  }

  Region region(std::size_t n) const {
    Region r = Region::natural(n);
    Affine i = Affine::var(n, 0);
    if (lo > 0) r.ineqs.push_back(i + Affine(n, Rational(-lo)));
    if (hi >= 0) r.ineqs.push_back(i * Rational(-1) + Affine(n, Rational(hi)));
    if (mod > 1) r.congs.push_back({i + Affine(n, Rational(-rem)), Integer(mod)});
    if (triangle) r.ineqs.push_back(form({1, -1}, 0));
    return r;
  }
};

struct InputSpec {
  std::size_t n = 1;
  std::vector<PieceSpec> pieces;

  TotalFn build() const {
    std::vector<TotalPiece> out;
    for (const auto& p : pieces) {
      MultiPoly w(n, Rational(p.weight));
      if (p.weight_slope) w = w + MultiPoly::from_affine(Affine::var(n, 0, Rational(p.weight_slope)));
      out.push_back({std::nullopt, p.region(n), {{QMotElem(p.coef), w, form(p.a, p.b), std::nullopt}}});
    }
    return TotalFn(flat_family(n), out);
  }

  // Sum over [0, T)^n at q, by enumeration.
  Rational partial(const Rational& q, long T) const {
    std::map<long, Rational> pw;
    auto power = [&](long e) -> const Rational& {
      auto it = pw.find(e);
      if (it == pw.end()) it = pw.emplace(e, rational_pow(q, e)).first;
      return it->second;
    };
    Rational s = 0;
    Index t(n, 0);
    std::function<void(std::size_t)> walk = [&](std::size_t c) {
      if (c == n) {
        for (const auto& p : pieces) {
          if (!p.contains(t)) continue;
          long e = p.b;
          for (std::size_t k = 0; k < n; ++k) e += p.a[k] * t[k];
          s += p.coef * Rational(p.weight + p.weight_slope * t[0]) * power(e);
        }
        return;
      }
      for (long v = 0; v < T; ++v) {
        t[c] = v;
        walk(c + 1);
      }
    };
    walk(0);
    return s;
  }
};

PieceSpec random_piece(Gen& g, std::size_t n, bool allow_triangle) {
  PieceSpec p;
  p.coef = Rational(g.range(-9, 9));
  if (p.coef == 0) p.coef = 1;
  p.weight = g.range(1, 5);
  p.b = g.range(-3, 3);
  if (g.range(0, 2) == 0) {
    p.mod = g.range(2, 3);
    p.rem = g.range(0, p.mod - 1);
  }
  p.a.push_back(g.range(-3, -1));
  if (n == 2) {
    p.triangle = allow_triangle && g.coin();
    if (p.triangle) {
      long aj = g.range(-2, 2);
      while (p.a[0] + aj >= 0) --aj;
      p.a.push_back(aj);
    } else {
      p.a.push_back(g.range(-3, -1));
    }
  }
  return p;
}

// One piece, or a split at i = c into a bounded head and an unbounded tail.
InputSpec random_input(Gen& g, std::size_t n) {
  InputSpec s;
  s.n = n;
  if (g.coin()) {
    s.pieces.push_back(random_piece(g, n, true));
  } else {
    long c = g.range(1, 4);
    PieceSpec head = random_piece(g, n, false), tail = random_piece(g, n, true);
    head.hi = c - 1;
    if (n == 1) {
      // bounded in every direction, so any exponent and a growing weight are allowed
      head.a[0] = g.range(-2, 2);
      head.weight_slope = g.range(0, 3);
    }
    tail.lo = c;
    s.pieces = {head, tail};
  }
  return s;
}

// ---------------------------------------------------------------------------

std::string ring_order(Tally& t) {
  Gen g(101);
  long pos = 0, neg = 0;
  for (int k = 0; k < 500; ++k) {
    MotElem a = k % 2 ? g.signed_elem() : g.elem();
    Positivity p = is_nonneg(a);
    if (p.nonneg) {
      ++pos;
      for (int s = 0; s < 50; ++s) {
        Rational q = g.q_point();
        t.check(a.eval(EvalPoint(q)) >= 0, a.to_string() + " negative at " + str(q));
      }
    } else {
      ++neg;
      bool ok = p.witness && *p.witness > 1 && *p.witness <= 1000 && a.eval(EvalPoint(*p.witness)) < 0;
      t.check(ok, a.to_string() + " has no negative witness in (1, 1000]");
    }
  }
  return std::to_string(pos) + " nonneg, " + std::to_string(neg) + " with witness";
}

std::string homomorphism(Tally& t) {
  Gen g(102);
  for (int k = 0; k < 200; ++k) {
    MotElem a = g.elem(), b = g.elem();
    MotElem s = a + b, p = a * b;
    for (int j = 0; j < 5; ++j) {
      EvalPoint q(g.q_point());
      Rational va = a.eval(q), vb = b.eval(q);
      t.check(s.eval(q) == va + vb, "sum at " + str(q.q()));
      t.check(p.eval(q) == va * vb, "product at " + str(q.q()));
    }
  }
  return "200 pairs x 5 points";
}

std::string expansion(Tally& t) {
  Gen g(103);
  Rational worst = 0;
  for (int k = 0; k < 100; ++k) {
    MotElem a = g.elem();
    Expansion e = expand(a, 20);
    for (long q : {2L, 3L}) {
      Rational err = abs(Rational(a.eval(EvalPoint(Rational(q))) - e.series.eval(Rational(q))));
      Rational bound = e.tail.at(Rational(q));
      t.check(err <= bound, a.to_string() + " at q = " + std::to_string(q));
      if (bound > 0) worst = std::max(worst, Rational(err / bound));
    }
  }
  std::ostringstream o;
  o << "100 elements, N = 20, max error/bound " << worst.get_d();
  return o.str();
}

std::string geometric(Tally& t) {
  auto fam = flat_family(1);
  auto a = integrate(TotalFn::exponential(fam, Region::natural(1), form({-1}, -1)), 1).value.at(X, {});
  t.check(eq(a, MotElem::inv_l_pow_minus_one(1)), "sum of L^(-i-1) is " + a.to_string());
  Region even = Region::natural(1);
  even.congs.push_back({Affine::var(1, 0), Integer(2)});
  auto b = integrate(TotalFn::exponential(fam, even, form({-2}, -4)), 1).value.at(X, {});
  t.check(eq(b, MotElem::inv_l_pow_minus_one(4)), "even sum of L^(-2i-4) is " + b.to_string());

  Gen g(104);
  EvalPoint q2(Rational(2));
  for (int k = 0; k < 50; ++k) {
    std::size_t n = k < 25 ? 1 : 2;
    long T = n == 1 ? 10000 : 100;
    InputSpec in = random_input(g, n);
    TotalFn f = in.build();
    auto cert = is_summable(f, n);
    t.check(cert.summable, "input " + std::to_string(k) + " not summable: " + cert.reason);
    if (!cert.summable) continue;
    Rational closed = integrate(f, n).value.eval(X, {}, q2);
    Rational gap = abs(Rational(closed - in.partial(Rational(2), T)));
    t.check(gap <= truncation_bound(f, n, X, {}, q2, T), "input " + std::to_string(k) + " exceeds the tail bound");
  }
  return "2 identities, 25 one-index inputs (1e4 terms), 25 two-index inputs (100^2 terms)";
}

std::string additivity(Tally& t) {
  Gen g(105);
  long pairs = 0, divergent = 0, integrals = 0, mul_probes = 0, mul_agree = 0;
  auto guarded = [&](const TotalFn& f, std::size_t k) -> std::optional<TotalFn> {
    auto cert = is_summable(f, k);
    try {
      auto r = integrate(f, k);
      ++integrals;
      t.check(cert.summable && r.certificate.summable, "integrate succeeded without a summability certificate");
      return r.value;
    } catch (const Error& e) {
      t.check(!cert.summable && e.kind() == ErrorKind::NotSummable, std::string("unexpected failure: ") + e.what());
      return std::nullopt;
    }
  };
  while (pairs < 100) {
    std::size_t n = g.coin() ? 1 : 2;
    std::size_t k = n == 2 && g.coin() ? 1 : n;
    TotalFn f = random_input(g, n).build(), h = random_input(g, n).build();
    auto If = guarded(f, k), Ih = guarded(h, k), Ifh = guarded(total_add(f, h), k);
    t.check(If && Ih && Ifh, "summable pair rejected");
    if (If && Ih && Ifh) t.check(total_equal(*Ifh, total_add(*If, *Ih)), "integral of a sum differs");
    // Multiplicativity over shared indices is only probed, never asserted.
    if (If && Ih && k == n) {
      auto prod = integrate(total_mul(f, h), k).value;
      ++mul_probes;
      mul_agree += eq(prod.at(X, {}), If->at(X, {}) * Ih->at(X, {}));
    }
    ++pairs;
    if (pairs % 4 == 0) {
      // a divergent partner: flat or growing along i
      InputSpec d = random_input(g, n);
      d.pieces.back().a[0] = g.range(0, 2);
      d.pieces.back().hi = -1;
      if (!guarded(d.build(), n)) ++divergent;
      if (!guarded(total_add(f, d.build()), n)) ++divergent;
    }
  }
  t.check(divergent == 50, "expected 50 divergent inputs, saw " + std::to_string(divergent));
  return std::to_string(pairs) + " pairs, " + std::to_string(integrals) + " integrals, " + std::to_string(divergent) + " divergent inputs rejected, product rule held on " +
         std::to_string(mul_agree) + " of " + std::to_string(mul_probes) + " probes (not asserted)";
}

std::vector<ModelFile> corpus() {
  std::vector<std::string> paths;
  for (const auto& e : std::filesystem::directory_iterator(MOTINT_MODEL_DIR))
    if (e.path().extension() == ".yaml") paths.push_back(e.path().string());
  std::sort(paths.begin(), paths.end());
  std::vector<ModelFile> out;
  for (const auto& p : paths) out.push_back(load_model_file(p));
  return out;
}

// Declared functions on a family plus small constants.
std::vector<PermFn> functions_on(const ModelFile& m, const std::string& family) {
  std::vector<PermFn> fs;
  for (const auto& [name, f] : m.functions)
    if (f.family == family) fs.push_back(f.fn);
  const SimplicialFamily& base = m.family(family);
  for (long c : {0L, 1L, 2L}) fs.push_back(PermFn::constant(base, c));
  return fs;
}

std::string sheaf_laws(Tally& t) {
  auto models = corpus();
  t.check(models.size() >= 10, "corpus has " + std::to_string(models.size()) + " models");
  long families = 0, rejected = 0, glued = 0;
  for (const auto& m : models) {
    std::string where = std::filesystem::path(m.path).filename().string();
    for (const auto& [fname, base] : m.families) {
      ++families;
      auto fs = functions_on(m, fname);
      PermFn zero = PermFn::constant(base, 0), one = PermFn::constant(base, 1);
      std::string at = where + " family " + fname;
      for (const auto& a : fs) {
        t.check(!is_permissible(a), at + ": function not permissible");
        t.check(!check_partition(base, graph(a)), at + ": graph is not a partition");
        t.check(fn_add(a, zero) == a && fn_mul(a, one) == a && fn_mul(a, zero) == zero, at + ": units");
        for (const auto& b : fs) {
          t.check(fn_add(a, b) == fn_add(b, a) && fn_mul(a, b) == fn_mul(b, a), at + ": commutativity");
          t.check(same_levels(graph_sum(graph(a), graph(b)), graph(fn_add(a, b))), at + ": graph of a sum");
          for (const auto& c : fs) {
            t.check(fn_add(a, fn_add(b, c)) == fn_add(fn_add(a, b), c), at + ": additive associativity");
            t.check(fn_mul(a, fn_mul(b, c)) == fn_mul(fn_mul(a, b), c), at + ": multiplicative associativity");
            t.check(fn_mul(a, fn_add(b, c)) == fn_add(fn_mul(a, b), fn_mul(a, c)), at + ": distributivity");
          }
        }
      }
      for (const auto& [uname, u] : m.opens) {
        if (u.family != fname) continue;
        std::string ua = at + " open " + uname;
        t.check(!u.open.check(base), ua + ": not a sub-sieve");
        for (const auto& a : fs) {
          PermFn ra = restrict(a, u.open);
          t.check(!is_permissible(ra), ua + ": restriction not permissible");
          t.check(restrict(a, OpenSet::whole(base)) == a, ua + ": restriction to the whole family");
          for (const auto& b : fs) {
            t.check(restrict(fn_add(a, b), u.open) == fn_add(ra, restrict(b, u.open)), ua + ": restriction of a sum");
            t.check(restrict(fn_mul(a, b), u.open) == fn_mul(ra, restrict(b, u.open)), ua + ": restriction of a product");
          }
        }
      }
    }
    for (const auto& gl : m.gluings) {
      std::string ga = where + " gluing " + gl.name;
      const SimplicialFamily& base = m.family(gl.family);
      std::vector<OpenSet> cover;
      std::vector<PermFn> parts;
      for (std::size_t k = 0; k < gl.cover.size(); ++k) {
        cover.push_back(m.open(gl.cover[k]).open);
        parts.push_back(restrict(m.function(gl.parts[k]).fn, cover.back()));
      }
      try {
        PermFn s = glue(base, cover, parts);
        ++glued;
        t.check(!gl.expect_failure, ga + ": glued although the parts disagree");
        for (std::size_t k = 0; k < cover.size(); ++k) t.check(restrict(s, cover[k]) == parts[k], ga + ": glued function misses a part");
        for (const auto& other : functions_on(m, gl.family)) {
          bool matches = true;
          for (std::size_t k = 0; k < cover.size(); ++k) matches = matches && restrict(other, cover[k]) == parts[k];
          if (matches) t.check(other == s, ga + ": second function with the same restrictions");
        }
      } catch (const Error& e) {
        ++rejected;
        bool witnessed = e.kind() == ErrorKind::Gluing && std::string(e.what()).find("point") != std::string::npos;
        t.check(gl.expect_failure && witnessed, ga + ": " + e.what());
      }
    }
  }
  t.check(rejected >= 1, "no gluing failure was exercised");
  return std::to_string(models.size()) + " models, " + std::to_string(families) + " families, " + std::to_string(glued) + " gluings, " +
         std::to_string(rejected) + " rejected with a witness";
}

std::string arc_action(Tally& t) {
  long models = 0, integrals = 0;
  auto check_fns = [&](const std::vector<PermFn>& fs, const SimplicialFamily& base, const std::string& at) {
    for (int m = 0; m < static_cast<int>(base.model()->object_count()); ++m) {
      for (const auto& a : fs) {
        PermFn fa = arc_fn(m, a);
        t.check(!is_permissible(fa), at + ": arc image not permissible");
        for (const auto& b : fs) {
          t.check(arc_fn(m, fn_add(a, b)) == fn_add(fa, arc_fn(m, b)), at + ": arc of a sum");
          t.check(arc_fn(m, fn_mul(a, b)) == fn_mul(fa, arc_fn(m, b)), at + ": arc of a product");
        }
      }
      for (long c : {0L, 1L, 3L}) t.check(arc_fn(m, PermFn::constant(base, c)) == PermFn::constant(base.arc(m), c), at + ": arc of a constant");
    }
  };
  for (const auto& m : corpus()) {
    if (!m.model->has_tensor()) continue;
    ++models;
    std::string where = std::filesystem::path(m.path).filename().string();
    for (const auto& [fname, base] : m.families) check_fns(functions_on(m, fname), base, where + " family " + fname);
    for (const auto& [tname, tot] : m.totals) {
      if (!tot.fn.is_presburger() || !is_summable(tot.fn, tot.sum).summable) continue;
      TotalFn direct = integrate(tot.fn, tot.sum).value;
      for (int o = 0; o < static_cast<int>(m.model->object_count()); ++o) {
        TotalFn lhs = integrate(arc_total(o, tot.fn), tot.sum).value;
        TotalFn rhs = arc_total(o, direct);
        ++integrals;
        t.check(total_equal(lhs, rhs), where + " total " + tname + ": arc does not commute with integrate at " + m.model->object_name(o));
      }
    }
  }
  // random tree sieves on a longer chain
  Gen g(107);
  auto chain = testing::chain_model(4);
  for (int k = 0; k < 20; ++k) {
    auto base = SimplicialFamily::constant(testing::random_tree_sieve(g, chain));
    check_fns({testing::random_tree_fn(g, base), testing::random_tree_fn(g, base), testing::random_tree_fn(g, base)}, base, "random tree " + std::to_string(k));
  }
  t.check(models >= 3 && integrals > 0, "too few tensor models or integrals");
  return std::to_string(models) + " tensor models, " + std::to_string(integrals) + " integral comparisons, 20 random tree sieves";
}

std::string one_point(Tally& t) {
  auto m = testing::point_model();
  auto fam = SimplicialFamily::constant(Sieve::build(m, {{"x"}}, {}));
  Gen g(108);
  long positive = 0;
  for (int k = 0; k < 100; ++k) {
    MotElem a = k % 2 ? g.signed_elem() : g.elem();
    TotalFn f = TotalFn::constant(fam, a);
    MotElem back = f.at(X, {});
    t.check(eq(back, a), "round trip of " + a.to_string());
    t.check(total_equal(TotalFn::constant(fam, back), f), "total round trip of " + a.to_string());
    bool in_ring = is_nonneg(a).nonneg;
    auto tp = is_total_positive(f);
    t.check(tp.certified && tp.nonneg == in_ring, "positivity of " + a.to_string());
    positive += in_ring;
  }
  return "100 elements, " + std::to_string(positive) + " positive";
}

// Independent oracle: generate a long stretch of the stream and read the
// behaviour off the values.
MonomialLimit stream_oracle(const std::vector<long>& tail) {
  std::size_t w = tail.size() / 2;
  std::vector<long> late(tail.begin() + static_cast<long>(w), tail.end());
  if (std::all_of(late.begin(), late.end(), [&](long v) { return v == late.front(); })) return {MonomialLimit::Kind::Stable, late.front()};
  bool falling = true;
  for (std::size_t k = 1; k < late.size(); ++k) falling = falling && late[k] < late[k - 1];
  if (falling) return {MonomialLimit::Kind::Zero, 0};
  return {MonomialLimit::Kind::Divergent, 0};
}

std::string dichotomy(Tally& t) {
  Gen g(109);
  const char* classes[] = {"constant", "decreasing", "increasing", "periodic", "periodic-constant"};
  for (const std::string cls : classes) {
    for (int k = 0; k < 50; ++k) {
      MonomialSequence s;
      for (long p = g.range(0, 6); p > 0; --p) s.prefix.push_back(g.range(-20, 20));
      std::vector<long> stream;
      long start = g.range(-10, 10);
      std::string desc;
      if (cls == "constant") {
        desc = "constant:" + std::to_string(start);
        stream.assign(200, start);
      } else if (cls == "decreasing" || cls == "increasing") {
        desc = cls;
        long v = start, dir = cls == "decreasing" ? -1 : 1;
        for (int i = 0; i < 200; ++i, v += dir * g.range(1, 3)) stream.push_back(v);
      } else {
        std::vector<long> cycle;
        long len = g.range(1, 4);
        if (cls == "periodic-constant") {
          cycle.assign(static_cast<std::size_t>(len), start);
        } else {
          len = std::max(len, 2L);
          for (long c = 0; c < len; ++c) cycle.push_back(g.range(-5, 5));
          if (std::all_of(cycle.begin(), cycle.end(), [&](long v) { return v == cycle.front(); })) cycle.back() += 1;
        }
        desc = "periodic:";
        for (std::size_t c = 0; c < cycle.size(); ++c) desc += (c ? "," : "") + std::to_string(cycle[c]);
        for (int i = 0; i < 200; ++i) stream.push_back(cycle[static_cast<std::size_t>(i) % cycle.size()]);
      }
      s.tail = parse_tail_descriptor(desc);
      MonomialLimit want = stream_oracle(stream), got = classify_monomial_limit(s);
      t.check(got.kind == want.kind && got.exponent == want.exponent, desc + ": got " + got.to_string() + ", expected " + want.to_string());
    }
  }
  bool rejected = false;
  try {
    classify_monomial_limit(MonomialSequence{{1, 2, 3}, std::nullopt});
  } catch (const Error& e) {
    rejected = e.kind() == ErrorKind::Value;
  }
  t.check(rejected, "missing tail descriptor accepted");
  return "5 tail classes x 50 instances";
}

} // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "ring order soundness", ring_order},
      {2, "evaluation is a ring homomorphism", homomorphism},
      {3, "expansion within the tail bound", expansion},
      {4, "geometric series integration", geometric},
      {5, "additivity of integration", additivity},
      {6, "semiring and sheaf laws on the corpus", sheaf_laws},
      {7, "arc action is a homomorphism", arc_action},
      {8, "one-point collapse", one_point},
      {9, "monomial limit dichotomy", dichotomy},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Tally t;
    std::string summary;
    auto t0 = std::chrono::steady_clock::now();
    try {
      summary = c.run(t);
    } catch (const std::exception& e) {
      t.check(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = t.failures == 0;
    failed += !ok;
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << " " << c.id << " " << c.title << ": " << t.checks << " checks";
    if (!summary.empty()) line << ", " << summary;
    if (!ok) line << "; " << t.failures << " failed, first: " << t.first;
    line.precision(2);
    line << std::fixed << " (" << secs << " s)";
    std::cout << line.str() << std::endl;
  }
  return failed ? 1 : 0;
}
