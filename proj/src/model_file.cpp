#include "motint/model_file.hpp"

#include "motint/expr.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <regex>
#include <sstream>

namespace motint {

namespace {

template <class T>
const T& find_named(const std::vector<std::pair<std::string, T>>& v, const std::string& name, const char* what) {
  for (const auto& [k, x] : v)
    if (k == name) return x;
  fail(ErrorKind::Model, std::string("unknown ") + what + " '" + name + "'");
}

class Loader {
public:
  Loader(std::string path) : path_(std::move(path)) { out_.path = path_; }

  ModelFile run(const YAML::Node& root) {
    if (!root.IsMap()) fail_at(root, "model document must be a mapping");
    load_model(root);
    if (auto n = root["sieves"]) for_each_named(n, [&](const std::string& name, const YAML::Node& v) {
      out_.sieves.emplace_back(name, guarded(v, [&] { return load_sieve(v); }));
    });
    if (auto n = root["families"]) for_each_named(n, [&](const std::string& name, const YAML::Node& v) {
      out_.families.emplace_back(name, guarded(v, [&] { return load_family(v); }));
    });
    if (auto n = root["opens"]) for_each_named(n, [&](const std::string& name, const YAML::Node& v) {
      out_.opens.emplace_back(name, guarded(v, [&] { return load_open(name, v); }));
    });
    if (auto n = root["functions"]) for_each_named(n, [&](const std::string& name, const YAML::Node& v) {
      out_.functions.emplace_back(name, guarded(v, [&] { return load_function(v); }));
    });
    if (auto n = root["totals"]) for_each_named(n, [&](const std::string& name, const YAML::Node& v) {
      out_.totals.emplace_back(name, guarded(v, [&] { return load_total(v); }));
    });
    if (auto n = root["gluings"]) {
      if (!n.IsSequence()) fail_at(n, "gluings must be a list");
      for (const auto& g : n) out_.gluings.push_back(guarded(g, [&] { return load_gluing(g); }));
    }
    for (const auto& kv : root) {
      static const std::set<std::string> known{"objects", "morphisms", "compose", "thin", "tensor", "sieves",
                                               "families", "opens", "functions", "totals", "gluings", "description"};
      if (!known.count(kv.first.as<std::string>())) fail_at(kv.first, "unknown section '" + kv.first.as<std::string>() + "'");
    }
    return std::move(out_);
  }

private:
  std::string path_;
  ModelFile out_;

  std::string where(const YAML::Node& n) const {
    auto m = n.Mark();
    if (m.line < 0) return path_ + ": ";
    return path_ + ":" + std::to_string(m.line + 1) + ":" + std::to_string(m.column + 1) + ": ";
  }

  [[noreturn]] void fail_at(const YAML::Node& n, const std::string& msg, ErrorKind kind = ErrorKind::Model) const {
    throw Error(kind, where(n) + msg);
  }

  // Anchors library errors at the node that produced them.
  template <class F>
  auto guarded(const YAML::Node& n, F f) -> decltype(f()) {
    try {
      return f();
    } catch (const Error& e) {
      std::string msg = e.what();
      if (msg.rfind(path_ + ":", 0) == 0) throw;
      throw Error(e.kind(), where(n) + msg);
    } catch (const YAML::Exception& e) {
      throw Error(ErrorKind::Model, where(n) + e.msg);
    }
  }

  template <class F>
  void for_each_named(const YAML::Node& n, F f) {
    if (!n.IsMap()) fail_at(n, "expected a mapping of names");
    for (const auto& kv : n) f(kv.first.as<std::string>(), kv.second);
  }

  std::string scalar(const YAML::Node& n, const char* what) const {
    if (!n || !n.IsScalar()) fail_at(n, std::string("expected ") + what);
    return n.as<std::string>();
  }

  long integer(const YAML::Node& n, const char* what) const {
    std::string s = scalar(n, what);
    try {
      std::size_t used = 0;
      long v = std::stol(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    fail_at(n, std::string("expected an integer ") + what);
  }

  std::vector<std::string> strings(const YAML::Node& n, const char* what) const {
    if (!n || !n.IsSequence()) fail_at(n, std::string("expected a list of ") + what);
    std::vector<std::string> out;
    for (const auto& x : n) out.push_back(scalar(x, what));
    return out;
  }

  SimplicialFamily::Index index(const YAML::Node& n) const {
    SimplicialFamily::Index idx;
    if (!n.IsSequence()) fail_at(n, "expected an index list");
    for (const auto& x : n) idx.push_back(integer(x, "index"));
    return idx;
  }

  void load_model(const YAML::Node& root) {
    FatModelSpec spec;
    if (!root["objects"]) fail_at(root, "missing section 'objects'");
    spec.objects = strings(root["objects"], "object names");
    if (auto t = root["thin"]) spec.thin = t.as<bool>();
    if (auto ms = root["morphisms"]) {
      if (!ms.IsSequence()) fail_at(ms, "morphisms must be a list");
      for (const auto& m : ms) {
        FatModelSpec::Arrow a{scalar(m["name"], "morphism name"), scalar(m["from"], "source object"), scalar(m["to"], "target object"), false};
        if (auto e = m["embedding"]) a.embedding = e.as<bool>();
        spec.arrows.push_back(a);
      }
    }
    if (auto cs = root["compose"]) {
      if (!cs.IsSequence()) fail_at(cs, "compose must be a list of [g, f, g o f]");
      for (const auto& c : cs) {
        auto v = strings(c, "morphism names");
        if (v.size() != 3) fail_at(c, "compose entries are [g, f, g o f]");
        spec.compose.push_back({v[0], v[1], v[2]});
      }
    }
    if (auto t = root["tensor"]) {
      FatModelSpec::TensorSpec ts;
      ts.unit = scalar(t["unit"], "tensor unit");
      auto triples = [&](const YAML::Node& n, std::vector<std::array<std::string, 3>>& out) {
        if (!n) return;
        if (!n.IsSequence()) fail_at(n, "expected a list of triples");
        for (const auto& e : n) {
          auto v = strings(e, "names");
          if (v.size() != 3) fail_at(e, "tensor entries are [a, b, a (x) b]");
          out.push_back({v[0], v[1], v[2]});
        }
      };
      triples(t["objects"], ts.objects);
      triples(t["arrows"], ts.arrows);
      spec.tensor = ts;
    }
    out_.model = guarded(root, [&] { return FatModel::build(spec); });
  }

  int object(const YAML::Node& n) const {
    std::string name = scalar(n, "object name");
    try {
      return out_.model->object(name);
    } catch (const Error&) {
      fail_at(n, "unknown object '" + name + "'");
    }
  }

  const Sieve& sieve_ref(const YAML::Node& n) const {
    std::string name = scalar(n, "sieve name");
    for (const auto& [k, s] : out_.sieves)
      if (k == name) return s;
    fail_at(n, "unknown sieve '" + name + "'");
  }

  const SimplicialFamily& family_ref(const YAML::Node& n) const {
    std::string name = scalar(n, "family name");
    for (const auto& [k, f] : out_.families)
      if (k == name) return f;
    fail_at(n, "unknown family '" + name + "'");
  }

  const PermFn& function_ref(const YAML::Node& n) const {
    std::string name = scalar(n, "function name");
    for (const auto& [k, f] : out_.functions)
      if (k == name) return f.fn;
    fail_at(n, "unknown function '" + name + "'");
  }

  Sieve load_sieve(const YAML::Node& v) {
    if (!v.IsMap()) fail_at(v, "sieve must be a mapping");
    static const std::vector<std::pair<const char*, SetOp>> ops{
        {"union", SetOp::Union}, {"intersection", SetOp::Intersection}, {"product", SetOp::Product}, {"disjoint_union", SetOp::DisjointUnion}};
    for (const auto& [key, op] : ops)
      if (auto args = v[key]) {
        if (!args.IsSequence() || args.size() != 2) fail_at(args, std::string(key) + " takes two sieves");
        return set_op(sieve_ref(args[0]), sieve_ref(args[1]), op);
      }
    if (auto a = v["arc"]) {
      if (!a.IsSequence() || a.size() != 2) fail_at(a, "arc takes [object, sieve]");
      return arc(object(a[0]), sieve_ref(a[1]));
    }
    std::vector<std::vector<std::string>> pts(out_.model->object_count());
    if (auto p = v["points"]) {
      if (!p.IsMap()) fail_at(p, "points must map objects to point lists");
      for (const auto& kv : p) pts[static_cast<std::size_t>(object(kv.first))] = strings(kv.second, "point ids");
    }
    Sieve::MapTable maps;
    if (auto m = v["maps"]) {
      if (!m.IsMap()) fail_at(m, "maps must map morphisms to point tables");
      for (const auto& kv : m) {
        std::string name = scalar(kv.first, "morphism name");
        if (!kv.second.IsMap()) fail_at(kv.second, "transition table must be a mapping");
        auto& table = maps[name];
        for (const auto& e : kv.second) table[scalar(e.first, "point id")] = scalar(e.second, "point id");
      }
    }
    Sieve s = Sieve::build(out_.model, pts, maps);
    if (auto w = s.check_functor()) fail_at(v, w->message);
    return s;
  }

  TailKind tail_kind(const YAML::Node& n) const {
    std::string t = scalar(n, "tail kind");
    if (t == "constant") return TailKind::Constant;
    if (t == "empty") return TailKind::Empty;
    if (t == "none") return TailKind::None;
    fail_at(n, "tail kind must be constant, empty or none");
  }

  SimplicialFamily load_family(const YAML::Node& v) {
    if (v.IsScalar()) return SimplicialFamily::constant(sieve_ref(v));
    if (!v.IsMap()) fail_at(v, "family must be a sieve name or a mapping");
    if (auto c = v["constant"]) return SimplicialFamily::constant(sieve_ref(c));
    if (auto a = v["arc"]) {
      if (!a.IsSequence() || a.size() != 2) fail_at(a, "arc takes [object, family]");
      return family_ref(a[1]).arc(object(a[0]));
    }
    if (auto t = v["tau"]) {
      if (!t.IsSequence() || t.size() != 2) fail_at(t, "tau takes [family, index]");
      return family_ref(t[0]).tau(index(t[1]));
    }
    std::vector<long> bound = index(v["bound"]);
    std::vector<TailKind> tail;
    if (!v["tail"] || !v["tail"].IsSequence()) fail_at(v, "family needs a tail list");
    for (const auto& t : v["tail"]) tail.push_back(tail_kind(t));
    if (tail.size() != bound.size()) fail_at(v["tail"], "tail and bound differ in length");
    std::map<SimplicialFamily::Index, Sieve> levels;
    Sieve fallback(out_.model);
    if (auto d = v["default"]) fallback = sieve_ref(d);
    if (auto ls = v["levels"]) {
      if (!ls.IsSequence()) fail_at(ls, "levels must be a list of {at, sieve}");
      for (const auto& l : ls) {
        auto idx = index(l["at"]);
        if (idx.size() != bound.size()) fail_at(l, "level index has the wrong length");
        for (std::size_t c = 0; c < idx.size(); ++c)
          if (idx[c] < 0 || idx[c] > bound[c]) fail_at(l, "level index outside the bound");
        if (!levels.emplace(idx, sieve_ref(l["sieve"])).second) fail_at(l, "level listed twice");
      }
    }
    std::vector<SimplicialFamily::Index> box{{}};
    for (long b : bound) {
      std::vector<SimplicialFamily::Index> next;
      for (const auto& p : box)
        for (long v = 0; v <= b; ++v) {
          next.push_back(p);
          next.back().push_back(v);
        }
      box = std::move(next);
    }
    for (const auto& b : box) levels.emplace(b, fallback);
    SimplicialFamily fam(out_.model, bound, tail, std::move(levels));
    if (auto w = fam.check_functor()) fail_at(v, w->message);
    return fam;
  }

  std::vector<std::set<std::string>> point_sets(const YAML::Node& n) const {
    if (!n || !n.IsMap()) fail_at(n, "expected object: [points]");
    std::vector<std::set<std::string>> pts(out_.model->object_count());
    for (const auto& kv : n) {
      auto v = strings(kv.second, "point ids");
      pts[static_cast<std::size_t>(object(kv.first))].insert(v.begin(), v.end());
    }
    return pts;
  }

  NamedOpen load_open(const std::string& name, const YAML::Node& v) {
    std::string fam = scalar(v["family"], "family name");
    const SimplicialFamily& base = family_ref(v["family"]);
    OpenSet u{name, point_sets(v["points"])};
    if (auto w = u.check(base)) fail_at(v, "open " + name + " is not a sub-sieve: " + w->message);
    return {fam, u};
  }

  // obj -> {point: value}
  void fill_values(const YAML::Node& n, const SimplicialFamily::Index& idx, const SimplicialFamily& base, PermFn::Values& vals) const {
    if (!n.IsMap()) fail_at(n, "values map objects to {point: value}");
    Sieve s = base.level(idx);
    for (const auto& kv : n) {
      int o = object(kv.first);
      if (!kv.second.IsMap()) fail_at(kv.second, "expected {point: value}");
      for (const auto& e : kv.second) {
        std::string p = scalar(e.first, "point id");
        int k = s.index_of(o, p);
        if (k < 0) continue; // absent at this level
        long x = integer(e.second, "value");
        if (x < 0) fail_at(e.second, "function values are natural numbers");
        vals[idx][static_cast<std::size_t>(o)][static_cast<std::size_t>(k)] = Integer(x);
      }
    }
  }

  NamedFn load_function(const YAML::Node& v) {
    std::string fam = scalar(v["family"], "family name");
    const SimplicialFamily& base = family_ref(v["family"]);
    if (auto c = v["constant"]) {
      long x = integer(c, "constant");
      if (x < 0) fail_at(c, "function values are natural numbers");
      return {fam, PermFn::constant(base, Integer(x))};
    }
    PermFn::Values vals;
    std::map<SimplicialFamily::Index, std::vector<std::vector<bool>>> set;
    for (const auto& idx : base.box()) {
      Sieve s = base.level(idx);
      auto& objs = vals[idx];
      for (std::size_t o = 0; o < out_.model->object_count(); ++o) objs.emplace_back(s.points(static_cast<int>(o)).size(), Integer(-1));
    }
    if (auto u = v["values"])
      for (const auto& idx : base.box()) fill_values(u, idx, base, vals);
    if (auto ls = v["levels"]) {
      if (!ls.IsSequence()) fail_at(ls, "levels must be a list of {at, values}");
      for (const auto& l : ls) {
        auto idx = index(l["at"]);
        if (!vals.count(idx)) fail_at(l, "level index outside the box");
        fill_values(l["values"], idx, base, vals);
      }
    }
    for (const auto& [idx, objs] : vals)
      for (std::size_t o = 0; o < objs.size(); ++o)
        for (std::size_t k = 0; k < objs[o].size(); ++k)
          if (objs[o][k] < 0)
            fail_at(v, "no value for point " + base.level(idx).points(static_cast<int>(o))[k] + " of " + out_.model->object_name(static_cast<int>(o)) +
                           " at level " + index_to_string(idx));
    return {fam, PermFn(base, std::move(vals))};
  }

  Region constraints(const YAML::Node& n, const std::vector<std::string>& names) const {
    if (!n) return Region::natural(names.size());
    std::vector<std::string> lines = n.IsSequence() ? strings(n, "constraints") : std::vector<std::string>{scalar(n, "constraint")};
    return parse_constraints(lines, names);
  }

  TotalFn factor(const YAML::Node& n, const SimplicialFamily& base, const std::vector<std::string>& names) {
    std::size_t d = base.dim();
    if (!n) return TotalFn::constant(base, MotElem(1));
    if (n.IsScalar())
      return TotalFn(base, {{std::nullopt, Region::natural(d), {{QMotElem(Rational(1)), parse_multi_poly(scalar(n, "factor"), names), Affine(d), std::nullopt}}}});
    if (auto f = n["fn"]) return TotalFn::from_groth({function_ref(f), PermFn::constant(base, 0)});
    if (auto g = n["groth"]) {
      if (!g.IsSequence() || g.size() != 2) fail_at(g, "groth takes [positive, negative]");
      return TotalFn::from_groth({function_ref(g[0]), function_ref(g[1])});
    }
    fail_at(n, "factor must be a polynomial, {fn} or {groth}");
  }

  TotalFn exponent(const YAML::Node& n, const SimplicialFamily& base, const std::vector<std::string>& names) {
    std::size_t d = base.dim();
    auto one = [&](const Region& r, const Affine& a) { return TotalPiece{std::nullopt, r, {{QMotElem(Rational(1)), MultiPoly(d, 1), a, std::nullopt}}}; };
    if (!n) return TotalFn::constant(base, MotElem(1));
    if (n.IsScalar()) return TotalFn(base, {one(Region::natural(d), parse_affine(scalar(n, "exponent"), names))});
    if (auto f = n["fn"]) return TotalFn::exponential(function_ref(f));
    if (auto ps = n["pieces"]) {
      if (!ps.IsSequence()) fail_at(ps, "pieces must be a list of {where, form}");
      std::vector<TotalPiece> pieces;
      std::vector<Region> regions;
      for (const auto& p : ps) {
        Region r = guarded(p, [&] { return constraints(p["where"], names); });
        regions.push_back(r);
        pieces.push_back(one(r, guarded(p, [&] { return parse_affine(scalar(p["form"], "affine form"), names); })));
      }
      if (auto w = check_exponent_partition(regions, d)) fail_at(ps, w->message);
      return TotalFn(base, std::move(pieces));
    }
    if (auto t = n["table"]) {
      std::string var = n["index"] ? scalar(n["index"], "index name") : (names.empty() ? "i" : names.back());
      auto pos = std::find(names.begin(), names.end(), var);
      if (pos == names.end()) fail_at(n, "table exponent on unknown index '" + var + "'");
      TabularExponent tab;
      tab.coord = static_cast<std::size_t>(pos - names.begin());
      if (!t.IsSequence()) fail_at(t, "table must be a list of integers");
      for (const auto& x : t) tab.table.push_back(Integer(integer(x, "table entry")));
      tab.tail = guarded(n["tail"], [&] { return to_int_poly(*parse_expr(scalar(n["tail"], "tail polynomial"), {var}), var); });
      return TotalFn(base, {TotalPiece{std::nullopt, Region::natural(d), {{QMotElem(Rational(1)), MultiPoly(d, 1), Affine(d), tab}}}});
    }
    fail_at(n, "exponent must be an affine form, {pieces}, {fn} or {table, tail}");
  }

  NamedTotal load_total(const YAML::Node& v) {
    std::string fam = scalar(v["family"], "family name");
    const SimplicialFamily& base = family_ref(v["family"]);
    const std::size_t d = base.dim();
    auto names = index_names(d);
    std::size_t sum = d;
    if (auto s = v["sum"]) {
      long k = integer(s, "number of summed indices");
      if (k < 0 || static_cast<std::size_t>(k) > d) fail_at(s, "sum must lie between 0 and the family dimension");
      sum = static_cast<std::size_t>(k);
    }
    auto ts = v["terms"];
    if (!ts || !ts.IsSequence()) fail_at(v, "total needs a list of terms");
    TotalFn total(base, {});
    for (const auto& t : ts) {
      TotalFn term = guarded(t, [&] {
        QMotElem coef = to_rational(t["coef"] ? guarded(t["coef"], [&] { return parse_mot_elem(scalar(t["coef"], "coefficient")); }) : MotElem(1));
        Selector sel;
        if (auto ps = t["points"]) {
          sel.emplace();
          if (!ps.IsSequence()) fail_at(ps, "points must be a list of obj:point");
          for (const auto& p : ps) {
            std::string s = scalar(p, "obj:point");
            auto colon = s.find(':');
            if (colon == std::string::npos) fail_at(p, "points are written obj:point");
            int o;
            try {
              o = out_.model->object(s.substr(0, colon));
            } catch (const Error&) {
              fail_at(p, "unknown object in '" + s + "'");
            }
            sel->insert({o, s.substr(colon + 1)});
          }
        }
        Region r = guarded(t, [&] { return constraints(t["where"], names); });
        TotalFn head(base, {{sel, r, {{coef, MultiPoly(d, 1), Affine(d), std::nullopt}}}});
        return total_mul(total_mul(head, factor(t["factor"], base, names)), exponent(t["exponent"], base, names));
      });
      total = total_add(total, term);
    }
    return {fam, total, sum};
  }

  GluingSpec load_gluing(const YAML::Node& g) {
    GluingSpec s;
    s.name = g["name"] ? scalar(g["name"], "name") : "gluing";
    s.family = scalar(g["family"], "family name");
    family_ref(g["family"]);
    s.cover = strings(g["cover"], "open names");
    s.parts = strings(g["parts"], "function names");
    if (s.cover.size() != s.parts.size()) fail_at(g, "cover and parts differ in length");
    for (std::size_t k = 0; k < s.cover.size(); ++k) {
      const NamedOpen& u = guarded(g["cover"], [&]() -> const NamedOpen& { return out_.open(s.cover[k]); });
      const NamedFn& f = guarded(g["parts"], [&]() -> const NamedFn& { return out_.function(s.parts[k]); });
      if (u.family != s.family || f.family != s.family) fail_at(g, "cover and parts must live on family " + s.family);
    }
    if (auto e = g["expect"]) {
      std::string x = scalar(e, "expectation");
      if (x != "success" && x != "failure") fail_at(e, "expect is success or failure");
      s.expect_failure = x == "failure";
    }
    return s;
  }
};

std::string strip(const std::string& s) {
  auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

Affine to_form(const AffineExpr& e) {
  Affine f(e.coeffs.size(), Rational(e.constant));
  for (std::size_t c = 0; c < e.coeffs.size(); ++c) f.a[c] = Rational(e.coeffs[c]);
  return f;
}

MultiPoly poly_of(const ExprAst& a, const std::vector<std::string>& names) {
  const std::size_t n = names.size();
  switch (a.kind) {
  case ExprAst::Kind::Int:
    return MultiPoly(n, Rational(a.value));
  case ExprAst::Kind::Var: {
    auto pos = std::find(names.begin(), names.end(), a.name);
    return MultiPoly::from_affine(Affine::var(n, static_cast<std::size_t>(pos - names.begin())));
  }
  case ExprAst::Kind::Neg:
    return poly_of(*a.args[0], names) * Rational(-1);
  case ExprAst::Kind::Add:
    return poly_of(*a.args[0], names) + poly_of(*a.args[1], names);
  case ExprAst::Kind::Sub:
    return poly_of(*a.args[0], names) + poly_of(*a.args[1], names) * Rational(-1);
  case ExprAst::Kind::Mul:
    return poly_of(*a.args[0], names) * poly_of(*a.args[1], names);
  case ExprAst::Kind::Pow: {
    if (a.value < 0) fail(ErrorKind::Value, "negative power in an index polynomial");
    MultiPoly base = poly_of(*a.args[0], names), out(n, 1);
    for (Integer k = 0; k < a.value; ++k) out = out * base;
    return out;
  }
  default:
    fail(ErrorKind::Value, "index polynomials use integers and index names only (column " + std::to_string(a.column) + ")");
  }
}

} // namespace

const Sieve& ModelFile::sieve(const std::string& name) const { return find_named(sieves, name, "sieve"); }
const SimplicialFamily& ModelFile::family(const std::string& name) const { return find_named(families, name, "family"); }
const NamedOpen& ModelFile::open(const std::string& name) const { return find_named(opens, name, "open"); }
const NamedFn& ModelFile::function(const std::string& name) const { return find_named(functions, name, "function"); }
const NamedTotal& ModelFile::total(const std::string& name) const { return find_named(totals, name, "total"); }

Affine parse_affine(const std::string& text, const std::vector<std::string>& names) {
  std::set<std::string> vars(names.begin(), names.end());
  return to_form(to_affine(*parse_expr(text, vars), names));
}

MultiPoly parse_multi_poly(const std::string& text, const std::vector<std::string>& names) {
  std::set<std::string> vars(names.begin(), names.end());
  return poly_of(*parse_expr(text, vars), names);
}

Region parse_constraints(const std::vector<std::string>& lines, const std::vector<std::string>& names) {
  static const std::regex mod_re(R"(^(.*)\bmod\s+([0-9]+)\s*==\s*(-?[0-9]+)\s*$)");
  Region r = Region::natural(names.size());
  for (const auto& line : lines) {
    std::smatch m;
    if (std::regex_match(line, m, mod_re)) {
      Integer modulus(m[2].str());
      if (modulus <= 0) fail(ErrorKind::Value, "modulus must be positive in '" + line + "'");
      Affine f = parse_affine(strip(m[1].str()), names);
      f.b -= Rational(Integer(m[3].str()));
      r.congs.push_back({f, modulus});
      continue;
    }
    static const std::vector<std::string> ops{">=", "<=", "==", ">", "<"};
    std::size_t at = std::string::npos;
    std::string op;
    for (const auto& o : ops) {
      auto p = line.find(o);
      if (p != std::string::npos && (at == std::string::npos || p < at || (p == at && o.size() > op.size()))) {
        at = p;
        op = o;
      }
    }
    if (at == std::string::npos) fail(ErrorKind::Syntax, "constraint '" + line + "' needs one of >=, <=, >, <, ==");
    Affine lhs = parse_affine(strip(line.substr(0, at)), names), rhs = parse_affine(strip(line.substr(at + op.size())), names);
    Affine diff = lhs + rhs * Rational(-1);
    Affine neg = diff * Rational(-1);
    if (op == ">=") r.ineqs.push_back(diff);
    if (op == ">") r.ineqs.push_back(diff + Affine(names.size(), Rational(-1)));
    if (op == "<=") r.ineqs.push_back(neg);
    if (op == "<") r.ineqs.push_back(neg + Affine(names.size(), Rational(-1)));
    if (op == "==") {
      r.ineqs.push_back(diff);
      r.ineqs.push_back(neg);
    }
  }
  return r;
}

ModelFile load_model_text(const std::string& text, const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw SyntaxError(path + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) + ": " + e.msg, e.mark.line + 1,
                      e.mark.column + 1);
  }
  return Loader(path).run(root);
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Value, "cannot open model file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_model_text(ss.str(), path);
}

} // namespace motint
