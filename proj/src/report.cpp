#include "motint/report.hpp"

#include "motint/expr.hpp"

#include <cstdio>
#include <sstream>

namespace motint {

using json = nlohmann::ordered_json;
using Index = SimplicialFamily::Index;

const std::string& Report::render(const ReportOptions& o) {
  rendered_ = o.json ? json.dump(2) + "\n" : text;
  return rendered_;
}

namespace {

std::string sci(const Rational& r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", r.get_d());
  return buf;
}

std::string point_name(const FatModel& m, const PointRef& p) { return m.object_name(p.obj) + ":" + p.point; }

std::vector<Rational> points_or(const ReportOptions& o, std::vector<Rational> fallback) { return o.qs.empty() ? fallback : o.qs; }

std::string indent(const std::string& block, const std::string& pad = "  ") {
  std::string out;
  std::istringstream in(block);
  for (std::string line; std::getline(in, line);) out += pad + line + "\n";
  return out;
}

std::string sieve_line(const Sieve& s) {
  std::string out;
  std::istringstream in(s.to_string());
  for (std::string line; std::getline(in, line);) out += (out.empty() ? "" : "  ") + line;
  return out;
}

json sieve_json(const Sieve& s) {
  json j = json::object();
  for (std::size_t o = 0; o < s.model()->object_count(); ++o) j[s.model()->object_name(static_cast<int>(o))] = s.points(static_cast<int>(o));
  return j;
}

json fn_json(const PermFn& f) {
  json out = json::array();
  const FatModel& m = *f.base().model();
  for (const auto& [idx, objs] : f.values()) {
    Sieve s = f.base().level(idx);
    json level = json::object();
    for (std::size_t o = 0; o < objs.size(); ++o) {
      json vals = json::object();
      for (std::size_t x = 0; x < objs[o].size(); ++x) vals[s.points(static_cast<int>(o))[x]] = objs[o][x].get_str();
      level[m.object_name(static_cast<int>(o))] = vals;
    }
    out.push_back({{"level", idx}, {"values", level}});
  }
  return out;
}

std::string tails_text(const SimplicialFamily& f) {
  std::string s;
  for (std::size_t c = 0; c < f.dim(); ++c) s += std::string(c ? "," : "") + tail_name(f.tail()[c]);
  return s;
}

void append(Report& r, const std::string& line) { r.text += line + "\n"; }

} // namespace

Report ring_eval_report(const std::string& expr, const ReportOptions& o) {
  Report r;
  MotElem a = parse_mot_elem(expr);
  append(r, a.to_string());
  r.json["expr"] = expr;
  r.json["value"] = a.to_string();
  r.json["evaluations"] = json::array();
  for (const auto& q : points_or(o, {Rational(2)})) {
    Rational v = a.eval(EvalPoint(q));
    append(r, "  q = " + to_string(q) + ": " + to_string(v));
    r.json["evaluations"].push_back({{"q", to_string(q)}, {"value", to_string(v)}});
  }
  return r;
}

Report ring_order_report(const std::string& lhs, const std::string& rhs, const ReportOptions&) {
  Report r;
  MotElem a = parse_mot_elem(lhs), b = parse_mot_elem(rhs);
  Positivity p = is_nonneg(a - b);
  append(r, lhs + " >= " + rhs + " : " + (p.nonneg ? "true" : "false"));
  r.json["lhs"] = lhs;
  r.json["rhs"] = rhs;
  r.json["holds"] = p.nonneg;
  if (!p.nonneg) {
    Rational v = (a - b).eval(EvalPoint(*p.witness));
    append(r, "  witness q = " + to_string(*p.witness) + " where lhs - rhs = " + to_string(v));
    r.json["witness"] = {{"q", to_string(*p.witness)}, {"difference", to_string(v)}};
  }
  return r;
}

Report ring_expand_report(const std::string& expr, const ReportOptions& o) {
  Report r;
  MotElem a = parse_mot_elem(expr);
  Expansion e = expand(a, o.prec);
  append(r, e.series.to_string());
  r.json["expr"] = expr;
  r.json["precision"] = o.prec;
  r.json["series"] = e.series.to_string();
  r.json["tail_bound"] = e.tail.to_string();
  r.json["checks"] = json::array();
  for (const auto& q : o.qs) {
    EvalPoint p(q);
    Rational diff = abs(Rational(a.eval(p) - e.series.eval(q))), bound = e.tail.at(q);
    bool ok = diff <= bound;
    r.ok = r.ok && ok;
    append(r, "  q = " + to_string(q) + ": |value - series| = " + sci(diff) + " <= tail bound " + sci(bound) + (ok ? " ok" : " FAILED"));
    r.json["checks"].push_back({{"q", to_string(q)}, {"difference", to_string(diff)}, {"bound", to_string(bound)}, {"ok", ok}});
  }
  return r;
}

Report seq_classify_report(const std::string& prefix, const std::string& tail, const ReportOptions&) {
  Report r;
  MonomialSequence s;
  std::istringstream in(prefix);
  for (std::string item; std::getline(in, item, ',');) {
    Rational v = parse_rational(item);
    if (v.get_den() != 1 || !v.get_num().fits_slong_p()) fail(ErrorKind::Value, "exponents must be integers: " + item);
    s.prefix.push_back(v.get_num().get_si());
  }
  if (!tail.empty()) s.tail = parse_tail_descriptor(tail);
  MonomialLimit lim = classify_monomial_limit(s);
  append(r, lim.to_string());
  r.json["prefix"] = s.prefix;
  r.json["tail"] = tail;
  r.json["limit"] = lim.to_string();
  return r;
}

Report model_check_report(const ModelFile& m, const ReportOptions&) {
  Report r;
  const FatModel& model = *m.model;
  append(r, "model " + m.path);
  append(r, "  objects " + std::to_string(model.object_count()) + ", morphisms " + std::to_string(model.morphism_count()) + ", tensor " +
                (model.has_tensor() ? "unit " + model.object_name(model.tensor_unit()) : std::string("none")));
  r.json["model"] = m.path;
  r.json["objects"] = model.object_count();
  r.json["morphisms"] = model.morphism_count();
  r.json["tensor"] = model.has_tensor();

  auto flag = [&](bool ok) {
    r.ok = r.ok && ok;
    return ok;
  };

  r.json["sieves"] = json::array();
  for (const auto& [name, s] : m.sieves) {
    auto w = s.check_functor();
    flag(!w);
    append(r, "sieve " + name + ": " + std::to_string(s.size()) + " points, " + (w ? "not a functor: " + w->message : "functor ok"));
    r.json["sieves"].push_back({{"name", name}, {"points", sieve_json(s)}, {"functor", !w}});
  }
  r.json["families"] = json::array();
  for (const auto& [name, f] : m.families) {
    auto w = f.check_functor();
    flag(!w);
    append(r, "family " + name + ": dim " + std::to_string(f.dim()) + (f.dim() ? ", bound " + index_to_string(f.bound()) + ", tail " + tails_text(f) : "") +
                  ", " + (w ? w->message : "levels ok"));
    r.json["families"].push_back({{"name", name}, {"dim", f.dim()}, {"bound", f.bound()}, {"tail", tails_text(f)}, {"ok", !w}});
  }
  r.json["opens"] = json::array();
  for (const auto& [name, u] : m.opens) {
    auto w = u.open.check(m.family(u.family));
    flag(!w);
    append(r, "open " + name + " on " + u.family + ": " + (w ? w->message : "sub-sieve ok"));
    r.json["opens"].push_back({{"name", name}, {"family", u.family}, {"ok", !w}});
  }
  r.json["functions"] = json::array();
  for (const auto& [name, f] : m.functions) {
    auto w = is_permissible(f.fn);
    std::optional<Witness> part;
    if (!w) part = check_partition(f.fn.base(), graph(f.fn));
    flag(!w && !part);
    std::string verdict = w ? "not permissible: " + w->message : part ? "graph does not partition: " + part->message : "permissible, graph partitions";
    append(r, "function " + name + " on " + f.family + ": " + verdict);
    r.json["functions"].push_back({{"name", name}, {"family", f.family}, {"permissible", !w}, {"partition", !w && !part}, {"detail", verdict}});
  }
  r.json["gluings"] = json::array();
  for (const auto& g : m.gluings) {
    std::vector<OpenSet> cover;
    std::vector<PermFn> parts;
    for (std::size_t k = 0; k < g.cover.size(); ++k) {
      cover.push_back(m.open(g.cover[k]).open);
      parts.push_back(restrict(m.function(g.parts[k]).fn, cover.back()));
    }
    std::string verdict;
    bool glued = false;
    try {
      glue(m.family(g.family), cover, parts);
      glued = true;
      verdict = "glued uniquely";
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Gluing) throw;
      verdict = std::string("rejected: ") + e.what();
    }
    bool ok = glued != g.expect_failure;
    flag(ok);
    append(r, "gluing " + g.name + ": " + verdict + (g.expect_failure ? (ok ? " (expected)" : " (expected a failure)") : ""));
    r.json["gluings"].push_back({{"name", g.name}, {"glued", glued}, {"expected_failure", g.expect_failure}, {"ok", ok}, {"detail", verdict}});
  }
  r.json["totals"] = json::array();
  for (const auto& [name, t] : m.totals) {
    auto cert = is_summable(t.fn, t.sum);
    append(r, "total " + name + " on " + t.family + ": " + std::to_string(t.fn.pieces().size()) + " pieces, sums " + std::to_string(t.sum) +
                  " of " + std::to_string(t.fn.dim()) + " indices, " + (cert.summable ? "summable" : "NotSummable: " + cert.reason));
    r.json["totals"].push_back({{"name", name}, {"family", t.family}, {"pieces", t.fn.pieces().size()}, {"summable", cert.summable}, {"reason", cert.reason}});
  }
  return r;
}

Report fn_op_report(const ModelFile& m, const std::vector<std::string>& args, const ReportOptions&) {
  if (args.empty()) fail(ErrorKind::Value, "fn-op needs an operation");
  const std::string& op = args[0];
  auto need = [&](std::size_t n) {
    if (args.size() != n + 1) fail(ErrorKind::Value, "fn-op " + op + " takes " + std::to_string(n) + " arguments");
  };
  auto fn = [&](const std::string& name) -> const PermFn& { return m.function(name).fn; };
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string x; std::getline(in, x, ',');) out.push_back(x);
    return out;
  };

  Report r;
  r.json["op"] = op;
  auto show_fn = [&](const std::string& title, const PermFn& f) {
    append(r, title);
    r.text += indent(f.to_string());
    r.json["result"] = fn_json(f);
  };

  if (op == "add" || op == "mul") {
    need(2);
    PermFn f = op == "add" ? fn_add(fn(args[1]), fn(args[2])) : fn_mul(fn(args[1]), fn(args[2]));
    show_fn(args[1] + (op == "add" ? " + " : " * ") + args[2] + ":", f);
  } else if (op == "graph") {
    need(1);
    SimplicialFamily g = graph(fn(args[1]));
    append(r, "graph of " + args[1] + " (last index is the value, tail " + tail_name(g.tail().back()) + " beyond " + std::to_string(g.bound().back()) + "):");
    r.json["levels"] = json::array();
    for (const auto& idx : g.box()) {
      Sieve s = g.level(idx);
      append(r, "  level " + index_to_string(idx) + ": " + sieve_line(s));
      r.json["levels"].push_back({{"level", idx}, {"points", sieve_json(s)}});
    }
  } else if (op == "arc") {
    need(2);
    show_fn("arc " + args[1] + " of " + args[2] + ":", arc_fn(m.model->object(args[1]), fn(args[2])));
  } else if (op == "restrict") {
    need(2);
    show_fn(args[1] + " restricted to " + args[2] + ":", restrict(fn(args[1]), m.open(args[2]).open));
  } else if (op == "permissible") {
    need(1);
    auto w = is_permissible(fn(args[1]));
    r.ok = !w;
    append(r, args[1] + (w ? " is not permissible: " + w->message : " is permissible"));
    r.json["permissible"] = !w;
    if (w) r.json["witness"] = w->message;
  } else if (op == "glue") {
    need(2);
    auto opens = split(args[1]), parts = split(args[2]);
    if (opens.size() != parts.size()) fail(ErrorKind::Value, "glue needs one function per open");
    std::vector<OpenSet> cover;
    std::vector<PermFn> restricted;
    for (std::size_t k = 0; k < opens.size(); ++k) {
      const NamedOpen& u = m.open(opens[k]);
      cover.push_back(u.open);
      restricted.push_back(restrict(fn(parts[k]), u.open));
    }
    const SimplicialFamily& base = m.family(m.open(opens[0]).family);
    show_fn("glued over " + args[1] + ":", glue(base, cover, restricted));
  } else if (op == "groth-eq") {
    need(4);
    bool e = groth_eq({fn(args[1]), fn(args[2])}, {fn(args[3]), fn(args[4])});
    append(r, "[" + args[1] + " - " + args[2] + "] == [" + args[3] + " - " + args[4] + "] : " + (e ? "true" : "false"));
    r.json["equal"] = e;
  } else {
    fail(ErrorKind::Value, "unknown fn-op '" + op + "'");
  }
  return r;
}

Report integrate_report(const ModelFile& m, const std::string& name, const ReportOptions& o) {
  const NamedTotal& t = m.total(name);
  const FatModel& model = *m.model;
  const std::size_t k = t.sum, n = t.fn.dim(), d = n - k;
  Report r;
  append(r, "integrate " + name + " over " + std::to_string(k) + " of " + std::to_string(n) + " indices of family " + t.family);
  r.json["total"] = name;
  r.json["family"] = t.family;
  r.json["summed"] = k;
  auto qs = points_or(o, {Rational(2), Rational(3)});

  if (!t.fn.is_presburger()) {
    WeakResult w = weak_integrate(t.fn, k, o.prec);
    append(r, "exponent is not piecewise affine; truncated to precision " + std::to_string(o.prec));
    r.json["mode"] = "truncated";
    r.json["values"] = json::array();
    for (const auto& v : w.values) {
      append(r, "  " + point_name(model, v.point) + " = " + v.series.to_string());
      json checks = json::array();
      for (const auto& q : qs) {
        Rational partial = partial_sum(t.fn, k, v.point, {}, EvalPoint(q), 40);
        Rational diff = abs(Rational(partial - v.series.eval(q))), bound = v.bound(q);
        bool ok = diff <= bound;
        r.ok = r.ok && ok;
        append(r, "    q = " + to_string(q) + ": |partial sum (40 terms) - series| = " + sci(diff) + " <= bound " + sci(bound) +
                      (ok ? " ok (sampled)" : " FAILED"));
        checks.push_back({{"q", to_string(q)}, {"difference", sci(diff)}, {"bound", sci(bound)}, {"ok", ok}});
      }
      r.json["values"].push_back({{"point", point_name(model, v.point)}, {"series", v.series.to_string()}, {"checks", checks}});
    }
    return r;
  }

  SummationResult res = integrate(t.fn, k);
  append(r, "summability:");
  for (const auto& v : res.certificate.verdicts) append(r, "  " + v);
  r.json["mode"] = "exact";
  r.json["certificate"] = res.certificate.verdicts;

  const TotalFn& v = res.value;
  std::vector<Index> outers;
  if (d == 0) {
    outers.push_back({});
  } else {
    std::vector<Index> grid{Index{}};
    for (std::size_t c = 0; c < d; ++c) {
      std::vector<Index> next;
      for (const auto& p : grid)
        for (long x = 0; x <= v.base().bound()[c] + 1; ++x) {
          next.push_back(p);
          next.back().push_back(x);
        }
      grid = std::move(next);
    }
    outers = grid.size() > 16 ? std::vector<Index>(grid.begin(), grid.begin() + 16) : grid;
  }

  append(r, "closed form:");
  r.json["closed_form"] = json::array();
  if (d == 0) {
    for (const auto& p : v.all_points()) {
      if (!v.present(p, {})) continue;
      MotElem x = v.at(p, {});
      append(r, "  " + point_name(model, p) + " = " + x.to_string());
      r.json["closed_form"].push_back({{"point", point_name(model, p)}, {"value", x.to_string()}});
    }
  } else {
    r.text += indent(v.to_string());
    r.json["closed_form"] = v.to_string();
  }
  if (k == 0) return r;

  const long T = k == 1 ? 200 : 40;
  append(r, "verification (sampled at q = " + [&] {
    std::string s;
    for (std::size_t i = 0; i < qs.size(); ++i) s += (i ? ", " : "") + to_string(qs[i]);
    return s;
  }() + ", " + std::to_string(T) + " terms per index):");
  r.json["checks"] = json::array();
  for (const auto& p : v.all_points())
    for (const auto& outer : outers) {
      if (!v.present(p, outer)) continue;
      for (const auto& q : qs) {
        EvalPoint e(q);
        Rational closed = v.eval(p, outer, e);
        Rational diff = abs(Rational(closed - partial_sum(t.fn, k, p, outer, e, T)));
        Rational bound = truncation_bound(t.fn, k, p, outer, e, T);
        bool ok = diff <= bound;
        r.ok = r.ok && ok;
        std::string at = point_name(model, p) + (d ? " " + index_to_string(outer) : "");
        append(r, "  " + at + " q = " + to_string(q) + ": |closed - partial| = " + sci(diff) + " <= " + sci(bound) + (ok ? " ok" : " FAILED"));
        r.json["checks"].push_back({{"point", at}, {"q", to_string(q)}, {"difference", sci(diff)}, {"bound", sci(bound)}, {"ok", ok}});
      }
    }
  return r;
}

Report full_report(const ModelFile& m, const ReportOptions& o) {
  Report r = model_check_report(m, o);
  json out;
  out["check"] = r.json;
  out["integrals"] = json::array();
  for (const auto& [name, t] : m.totals) {
    r.text += "\n";
    try {
      Report x = integrate_report(m, name, o);
      r.text += x.text;
      r.ok = r.ok && x.ok;
      out["integrals"].push_back(x.json);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotSummable && e.kind() != ErrorKind::DecompositionUnsupported && e.kind() != ErrorKind::Domain) throw;
      append(r, "integrate " + name + ": " + kind_name(e.kind()) + ": " + e.what());
      out["integrals"].push_back({{"total", name}, {"error", kind_name(e.kind())}, {"message", e.what()}});
    }
  }
  r.json = out;
  return r;
}

} // namespace motint
