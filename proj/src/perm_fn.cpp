#include "motint/perm_fn.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace motint {

using Index = SimplicialFamily::Index;

namespace {

std::vector<Index> grid(const std::vector<long>& bound) {
  std::vector<Index> out{Index{}};
  for (long b : bound) {
    std::vector<Index> next;
    for (const auto& p : out)
      for (long v = 0; v <= b; ++v) {
        Index q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<std::vector<bool>> select(const Sieve& s, const std::function<bool(int, std::size_t)>& keep) {
  std::vector<std::vector<bool>> out(s.model()->object_count());
  for (std::size_t o = 0; o < out.size(); ++o) {
    out[o].resize(s.points(static_cast<int>(o)).size());
    for (std::size_t x = 0; x < out[o].size(); ++x) out[o][x] = keep(static_cast<int>(o), x);
  }
  return out;
}

void require_same_base(const PermFn& f, const PermFn& g) {
  if (!(f.base() == g.base())) fail(ErrorKind::Value, "functions live on different bases");
}

PermFn pointwise(const PermFn& f, const PermFn& g, bool mul) {
  require_same_base(f, g);
  PermFn::Values v = f.values();
  for (auto& [idx, objs] : v)
    for (std::size_t o = 0; o < objs.size(); ++o)
      for (std::size_t x = 0; x < objs[o].size(); ++x) {
        const Integer& b = g.values().at(idx)[o][x];
        objs[o][x] = mul ? Integer(objs[o][x] * b) : Integer(objs[o][x] + b);
      }
  return PermFn(f.base(), std::move(v));
}

std::string where(const SimplicialFamily& fam, const Index& idx, int obj, const std::string& x) {
  std::string s = "point " + x + " of " + fam.model()->object_name(obj);
  if (!idx.empty()) s += " at level " + index_to_string(idx);
  return s;
}

} // namespace

bool same_levels(const SimplicialFamily& a, const SimplicialFamily& b) {
  if (a.model() != b.model() || a.dim() != b.dim()) return false;
  std::vector<long> bound(a.dim());
  for (std::size_t c = 0; c < a.dim(); ++c) bound[c] = std::max(a.bound()[c], b.bound()[c]) + 1;
  for (const auto& idx : grid(bound)) {
    bool ca = a.covers(idx), cb = b.covers(idx);
    if (ca != cb) return false;
    if (ca && !(a.level(idx) == b.level(idx))) return false;
  }
  return true;
}

OpenSet OpenSet::whole(const SimplicialFamily& fam, std::string name) {
  OpenSet u{std::move(name), std::vector<std::set<std::string>>(fam.model()->object_count())};
  for (const auto& idx : fam.box()) {
    Sieve s = fam.level(idx);
    for (std::size_t o = 0; o < u.points.size(); ++o) u.points[o].insert(s.points(static_cast<int>(o)).begin(), s.points(static_cast<int>(o)).end());
  }
  return u;
}

std::optional<Witness> OpenSet::check(const SimplicialFamily& fam) const {
  if (points.size() != fam.model()->object_count()) return Witness{"open " + name + " does not list every object"};
  for (const auto& idx : fam.box()) {
    Sieve s = fam.level(idx);
    auto keep = select(s, [&](int o, std::size_t x) { return points[static_cast<std::size_t>(o)].count(s.points(o)[x]) > 0; });
    if (auto w = s.restrict_check(keep)) {
      std::string at = idx.empty() ? "" : " at level " + index_to_string(idx);
      return Witness{"open " + name + " is not closed" + at + ": " + w->message};
    }
  }
  return std::nullopt;
}

SimplicialFamily OpenSet::apply(const SimplicialFamily& fam) const {
  if (auto w = check(fam)) fail(ErrorKind::Model, w->message);
  std::map<Index, Sieve> levels;
  for (const auto& idx : fam.box()) {
    Sieve s = fam.level(idx);
    auto keep = select(s, [&](int o, std::size_t x) { return points[static_cast<std::size_t>(o)].count(s.points(o)[x]) > 0; });
    levels.emplace(idx, s.restrict(keep));
  }
  return SimplicialFamily(fam.model(), fam.bound(), fam.tail(), std::move(levels));
}

PermFn::PermFn(SimplicialFamily base, Values values) : base_(std::move(base)), values_(std::move(values)) {
  const std::size_t no = base_.model()->object_count();
  auto box = base_.box();
  if (values_.size() != box.size()) fail(ErrorKind::Model, "function values must be given on every listed level");
  for (const auto& idx : box) {
    auto it = values_.find(idx);
    if (it == values_.end()) fail(ErrorKind::Model, "function values missing at level " + index_to_string(idx));
    Sieve s = base_.level(idx);
    if (it->second.size() != no) fail(ErrorKind::Model, "function values must cover every object");
    for (std::size_t o = 0; o < no; ++o) {
      if (it->second[o].size() != s.points(static_cast<int>(o)).size())
        fail(ErrorKind::Model, "function values do not match the points of " + base_.model()->object_name(static_cast<int>(o)));
      for (const auto& v : it->second[o])
        if (v < 0) fail(ErrorKind::Value, "permissible functions take natural values");
    }
  }
}

PermFn PermFn::make(SimplicialFamily base, Values values) {
  PermFn f(std::move(base), std::move(values));
  if (auto w = is_permissible(f)) fail(ErrorKind::Domain, w->message);
  return f;
}

PermFn PermFn::constant(const SimplicialFamily& base, const Integer& n) {
  Values v;
  for (const auto& idx : base.box()) {
    Sieve s = base.level(idx);
    auto& objs = v[idx];
    for (std::size_t o = 0; o < base.model()->object_count(); ++o) objs.emplace_back(s.points(static_cast<int>(o)).size(), n);
  }
  return PermFn(base, std::move(v));
}

Integer PermFn::at(const Index& idx, int obj, const std::string& point) const {
  auto rep = base_.representative(idx);
  if (!rep) fail(ErrorKind::Domain, where(base_, idx, obj, point) + " is not in the base");
  int x = base_.level(*rep).index_of(obj, point);
  if (x < 0) fail(ErrorKind::Domain, where(base_, idx, obj, point) + " is not in the base");
  return values_.at(*rep)[static_cast<std::size_t>(obj)][static_cast<std::size_t>(x)];
}

Integer PermFn::max_value() const {
  Integer m = 0;
  for (const auto& [idx, objs] : values_)
    for (const auto& vs : objs)
      for (const auto& v : vs) m = std::max(m, v);
  return m;
}

std::string PermFn::to_string() const {
  std::ostringstream os;
  const FatModel& m = *base_.model();
  for (const auto& [idx, objs] : values_) {
    Sieve s = base_.level(idx);
    for (std::size_t o = 0; o < objs.size(); ++o) {
      if (!idx.empty()) os << index_to_string(idx) << " ";
      os << m.object_name(static_cast<int>(o)) << ":";
      for (std::size_t x = 0; x < objs[o].size(); ++x) os << (x ? ", " : " ") << s.points(static_cast<int>(o))[x] << "=" << objs[o][x].get_str();
      os << "\n";
    }
  }
  return os.str();
}

std::optional<Witness> is_permissible(const PermFn& f) {
  const FatModel& m = *f.base().model();
  for (const auto& [idx, objs] : f.values()) {
    Sieve s = f.base().level(idx);
    for (std::size_t k = 0; k < m.morphism_count(); ++k) {
      const Morphism& j = m.morphism(static_cast<int>(k));
      const auto& top = objs[static_cast<std::size_t>(j.to)];
      const auto& bottom = objs[static_cast<std::size_t>(j.from)];
      for (std::size_t x = 0; x < top.size(); ++x) {
        auto y = static_cast<std::size_t>(s.pull(static_cast<int>(k), static_cast<int>(x)));
        if (top[x] == bottom[y]) continue;
        std::string kind = j.embedding ? "compatibility" : "sieve condition";
        return Witness{kind + " fails along " + j.name + " at " + where(f.base(), idx, j.to, s.points(j.to)[x]) + ": value " +
                       top[x].get_str() + " but " + j.name + "* gives " + s.points(j.from)[y] + " with value " + bottom[y].get_str()};
      }
    }
  }
  return std::nullopt;
}

PermFn fn_add(const PermFn& f, const PermFn& g) { return pointwise(f, g, false); }
PermFn fn_mul(const PermFn& f, const PermFn& g) { return pointwise(f, g, true); }

SimplicialFamily graph(const PermFn& f) {
  const SimplicialFamily& base = f.base();
  long top = f.max_value().get_si();
  std::vector<long> bound = base.bound();
  bound.push_back(top);
  std::vector<TailKind> tail = base.tail();
  tail.push_back(TailKind::Empty);
  std::map<Index, Sieve> levels;
  for (const auto& idx : base.box()) {
    Sieve s = base.level(idx);
    const auto& objs = f.values().at(idx);
    for (long n = 0; n <= top; ++n) {
      auto keep = select(s, [&](int o, std::size_t x) { return objs[static_cast<std::size_t>(o)][x] == n; });
      Index full = idx;
      full.push_back(n);
      levels.emplace(full, s.restrict(keep));
    }
  }
  return SimplicialFamily(base.model(), std::move(bound), std::move(tail), std::move(levels));
}

SimplicialFamily graph_sum(const SimplicialFamily& gf, const SimplicialFamily& gg) {
  if (gf.model() != gg.model() || gf.dim() != gg.dim() || gf.dim() == 0) fail(ErrorKind::Value, "graphs have different shapes");
  std::size_t d = gf.dim() - 1;
  std::vector<long> bound(gf.bound().begin(), gf.bound().begin() + static_cast<long>(d));
  std::vector<TailKind> tail(gf.tail().begin(), gf.tail().begin() + static_cast<long>(d));
  for (std::size_t c = 0; c < d; ++c)
    if (gf.bound()[c] != gg.bound()[c] || gf.tail()[c] != gg.tail()[c]) fail(ErrorKind::Value, "graphs have different bases");
  long top = gf.bound()[d] + gg.bound()[d];
  bound.push_back(top);
  tail.push_back(TailKind::Empty);
  std::map<Index, Sieve> levels;
  for (const auto& idx : grid(std::vector<long>(bound.begin(), bound.end() - 1))) {
    for (long n = 0; n <= top; ++n) {
      Sieve acc(gf.model());
      for (long t = 0; t <= n; ++t) {
        Index a = idx, b = idx;
        a.push_back(t);
        b.push_back(n - t);
        acc = set_op(acc, set_op(gf.level(a), gg.level(b), SetOp::Intersection), SetOp::Union);
      }
      Index full = idx;
      full.push_back(n);
      levels.emplace(full, acc);
    }
  }
  return SimplicialFamily(gf.model(), std::move(bound), std::move(tail), std::move(levels));
}

std::optional<Witness> check_partition(const SimplicialFamily& base, const SimplicialFamily& g) {
  if (g.dim() != base.dim() + 1) return Witness{"graph has the wrong dimension"};
  long top = g.bound().back();
  for (const auto& idx : base.box()) {
    Sieve s = base.level(idx);
    std::vector<Sieve> lv;
    for (long n = 0; n <= top; ++n) {
      Index full = idx;
      full.push_back(n);
      lv.push_back(g.level(full));
    }
    for (std::size_t o = 0; o < base.model()->object_count(); ++o) {
      for (const auto& x : s.points(static_cast<int>(o))) {
        int hits = 0;
        for (const auto& l : lv) hits += l.contains(static_cast<int>(o), x) ? 1 : 0;
        if (hits != 1)
          return Witness{where(base, idx, static_cast<int>(o), x) + " lies in " + std::to_string(hits) + " graph levels"};
      }
      for (std::size_t n = 0; n < lv.size(); ++n)
        for (const auto& x : lv[n].points(static_cast<int>(o)))
          if (!s.contains(static_cast<int>(o), x))
            return Witness{"graph level " + std::to_string(n) + " contains " + where(base, idx, static_cast<int>(o), x) + " outside the base"};
    }
  }
  return std::nullopt;
}

PermFn from_graph(const SimplicialFamily& base, const SimplicialFamily& g) {
  if (auto w = check_partition(base, g)) fail(ErrorKind::Domain, w->message);
  PermFn::Values v;
  long top = g.bound().back();
  for (const auto& idx : base.box()) {
    Sieve s = base.level(idx);
    auto& objs = v[idx];
    objs.resize(base.model()->object_count());
    for (std::size_t o = 0; o < objs.size(); ++o)
      for (const auto& x : s.points(static_cast<int>(o)))
        for (long n = 0; n <= top; ++n) {
          Index full = idx;
          full.push_back(n);
          if (g.level(full).contains(static_cast<int>(o), x)) objs[o].emplace_back(n);
        }
  }
  return PermFn(base, std::move(v));
}

GrothElem groth_add(const GrothElem& a, const GrothElem& b) { return {fn_add(a.pos, b.pos), fn_add(a.neg, b.neg)}; }

GrothElem groth_mul(const GrothElem& a, const GrothElem& b) {
  return {fn_add(fn_mul(a.pos, b.pos), fn_mul(a.neg, b.neg)), fn_add(fn_mul(a.pos, b.neg), fn_mul(a.neg, b.pos))};
}

bool groth_eq(const GrothElem& a, const GrothElem& b) { return fn_add(a.pos, b.neg) == fn_add(b.pos, a.neg); }

PermFn restrict(const PermFn& f, const OpenSet& u) {
  SimplicialFamily base = u.apply(f.base());
  PermFn::Values v;
  for (const auto& idx : base.box()) {
    Sieve s = base.level(idx);
    auto& objs = v[idx];
    for (std::size_t o = 0; o < base.model()->object_count(); ++o) {
      objs.emplace_back();
      for (const auto& x : s.points(static_cast<int>(o))) objs.back().push_back(f.at(idx, static_cast<int>(o), x));
    }
  }
  return PermFn(base, std::move(v));
}

PermFn glue(const SimplicialFamily& base, const std::vector<OpenSet>& cover, const std::vector<PermFn>& parts) {
  if (cover.size() != parts.size()) fail(ErrorKind::Value, "glue needs one part per open");
  for (std::size_t k = 0; k < cover.size(); ++k)
    if (!(parts[k].base() == cover[k].apply(base))) fail(ErrorKind::Value, "part " + std::to_string(k) + " does not live on open " + cover[k].name);
  PermFn::Values v;
  for (const auto& idx : base.box()) {
    Sieve s = base.level(idx);
    auto& objs = v[idx];
    objs.resize(base.model()->object_count());
    for (std::size_t o = 0; o < objs.size(); ++o)
      for (const auto& x : s.points(static_cast<int>(o))) {
        std::optional<std::pair<std::size_t, Integer>> seen;
        for (std::size_t k = 0; k < cover.size(); ++k) {
          if (!cover[k].points[o].count(x)) continue;
          Integer val = parts[k].at(idx, static_cast<int>(o), x);
          if (!seen) {
            seen = {k, val};
          } else if (seen->second != val) {
            fail(ErrorKind::Gluing, "parts on " + cover[seen->first].name + " and " + cover[k].name + " disagree at " +
                                        where(base, idx, static_cast<int>(o), x) + ": " + seen->second.get_str() + " vs " + val.get_str());
          }
        }
        if (!seen) fail(ErrorKind::Gluing, where(base, idx, static_cast<int>(o), x) + " is not covered");
        objs[o].push_back(seen->second);
      }
  }
  PermFn out(base, std::move(v));
  if (auto w = is_permissible(out)) fail(ErrorKind::Gluing, "glued function is not permissible: " + w->message);
  for (std::size_t k = 0; k < cover.size(); ++k)
    if (!(restrict(out, cover[k]) == parts[k])) fail(ErrorKind::Internal, "glued function does not restrict to part " + std::to_string(k));
  return out;
}

PermFn arc_fn(int m, const PermFn& f) {
  SimplicialFamily base = f.base().arc(m);
  const FatModel& model = *base.model();
  PermFn::Values v;
  for (const auto& [idx, objs] : f.values()) {
    auto& out = v[idx];
    for (std::size_t n = 0; n < model.object_count(); ++n) out.push_back(objs[static_cast<std::size_t>(model.tensor(m, static_cast<int>(n)))]);
  }
  return PermFn(base, std::move(v));
}

ColimitElem colimit_inject(const LimitChain& chain, std::size_t level, const PermFn& g) {
  chain.validate();
  if (level >= chain.chain.size()) fail(ErrorKind::Value, "chain level out of range");
  if (!(g.base() == chain.level(level))) fail(ErrorKind::Value, "function does not live on chain level " + std::to_string(level));
  return {level, g};
}

ColimitElem colimit_push(const LimitChain& chain, const ColimitElem& x) {
  std::size_t k = x.level;
  if (k + 1 >= chain.chain.size()) fail(ErrorKind::Value, "already at the top of the chain");
  SimplicialFamily up = chain.level(k + 1);
  const FatModel& m = *up.model();
  PermFn::Values v;
  for (const auto& idx : up.box()) {
    Sieve s = chain.base.level(idx);
    const auto& old = x.fn.values().at(idx);
    auto& out = v[idx];
    for (std::size_t n = 0; n < m.object_count(); ++n) {
      int h = chain.connecting(k, static_cast<int>(n));
      out.emplace_back();
      std::size_t count = s.points(m.morphism(h).to).size();
      for (std::size_t y = 0; y < count; ++y)
        out.back().push_back(old[n][static_cast<std::size_t>(s.pull(h, static_cast<int>(y)))]);
    }
  }
  return {k + 1, PermFn(up, std::move(v))};
}

bool colimit_eq(const LimitChain& chain, const ColimitElem& x, const ColimitElem& y) {
  ColimitElem a = x, b = y;
  while (a.level + 1 < chain.chain.size()) a = colimit_push(chain, a);
  while (b.level + 1 < chain.chain.size()) b = colimit_push(chain, b);
  return a.fn == b.fn;
}

} // namespace motint
