#include "motint/total_fn.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace motint {

using Index = SimplicialFamily::Index;

std::vector<std::string> index_names(std::size_t n) {
  static const char* base[] = {"i", "j", "k", "l"};
  std::vector<std::string> out;
  for (std::size_t c = 0; c < n; ++c) out.push_back(c < 4 ? base[c] : "i" + std::to_string(c));
  return out;
}

Integer TabularExponent::at(long i) const {
  if (i < static_cast<long>(table.size())) return table[static_cast<std::size_t>(i)];
  return tail.eval<Integer>(Integer(i));
}

namespace {

Affine constant_form(std::size_t n, long v) { return Affine(n, Rational(v)); }

// x_c == v, or x_c >= v when open.
void pin(Region& r, std::size_t c, long v, bool open) {
  Affine lo = Affine::var(r.nvars, c);
  lo.b = -v;
  r.ineqs.push_back(lo);
  if (!open) {
    Affine hi = Affine::var(r.nvars, c, -1);
    hi.b = v;
    r.ineqs.push_back(hi);
  }
}

Region level_class(const SimplicialFamily& fam, const Index& b) {
  Region r = Region::natural(fam.dim());
  for (std::size_t c = 0; c < fam.dim(); ++c) {
    bool at_edge = b[c] == fam.bound()[c];
    pin(r, c, b[c], at_edge && fam.tail()[c] == TailKind::Constant);
  }
  return r;
}

std::vector<std::pair<Index, Region>> cells_by_box(const SimplicialFamily& fam, const PointRef& p) {
  std::vector<std::pair<Index, Region>> out;
  for (const auto& b : fam.box())
    if (fam.level(b).contains(p.obj, p.point)) out.emplace_back(b, level_class(fam, b));
  return out;
}

bool selects(const Selector& s, const PointRef& p) { return !s || s->count(p) > 0; }

std::string selector_text(const FatModel& m, const Selector& s) {
  if (!s) return "all";
  std::string out = "{";
  bool first = true;
  for (const auto& p : *s) {
    out += (first ? "" : ", ") + m.object_name(p.obj) + ":" + p.point;
    first = false;
  }
  return out + "}";
}

std::string term_text(const TotalTerm& t, const std::vector<std::string>& names) {
  std::string s = "(" + t.coef.to_string() + ")";
  if (!(t.weight == MultiPoly(t.weight.nvars(), 1))) s += " * (" + t.weight.to_string(names) + ")";
  if (t.tabular) {
    s += " * L^tab(" + names[t.tabular->coord] + ": [";
    for (std::size_t k = 0; k < t.tabular->table.size(); ++k) s += (k ? "," : "") + t.tabular->table[k].get_str();
    s += "], " + t.tabular->tail.to_string(names[t.tabular->coord]) + ")";
  } else if (!(t.exponent.is_constant() && t.exponent.b == 0)) {
    s += " * L^(" + t.exponent.to_string(names) + ")";
  }
  return s;
}

std::string terms_text(const std::vector<TotalTerm>& terms, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t k = 0; k < terms.size(); ++k) s += (k ? " + " : "") + term_text(terms[k], names);
  return s.empty() ? "0" : s;
}

Integer exponent_at(const TotalTerm& t, const Index& idx) {
  if (t.tabular) return t.tabular->at(idx[t.tabular->coord]);
  Rational e = t.exponent.eval(idx);
  if (e.get_den() != 1) fail(ErrorKind::Internal, "exponent is not integral at " + index_to_string(idx));
  return e.get_num();
}

long to_long(const Integer& z) {
  if (!z.fits_slong_p()) fail(ErrorKind::Domain, "exponent out of range");
  return z.get_si();
}

// Top L-degree of the expansion of a nonzero element.
long top_degree(const QMotElem& a) {
  QMotElem c = a.canonical();
  long s = c.numerator().degree() - static_cast<long>(c.l_power());
  for (const auto& [i, e] : c.factors()) s -= static_cast<long>(i) * static_cast<long>(e);
  return s;
}

unsigned total_degree(const MultiPoly& w) {
  unsigned d = 0;
  for (const auto& [m, c] : w.terms()) d = std::max(d, std::accumulate(m.begin(), m.end(), 0u));
  return d;
}

std::vector<Affine> trailing_images(std::size_t n, std::size_t k, const Index& outer) {
  std::vector<Affine> images;
  for (std::size_t c = 0; c + k < n; ++c) images.push_back(constant_form(k, outer[c]));
  for (std::size_t c = 0; c < k; ++c) images.push_back(Affine::var(k, c));
  return images;
}

Rational ceil_rational(const Rational& r) { return Rational(ceil_div(r.get_num(), r.get_den())); }

// Smallest dyadic r found by bisection with r^a * q >= 1, r < 1.
Rational ratio_above(const Rational& q, long a) {
  Rational lo = 0, hi = 1;
  for (int step = 0; step < 30; ++step) {
    Rational mid = (lo + hi) / 2;
    if (rational_pow(mid, a) * q >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

Affine integral_form(const Affine& f) {
  Integer den = 1;
  for (const auto& c : f.a) den = den * c.get_den() / gcd(den, c.get_den());
  den = den * f.b.get_den() / gcd(den, f.b.get_den());
  return f * Rational(den);
}

// Regions whose union is the complement of r.
std::vector<Region> complement(const Region& r) {
  std::vector<Region> out;
  Region prefix;
  prefix.nvars = r.nvars;
  for (const auto& f : r.ineqs) {
    Region c = prefix;
    Affine g = integral_form(f) * Rational(-1);
    g.b -= 1;
    c.ineqs.push_back(g);
    out.push_back(c);
    prefix.ineqs.push_back(f);
  }
  for (const auto& cg : r.congs) {
    for (Integer res = 1; res < cg.modulus; ++res) {
      Region c = prefix;
      Affine g = cg.form;
      g.b -= Rational(res);
      c.congs.push_back({g, cg.modulus});
      out.push_back(c);
    }
    prefix.congs.push_back(cg);
  }
  return out;
}

std::optional<Index> find_point(const Region& r, long extent) {
  if (r.nvars > 3) return std::nullopt;
  Index x(r.nvars, 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t c) {
    if (c == r.nvars) return r.contains(x);
    for (long v = 0; v <= extent; ++v) {
      x[c] = v;
      if (rec(c + 1)) return true;
    }
    return false;
  };
  if (rec(0)) return x;
  return std::nullopt;
}

std::vector<Index> grid(const std::vector<long>& hi) {
  std::vector<Index> out{Index{}};
  for (long b : hi) {
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

// Presence of a point by level representative, cached.
class Presence {
public:
  Presence(const SimplicialFamily& fam, PointRef p) : fam_(fam), p_(std::move(p)) {}
  bool operator()(const Index& idx) {
    if (!fam_.covers(idx)) return false;
    auto rep = fam_.representative(idx);
    if (!rep) return false;
    auto it = cache_.find(*rep);
    if (it != cache_.end()) return it->second;
    bool v = fam_.level(*rep).contains(p_.obj, p_.point);
    cache_.emplace(*rep, v);
    return v;
  }

private:
  const SimplicialFamily& fam_;
  PointRef p_;
  std::map<Index, bool> cache_;
};

} // namespace

std::vector<Region> membership_cells(const SimplicialFamily& fam, const PointRef& p) {
  auto cells = cells_by_box(fam, p);
  if (cells.size() == fam.box().size()) {
    Region r = Region::natural(fam.dim());
    for (std::size_t c = 0; c < fam.dim(); ++c)
      if (fam.tail()[c] != TailKind::Constant) {
        Affine hi = Affine::var(fam.dim(), c, -1);
        hi.b = fam.bound()[c];
        r.ineqs.push_back(hi);
      }
    return {r};
  }
  std::vector<Region> out;
  for (auto& [b, r] : cells) out.push_back(std::move(r));
  return out;
}

TotalFn::TotalFn(SimplicialFamily base, std::vector<TotalPiece> pieces) : base_(std::move(base)) {
  const std::size_t n = base_.dim();
  for (auto& piece : pieces) {
    if (piece.region.nvars != n) fail(ErrorKind::Value, "piece region has the wrong number of indices");
    if (piece.sel)
      for (const auto& p : *piece.sel)
        if (p.obj < 0 || static_cast<std::size_t>(p.obj) >= base_.model()->object_count()) fail(ErrorKind::Value, "selector names an unknown object");
    std::vector<TotalTerm> kept;
    for (auto& t : piece.terms) {
      if (t.weight.nvars() != n || (!t.tabular && t.exponent.nvars() != n)) fail(ErrorKind::Value, "term has the wrong number of indices");
      if (!t.tabular || t.tabular->tail.degree() >= 2) {
        if (t.tabular && t.tabular->coord >= n) fail(ErrorKind::Value, "tabular exponent on a missing index");
        kept.push_back(std::move(t));
        continue;
      }
      // Table entries and an affine tail are ordinary pieces.
      const TabularExponent& tab = *t.tabular;
      if (tab.coord >= n) fail(ErrorKind::Value, "tabular exponent on a missing index");
      for (std::size_t v = 0; v < tab.table.size(); ++v) {
        TotalPiece q{piece.sel, piece.region, {}};
        pin(q.region, tab.coord, static_cast<long>(v), false);
        q.terms.push_back({t.coef, t.weight, Affine(n, Rational(tab.table[v])), std::nullopt});
        pieces_.push_back(std::move(q));
      }
      TotalPiece q{piece.sel, piece.region, {}};
      pin(q.region, tab.coord, static_cast<long>(tab.table.size()), true);
      Affine e = Affine::var(n, tab.coord, Rational(tab.tail.coeff(1)));
      e.b = Rational(tab.tail.coeff(0));
      q.terms.push_back({t.coef, t.weight, e, std::nullopt});
      pieces_.push_back(std::move(q));
    }
    piece.terms = std::move(kept);
    if (!piece.terms.empty()) pieces_.push_back(std::move(piece));
  }
}

TotalFn TotalFn::constant(const SimplicialFamily& base, const MotElem& c) {
  std::size_t n = base.dim();
  return TotalFn(base, {{std::nullopt, Region::natural(n), {{to_rational(c), MultiPoly(n, 1), Affine(n), std::nullopt}}}});
}

TotalFn TotalFn::exponential(const SimplicialFamily& base, const Region& region, const Affine& form) {
  std::size_t n = base.dim();
  return TotalFn(base, {{std::nullopt, region, {{QMotElem(Rational(1)), MultiPoly(n, 1), form, std::nullopt}}}});
}

namespace {

// One piece per (level class, value), shared across points with the same data.
TotalFn from_values(const SimplicialFamily& base, const std::function<Integer(const Index&, const PointRef&)>& value, bool as_exponent) {
  std::size_t n = base.dim();
  std::map<std::pair<std::string, std::string>, TotalPiece> grouped;
  auto names = index_names(n);
  TotalFn probe(base, {});
  for (const auto& p : probe.all_points()) {
    auto cells = cells_by_box(base, p);
    std::vector<std::pair<Region, Integer>> parts;
    std::set<Integer> distinct;
    for (const auto& [b, r] : cells) distinct.insert(value(b, p));
    if (cells.size() == base.box().size() && distinct.size() == 1)
      parts.emplace_back(membership_cells(base, p).front(), *distinct.begin());
    else
      for (const auto& [b, r] : cells) parts.emplace_back(r, value(b, p));
    for (auto& [r, v] : parts) {
      if (!as_exponent && v == 0) continue;
      TotalTerm t{QMotElem(Rational(1)), MultiPoly(n, 1), Affine(n), std::nullopt};
      if (as_exponent)
        t.exponent = Affine(n, Rational(v));
      else
        t.weight = MultiPoly(n, Rational(v));
      auto key = std::make_pair(r.to_string(names), term_text(t, names));
      auto it = grouped.find(key);
      if (it == grouped.end()) it = grouped.emplace(key, TotalPiece{std::set<PointRef>{}, r, {t}}).first;
      it->second.sel->insert(p);
    }
  }
  std::vector<TotalPiece> pieces;
  for (auto& [k, piece] : grouped) pieces.push_back(std::move(piece));
  return TotalFn(base, std::move(pieces));
}

} // namespace

TotalFn TotalFn::from_groth(const GrothElem& g) {
  return from_values(g.pos.base(), [&](const Index& b, const PointRef& p) { return g.at(b, p.obj, p.point); }, false);
}

TotalFn TotalFn::exponential(const PermFn& alpha) {
  return from_values(alpha.base(), [&](const Index& b, const PointRef& p) { return alpha.at(b, p.obj, p.point); }, true);
}

bool TotalFn::present(const PointRef& p, const Index& idx) const {
  if (!base_.covers(idx)) return false;
  return base_.level(idx).contains(p.obj, p.point);
}

MotElem TotalFn::at(const PointRef& p, const Index& idx) const {
  if (!present(p, idx))
    fail(ErrorKind::Domain, "point " + p.point + " of " + base_.model()->object_name(p.obj) + " is not in the base at " + index_to_string(idx));
  QMotElem total;
  for (const auto& piece : pieces_) {
    if (!selects(piece.sel, p) || !piece.region.contains(idx)) continue;
    for (const auto& t : piece.terms)
      total += t.coef * QMotElem(t.weight.eval(idx)) * QMotElem::l_pow(to_long(exponent_at(t, idx)));
  }
  return to_integral(total.canonical());
}

Rational TotalFn::eval(const PointRef& p, const Index& idx, const EvalPoint& q) const {
  if (!present(p, idx))
    fail(ErrorKind::Domain, "point " + p.point + " of " + base_.model()->object_name(p.obj) + " is not in the base at " + index_to_string(idx));
  Rational total = 0;
  for (const auto& piece : pieces_) {
    if (!selects(piece.sel, p) || !piece.region.contains(idx)) continue;
    for (const auto& t : piece.terms) total += t.coef.eval(q) * t.weight.eval(idx) * rational_pow(q.q(), to_long(exponent_at(t, idx)));
  }
  return total;
}

bool TotalFn::is_presburger() const {
  for (const auto& piece : pieces_)
    for (const auto& t : piece.terms)
      if (t.tabular) return false;
  return true;
}

std::vector<PointRef> TotalFn::all_points() const {
  std::vector<PointRef> out;
  OpenSet whole = OpenSet::whole(base_);
  for (std::size_t o = 0; o < whole.points.size(); ++o)
    for (const auto& x : whole.points[o]) out.push_back({static_cast<int>(o), x});
  return out;
}

std::string TotalFn::to_string() const {
  std::ostringstream os;
  auto names = index_names(dim());
  if (pieces_.empty()) return "0\n";
  for (const auto& piece : pieces_) {
    os << selector_text(*base_.model(), piece.sel);
    std::string where = piece.region.to_string(names);
    if (dim() > 0) os << " where " << where;
    os << ": " << terms_text(piece.terms, names) << "\n";
  }
  return os.str();
}

TotalFn total_add(const TotalFn& f, const TotalFn& g) {
  if (!(f.base() == g.base())) fail(ErrorKind::Value, "total functions live on different bases");
  std::vector<TotalPiece> pieces = f.pieces();
  pieces.insert(pieces.end(), g.pieces().begin(), g.pieces().end());
  return TotalFn(f.base(), std::move(pieces));
}

TotalFn total_mul(const TotalFn& f, const TotalFn& g) {
  if (!(f.base() == g.base())) fail(ErrorKind::Value, "total functions live on different bases");
  std::vector<TotalPiece> pieces;
  for (const auto& a : f.pieces())
    for (const auto& b : g.pieces()) {
      Selector sel;
      if (a.sel && b.sel) {
        sel.emplace();
        std::set_intersection(a.sel->begin(), a.sel->end(), b.sel->begin(), b.sel->end(), std::inserter(*sel, sel->begin()));
        if (sel->empty()) continue;
      } else {
        sel = a.sel ? a.sel : b.sel;
      }
      TotalPiece piece{sel, a.region.intersect(b.region), {}};
      for (const auto& s : a.terms)
        for (const auto& t : b.terms) {
          TotalTerm u{s.coef * t.coef, s.weight * t.weight, s.exponent + t.exponent, std::nullopt};
          if (s.tabular && t.tabular) fail(ErrorKind::DecompositionUnsupported, "product of two tabular exponents");
          if (s.tabular || t.tabular) {
            const TotalTerm& tab = s.tabular ? s : t;
            const TotalTerm& other = s.tabular ? t : s;
            if (!other.exponent.is_constant() || other.exponent.b.get_den() != 1)
              fail(ErrorKind::DecompositionUnsupported, "product of a tabular exponent with a varying one");
            Integer shift = other.exponent.b.get_num();
            TabularExponent e = *tab.tabular;
            for (auto& v : e.table) v += shift;
            e.tail += IntPoly(shift);
            u.tabular = e;
            u.exponent = Affine(f.dim());
          }
          piece.terms.push_back(std::move(u));
        }
      pieces.push_back(std::move(piece));
    }
  return TotalFn(f.base(), std::move(pieces));
}

TotalFn total_scale(const TotalFn& f, const MotElem& c) {
  std::vector<TotalPiece> pieces = f.pieces();
  QMotElem qc = to_rational(c);
  for (auto& piece : pieces)
    for (auto& t : piece.terms) t.coef = t.coef * qc;
  return TotalFn(f.base(), std::move(pieces));
}

bool total_equal(const TotalFn& f, const TotalFn& g, long margin) {
  if (!same_levels(f.base(), g.base())) return false;
  std::vector<long> hi;
  for (long b : f.base().bound()) hi.push_back(b + margin);
  auto points = f.all_points();
  for (const auto& idx : grid(hi)) {
    if (!f.base().covers(idx)) continue;
    Sieve s = f.base().level(idx);
    for (const auto& p : points)
      if (s.contains(p.obj, p.point) && !eq(f.at(p, idx), g.at(p, idx))) return false;
  }
  return true;
}

TotalPositivity is_total_positive(const TotalFn& f) {
  TotalPositivity out;
  const std::size_t n = f.dim();
  const FatModel& m = *f.base().model();
  std::map<std::string, Positivity> memo;
  auto check_value = [&](const PointRef& p, const Index& idx) {
    MotElem v = f.at(p, idx);
    std::string key = v.serialize();
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, is_nonneg(v)).first;
    if (!it->second.nonneg && out.nonneg) {
      out.nonneg = false;
      out.detail = "value " + v.to_string() + " at " + m.object_name(p.obj) + ":" + p.point + (n ? " " + index_to_string(idx) : "") +
                   " is negative at q = " + motint::to_string(*it->second.witness);
    }
    return it->second.nonneg;
  };

  std::vector<long> sample_hi;
  for (long b : f.base().bound()) sample_hi.push_back(b + 8);

  for (const auto& p : f.all_points()) {
    for (const auto& cell : membership_cells(f.base(), p)) {
      std::vector<const TotalPiece*> live;
      std::vector<Region> regions;
      for (const auto& piece : f.pieces()) {
        if (!selects(piece.sel, p)) continue;
        Region r = piece.region.intersect(cell);
        if (r.is_empty()) continue;
        live.push_back(&piece);
        regions.push_back(std::move(r));
      }
      if (live.empty()) continue;
      std::vector<std::size_t> all(n);
      std::iota(all.begin(), all.end(), 0);
      bool bounded = true;
      for (const auto& r : regions)
        if (!recession_rays(r, all).empty()) bounded = false;

      if (bounded) {
        std::vector<long> hi(n, 0);
        for (const auto& r : regions)
          for (const auto& v : vertices(r))
            for (std::size_t c = 0; c < n; ++c) hi[c] = std::max(hi[c], ceil_rational(v[c]).get_num().get_si());
        for (const auto& idx : grid(hi))
          if (cell.contains(idx) && !check_value(p, idx)) return out;
        continue;
      }

      // Shared exponent and constant weights: each piece contributes a fixed
      // coefficient, so nonnegative piece sums settle every point.
      bool uniform = true;
      std::optional<Affine> shared;
      std::vector<QMotElem> sums;
      for (const auto* piece : live) {
        QMotElem s;
        for (const auto& t : piece->terms) {
          if (t.tabular || !t.weight.is_constant() || (shared && !(t.exponent == *shared))) uniform = false;
          shared = t.exponent;
          s += t.coef * QMotElem(t.weight.constant_value());
        }
        sums.push_back(s);
      }
      if (uniform) {
        bool all_nonneg = true;
        for (const auto& s : sums)
          if (!is_nonneg(s).nonneg) all_nonneg = false;
        if (all_nonneg) continue;
        if (live.size() == 1) {
          auto pos = is_nonneg(sums[0]);
          out.nonneg = false;
          out.detail = "coefficient " + sums[0].to_string() + " at " + m.object_name(p.obj) + ":" + p.point + " is negative at q = " +
                       motint::to_string(*pos.witness);
          return out;
        }
      }
      out.certified = false;
      for (const auto& idx : grid(sample_hi))
        if (cell.contains(idx) && !check_value(p, idx)) return out;
    }
  }
  if (!out.certified) out.detail = "unbounded classes checked on samples only";
  return out;
}

TotalFn tau_total(const TotalFn& f, const Index& sigma) {
  SimplicialFamily base = f.base().tau(sigma);
  const std::size_t n = f.dim(), d = base.dim();
  std::vector<Affine> images;
  for (std::size_t c = 0; c < d; ++c) images.push_back(Affine::var(d, c));
  for (long v : sigma) images.push_back(constant_form(d, v));
  std::vector<TotalPiece> pieces;
  for (const auto& piece : f.pieces()) {
    TotalPiece q{piece.sel, piece.region.substitute(images, d), {}};
    if (q.region.is_empty()) continue;
    for (const auto& t : piece.terms) {
      TotalTerm u{t.coef, t.weight.substitute(images, d), Affine(d), t.tabular};
      if (t.tabular) {
        if (t.tabular->coord >= d) {
          u.exponent = Affine(d, Rational(t.tabular->at(sigma[t.tabular->coord - d])));
          u.tabular.reset();
        }
      } else {
        u.exponent = t.exponent.substitute(images);
      }
      q.terms.push_back(std::move(u));
    }
    pieces.push_back(std::move(q));
  }
  (void)n;
  return TotalFn(base, std::move(pieces));
}

SummabilityCertificate is_summable(const TotalFn& f, std::size_t k) {
  const std::size_t n = f.dim();
  if (k > n) fail(ErrorKind::Value, "cannot sum over more indices than the family has");
  auto names = index_names(n);
  for (std::size_t c = n - k; c < n; ++c)
    if (f.base().tail()[c] == TailKind::None) fail(ErrorKind::Domain, "index " + names[c] + " has no tail beyond its listed levels");
  std::vector<std::size_t> summed;
  std::vector<std::string> summed_names;
  for (std::size_t c = n - k; c < n; ++c) {
    summed.push_back(c);
    summed_names.push_back(names[c]);
  }

  SummabilityCertificate cert;
  std::set<std::string> seen;
  for (std::size_t pi = 0; pi < f.pieces().size(); ++pi) {
    const TotalPiece& piece = f.pieces()[pi];
    for (const auto& p : f.all_points()) {
      if (!selects(piece.sel, p)) continue;
      for (const auto& cell : membership_cells(f.base(), p)) {
        Region r = piece.region.intersect(cell);
        std::string key = std::to_string(pi) + "|" + r.to_string(names);
        if (!seen.insert(key).second) continue;
        if (r.is_empty()) continue;
        auto rays = recession_rays(r, summed);
        std::vector<std::string> dirs;
        for (const auto& ray : rays) {
          std::string dir = direction_name(ray, summed_names);
          dirs.push_back(dir);
          for (const auto& t : piece.terms) {
            if (t.coef.is_zero() || t.weight.is_zero()) continue;
            std::string slope_text;
            int sign;
            if (t.tabular) {
              std::size_t pos = std::find(summed.begin(), summed.end(), t.tabular->coord) - summed.begin();
              bool moves = pos < summed.size() && ray[pos] != 0;
              sign = moves ? (t.tabular->tail.lead() < 0 ? -1 : 1) : 0;
              slope_text = sign == 0 ? "0" : (sign < 0 ? "-inf" : "+inf");
            } else {
              Rational slope = 0;
              for (std::size_t s = 0; s < summed.size(); ++s) slope += t.exponent.a[summed[s]] * Rational(ray[s]);
              sign = sgn(slope);
              slope_text = motint::to_string(slope);
            }
            if (sign >= 0 && cert.summable) {
              cert.summable = false;
              cert.reason = "unbounded direction " + dir + " with exponent coefficient " + slope_text;
            }
            std::vector<Affine> shift;
            for (std::size_t c = 0; c < n; ++c) shift.push_back(Affine::var(n + 1, c));
            for (std::size_t s = 0; s < summed.size(); ++s) shift[summed[s]].a[n] = Rational(ray[s]);
            if (t.weight.substitute(shift, n + 1).degree_in(n) > 0 && cert.summable) {
              cert.summable = false;
              cert.reason = "factor unbounded along direction " + dir;
            }
          }
        }
        std::string v = "piece " + std::to_string(pi) + " on " + r.to_string(names) + ": ";
        v += dirs.empty() ? "bounded" : "directions " + [&] {
          std::string s;
          for (std::size_t d = 0; d < dirs.size(); ++d) s += (d ? ", " : "") + dirs[d];
          return s;
        }();
        cert.verdicts.push_back(v);
      }
    }
  }
  return cert;
}

namespace {

SimplicialFamily union_base(const SimplicialFamily& fam, std::size_t k) {
  const std::size_t d = fam.dim() - k;
  std::vector<long> bound(fam.bound().begin(), fam.bound().begin() + static_cast<long>(d));
  std::vector<TailKind> tail(fam.tail().begin(), fam.tail().begin() + static_cast<long>(d));
  std::vector<long> trailing(fam.bound().begin() + static_cast<long>(d), fam.bound().end());
  std::map<Index, Sieve> levels;
  for (const auto& b : grid(bound)) {
    Sieve acc(fam.model());
    for (const auto& t : grid(trailing)) {
      Index full = b;
      full.insert(full.end(), t.begin(), t.end());
      acc = set_op(acc, fam.level(full), SetOp::Union);
    }
    levels.emplace(b, acc);
  }
  return SimplicialFamily(fam.model(), bound, tail, std::move(levels));
}

std::vector<SumTerm> sum_terms(const std::vector<TotalTerm>& terms) {
  std::vector<SumTerm> out;
  for (const auto& t : terms)
    if (!t.tabular) out.push_back({t.coef, t.weight, t.exponent});
  return out;
}

} // namespace

SummationResult integrate(const TotalFn& f, std::size_t k) {
  SummabilityCertificate cert = is_summable(f, k);
  if (!cert.summable) fail(ErrorKind::NotSummable, cert.reason);
  if (!f.is_presburger()) fail(ErrorKind::DecompositionUnsupported, "tabular exponent is not piecewise affine; use weak integration");
  const std::size_t n = f.dim(), d = n - k;
  if (k == 0) return {f, cert};
  SimplicialFamily base = union_base(f.base(), k);
  auto names = index_names(d);
  auto full_names = index_names(n);

  std::map<std::string, ClosedForm> memo;
  std::map<std::pair<std::string, std::string>, TotalPiece> grouped;
  for (const auto& p : f.all_points()) {
    for (const auto& piece : f.pieces()) {
      if (!selects(piece.sel, p)) continue;
      for (const auto& cell : membership_cells(f.base(), p)) {
        SumCell sc{piece.region.intersect(cell), sum_terms(piece.terms)};
        std::string key = sc.region.to_string(full_names) + "|" + terms_text(piece.terms, full_names);
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, sum_over_trailing({sc}, d)).first;
        for (const auto& c : it->second.cells) {
          TotalPiece out{std::set<PointRef>{}, c.region, {}};
          for (const auto& t : c.terms) out.terms.push_back({t.coef, t.weight, t.exponent, std::nullopt});
          auto gkey = std::make_pair(c.region.to_string(names), terms_text(out.terms, names));
          auto git = grouped.find(gkey);
          if (git == grouped.end()) git = grouped.emplace(gkey, std::move(out)).first;
          git->second.sel->insert(p);
        }
      }
    }
  }
  std::vector<TotalPiece> pieces;
  for (auto& [key, piece] : grouped) pieces.push_back(std::move(piece));
  return {TotalFn(base, std::move(pieces)), cert};
}

Rational partial_sum(const TotalFn& f, std::size_t k, const PointRef& p, const Index& outer, const EvalPoint& q, long T) {
  const std::size_t n = f.dim();
  if (k > n || outer.size() != n - k) fail(ErrorKind::Value, "outer index has the wrong length");
  Presence present(f.base(), p);
  struct Live {
    const TotalPiece* piece;
    std::vector<Rational> coef;
  };
  std::vector<Live> live;
  for (const auto& piece : f.pieces()) {
    if (!selects(piece.sel, p)) continue;
    Live l{&piece, {}};
    for (const auto& t : piece.terms) l.coef.push_back(t.coef.eval(q));
    live.push_back(std::move(l));
  }
  std::map<long, Rational> powers;
  auto power = [&](long e) -> const Rational& {
    auto it = powers.find(e);
    if (it == powers.end()) it = powers.emplace(e, rational_pow(q.q(), e)).first;
    return it->second;
  };
  Rational total = 0;
  for (const auto& t : grid(std::vector<long>(k, T - 1))) {
    if (T <= 0) break;
    Index idx = outer;
    idx.insert(idx.end(), t.begin(), t.end());
    if (!present(idx)) continue;
    for (const auto& l : live) {
      if (!l.piece->region.contains(idx)) continue;
      for (std::size_t s = 0; s < l.piece->terms.size(); ++s) {
        const TotalTerm& term = l.piece->terms[s];
        total += l.coef[s] * term.weight.eval(idx) * power(to_long(exponent_at(term, idx)));
      }
    }
  }
  return total;
}

Rational truncation_bound(const TotalFn& f, std::size_t k, const PointRef& p, const Index& outer, const EvalPoint& q, long T) {
  const std::size_t n = f.dim();
  if (k > n || outer.size() != n - k) fail(ErrorKind::Value, "outer index has the wrong length");
  if (k == 0) return 0;
  auto images = trailing_images(n, k, outer);
  std::vector<std::size_t> all(k);
  std::iota(all.begin(), all.end(), 0);
  Rational bound = 0;
  Rational box = Rational(binomial(T + static_cast<long>(k) - 1, static_cast<long>(k) - 1));
  for (const auto& piece : f.pieces()) {
    if (!selects(piece.sel, p)) continue;
    for (const auto& cell : membership_cells(f.base(), p)) {
      Region r = piece.region.intersect(cell).substitute(images, k);
      if (r.is_empty()) continue;
      auto rays = recession_rays(r, all);
      auto verts = vertices(r);
      Rational reach = 0;
      for (const auto& v : verts)
        for (const auto& c : v) reach = std::max(reach, c);
      if (rays.empty() && reach < T) continue;
      for (const auto& t : piece.terms) {
        if (t.tabular) fail(ErrorKind::DecompositionUnsupported, "truncation bound needs affine exponents");
        if (t.coef.is_zero() || t.weight.is_zero()) continue;
        Affine e = t.exponent.substitute(images);
        MultiPoly w = t.weight.substitute(images, k);
        long alpha = 1;
        for (const auto& ray : rays) {
          Rational slope = 0, len = 0;
          for (std::size_t c = 0; c < k; ++c) {
            slope += e.a[c] * Rational(ray[c]);
            len += Rational(abs(Rational(ray[c])));
          }
          if (slope >= 0) fail(ErrorKind::NotSummable, "truncation bound on a divergent sum");
          alpha = std::max(alpha, ceil_rational(len / -slope).get_num().get_si());
        }
        std::optional<Rational> beta;
        for (const auto& v : verts) {
          Rational s = e.eval(v);
          for (const auto& c : v) s += c / Rational(alpha);
          beta = beta ? std::max(*beta, s) : s;
        }
        Rational ratio = ratio_above(q.q(), alpha);
        if (ratio >= 1) fail(ErrorKind::Domain, "evaluation point too close to 1 for a truncation bound");
        Rational weight = w.l1_norm() * rational_pow(std::max(Rational(1), ceil_rational(reach)), static_cast<long>(total_degree(w)));
        Rational qb = rational_pow(q.q(), ceil_rational(*beta).get_num().get_si());
        bound += abs(t.coef.eval(q)) * weight * qb * box * rational_pow(ratio, T) / rational_pow(1 - ratio, static_cast<long>(k));
      }
    }
  }
  return bound;
}

Rational WeakValue::bound(const Rational& q) const {
  Rational b = expansion_tail.at(q);
  EvalPoint p(q);
  for (const auto& r : rest) b += abs(r.coef.eval(p)) * r.weight * rational_pow(q, r.exponent) / (1 - 1 / q);
  return b;
}

WeakResult weak_integrate(const TotalFn& f, std::size_t k, long precision) {
  if (precision < 0) fail(ErrorKind::Value, "precision must be a natural number");
  WeakResult out;
  if (f.is_presburger()) {
    out.exact = integrate(f, k);
    const TotalFn& v = out.exact->value;
    if (v.dim() == 0)
      for (const auto& p : v.all_points()) {
        auto e = expand(v.at(p, {}), precision);
        out.values.push_back({p, e.series, e.tail, {}});
      }
    return out;
  }
  out.presburger = false;
  if (f.dim() != 1 || k != 1) fail(ErrorKind::DecompositionUnsupported, "tabular exponents are summed only over a single index");
  SummabilityCertificate cert = is_summable(f, k);
  if (!cert.summable) fail(ErrorKind::NotSummable, cert.reason);

  for (const auto& p : f.all_points()) {
    QMotElem exact;
    WeakValue wv{p, {}, {}, {}};
    for (const auto& piece : f.pieces()) {
      if (!selects(piece.sel, p)) continue;
      for (const auto& cell : membership_cells(f.base(), p)) {
        Region r = piece.region.intersect(cell);
        if (r.is_empty()) continue;
        auto affine = sum_terms(piece.terms);
        if (!affine.empty()) exact += closed_value(sum_over_trailing({SumCell{r, affine}}, 0));
        for (const auto& t : piece.terms) {
          if (!t.tabular || t.coef.is_zero() || t.weight.is_zero()) continue;
          if (!t.weight.is_constant()) fail(ErrorKind::Value, "tabular exponents need a constant factor");
          const TabularExponent& tab = *t.tabular;
          QMotElem c = t.coef * QMotElem(t.weight.constant_value());
          long top = top_degree(c);
          // Past v1 the tail drops by at least one per step and every term
          // lies below the precision.
          IntPoly shifted;
          for (long j = tab.tail.degree(); j >= 0; --j) shifted = shifted * IntPoly(std::vector<Integer>{Integer(1), Integer(1)}) + IntPoly(tab.tail.coeff(static_cast<std::size_t>(j)));
          IntPoly diff = shifted - tab.tail + IntPoly(Integer(1));
          Rational cauchy = 0;
          for (long j = 0; j < diff.degree(); ++j) cauchy = std::max(cauchy, Rational(abs(Rational(diff.coeff(static_cast<std::size_t>(j)))) / abs(Rational(diff.lead()))));
          long v1 = std::max(static_cast<long>(tab.table.size()), ceil_rational(cauchy + 1).get_num().get_si());
          while (to_long(tab.at(v1)) + top >= -precision) ++v1;
          for (long i = 0; i < v1; ++i)
            if (r.contains({i})) exact += c * QMotElem::l_pow(to_long(tab.at(i)));
          wv.rest.push_back({t.coef, abs(t.weight.constant_value()), to_long(tab.at(v1))});
        }
      }
    }
    auto e = expand(to_integral(exact.canonical()), precision);
    wv.series = e.series;
    wv.expansion_tail = e.tail;
    out.values.push_back(std::move(wv));
  }
  return out;
}

TotalFn arc_total(int m, const TotalFn& f) {
  SimplicialFamily base = f.base().arc(m);
  const FatModel& model = *base.model();
  std::vector<TotalPiece> pieces;
  for (const auto& piece : f.pieces()) {
    TotalPiece q = piece;
    if (piece.sel) {
      q.sel.emplace();
      for (const auto& p : *piece.sel)
        for (std::size_t n = 0; n < model.object_count(); ++n)
          if (model.tensor(m, static_cast<int>(n)) == p.obj) q.sel->insert({static_cast<int>(n), p.point});
      if (q.sel->empty()) continue;
    }
    pieces.push_back(std::move(q));
  }
  return TotalFn(base, std::move(pieces));
}

std::optional<Witness> check_exponent_partition(const std::vector<Region>& pieces, std::size_t n) {
  auto names = index_names(n);
  auto at = [&](const Region& r) {
    auto x = find_point(r, 24);
    return x ? " at " + index_to_string(*x) : std::string();
  };
  for (std::size_t a = 0; a < pieces.size(); ++a)
    for (std::size_t b = a + 1; b < pieces.size(); ++b) {
      Region both = pieces[a].intersect(pieces[b]).intersect(Region::natural(n));
      if (!both.is_empty())
        return Witness{"exponent pieces " + std::to_string(a) + " and " + std::to_string(b) + " overlap" + at(both)};
    }
  std::function<std::optional<Region>(const Region&, std::size_t)> uncovered = [&](const Region& r, std::size_t t) -> std::optional<Region> {
    if (r.is_empty()) return std::nullopt;
    if (t == pieces.size()) return r;
    for (const auto& c : complement(pieces[t]))
      if (auto hole = uncovered(r.intersect(c), t + 1)) return hole;
    return std::nullopt;
  };
  if (auto hole = uncovered(Region::natural(n), 0)) return Witness{"exponent pieces do not cover every index" + at(*hole)};
  return std::nullopt;
}

} // namespace motint
