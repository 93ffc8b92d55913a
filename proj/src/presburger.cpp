#include "motint/presburger.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace motint {

namespace {

constexpr std::size_t kMaxResidueCells = 200000;
constexpr std::size_t kMaxCells = 200000;

Integer lcm_int(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Integer gcd_int(const Integer& a, const Integer& b) {
  Integer out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Integer ceil_rat(const Rational& r) { return ceil_div(r.get_num(), r.get_den()); }
Integer floor_rat(const Rational& r) { return floor_div(r.get_num(), r.get_den()); }

std::string term_text(const Rational& c, const std::string& name, bool first) {
  bool neg = c < 0;
  Rational mag = abs(c);
  std::string out = first ? (neg ? "-" : "") : (neg ? " - " : " + ");
  if (name.empty()) return out + to_string(mag);
  if (mag != 1) out += to_string(mag) + "*";
  return out + name;
}

// Scales to integer coefficients and divides by the gcd of the variable
// coefficients, rounding the constant down. The integer solution set is
// unchanged.
Affine normalize_ineq(const Affine& f) {
  Integer den = f.b.get_den();
  for (const auto& c : f.a) den = lcm_int(den, c.get_den());
  Affine g = f * Rational(den);
  Integer gg = 0;
  for (const auto& c : g.a) gg = gcd_int(gg, c.get_num());
  if (gg > 1) {
    for (auto& c : g.a) c /= Rational(gg);
    g.b = Rational(floor_div(g.b.get_num(), gg));
  }
  return g;
}

// -1: constant and false, 1: constant and true, 0: not constant.
int constant_truth(const Affine& f) {
  if (!f.is_constant()) return 0;
  return f.b >= 0 ? 1 : -1;
}

std::vector<Affine> identity_images(std::size_t n) {
  std::vector<Affine> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(Affine::var(n, k));
  return out;
}

Affine drop_last(const Affine& f) {
  Affine g = f;
  g.a.pop_back();
  return g;
}

// Stirling numbers of the second kind times k!, i.e. the number of
// surjections from a p-set onto a k-set.
Integer surjections(unsigned p, unsigned k) {
  Integer s = 0;
  for (unsigned i = 0; i <= k; ++i) {
    Integer term = binomial(k, i) * integer_pow(Integer(k - i), p);
    s += (i % 2 == 0) ? term : Integer(-term);
  }
  return s;
}

struct Frame {
  Integer r = 0;
  Integer a = 1;
};

struct WorkCell {
  Region region;
  std::vector<SumTerm> terms;
  std::vector<Frame> frames; // one per outer variable
};

// x_v -> rho + A * x_v for each v in `vars`.
WorkCell substitute_residue(const WorkCell& c, const std::vector<std::size_t>& vars, const std::vector<Integer>& rho,
                            const Integer& modulus, std::size_t outer) {
  std::size_t n = c.region.nvars;
  auto images = identity_images(n);
  for (std::size_t t = 0; t < vars.size(); ++t) {
    images[vars[t]] = Affine::var(n, vars[t], Rational(modulus));
    images[vars[t]].b = Rational(rho[t]);
  }
  WorkCell out;
  out.region = c.region.substitute(images, n);
  for (const auto& t : c.terms) out.terms.push_back({t.coef, t.weight.substitute(images, n), t.exponent.substitute(images)});
  out.frames = c.frames;
  for (std::size_t t = 0; t < vars.size(); ++t) {
    if (vars[t] >= outer) continue;
    Frame& f = out.frames[vars[t]];
    f.r += f.a * rho[t];
    f.a *= modulus;
  }
  return out;
}

// Enumerates residue vectors in [0, modulus)^count.
template <class F>
void for_each_residue(std::size_t count, const Integer& modulus, F&& f) {
  if (!modulus.fits_ulong_p()) fail(ErrorKind::DecompositionUnsupported, "modulus too large for residue splitting");
  unsigned long m = modulus.get_ui();
  double total = 1;
  for (std::size_t k = 0; k < count; ++k) total *= static_cast<double>(m);
  if (total > static_cast<double>(kMaxResidueCells))
    fail(ErrorKind::DecompositionUnsupported, "residue splitting needs " + std::to_string(static_cast<long long>(total)) +
                                                  " classes, more than the supported " + std::to_string(kMaxResidueCells));
  std::vector<Integer> rho(count, Integer(0));
  while (true) {
    f(rho);
    std::size_t k = 0;
    while (k < count) {
      rho[k] += 1;
      if (rho[k] < modulus) break;
      rho[k] = 0;
      ++k;
    }
    if (k == count) break;
  }
}

// Replaces every congruence by residue substitutions.
std::vector<WorkCell> drop_congruences(WorkCell cell, std::size_t outer) {
  std::vector<WorkCell> done, pending{std::move(cell)};
  while (!pending.empty()) {
    WorkCell c = std::move(pending.back());
    pending.pop_back();
    if (c.region.congs.empty()) {
      done.push_back(std::move(c));
      continue;
    }
    Congruence cg = c.region.congs.back();
    c.region.congs.pop_back();
    const Integer& m = cg.modulus;
    if (m <= 0) fail(ErrorKind::Value, "congruence modulus must be positive");
    if (!cg.form.has_integer_coeffs() || cg.form.b.get_den() != 1)
      fail(ErrorKind::Internal, "congruence with non-integral coefficients");
    // Centered residues of the coefficients; the congruence is unchanged.
    for (auto& c : cg.form.a) {
      Integer r;
      mpz_mod(r.get_mpz_t(), c.get_num_mpz_t(), m.get_mpz_t());
      if (2 * r > m) r -= m;
      c = Rational(r);
    }
    std::vector<std::size_t> vars;
    std::optional<std::size_t> unit;
    for (std::size_t k = 0; k < cg.form.nvars(); ++k) {
      if (cg.form.a[k] == 0) continue;
      vars.push_back(k);
      if (k >= outer && abs(cg.form.a[k]) == 1 && !unit) unit = k;
    }
    if (unit) {
      // s*x + rest == 0 mod m  <=>  x = m*z - s*rest, with z taking the slot
      // of x. The positive coefficient keeps lower bounds on x lower bounds on z.
      std::size_t v = *unit;
      Rational sgn_v = cg.form.a[v];
      Affine image = cg.form * (-sgn_v);
      image.a[v] = Rational(m);
      auto images = identity_images(c.region.nvars);
      images[v] = image;
      WorkCell next;
      next.region = c.region.substitute(images, c.region.nvars);
      for (const auto& t : c.terms)
        next.terms.push_back({t.coef, t.weight.substitute(images, c.region.nvars), t.exponent.substitute(images)});
      next.frames = c.frames;
      pending.push_back(std::move(next));
      continue;
    }
    if (vars.empty()) {
      Integer r;
      mpz_mod(r.get_mpz_t(), cg.form.b.get_num_mpz_t(), m.get_mpz_t());
      if (r == 0) pending.push_back(std::move(c));
      continue;
    }
    for_each_residue(vars.size(), m, [&](const std::vector<Integer>& rho) {
      Integer v = cg.form.b.get_num();
      for (std::size_t t = 0; t < vars.size(); ++t) v += cg.form.a[vars[t]].get_num() * rho[t];
      Integer r;
      mpz_mod(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
      if (r == 0) pending.push_back(substitute_residue(c, vars, rho, m, outer));
    });
  }
  return done;
}

// Integral lower/upper bound for the last variable from one inequality
// a*j + rest >= 0 whose other coefficients are multiples of |a|.
Affine bound_from(const Affine& f, std::size_t j) {
  Rational a = f.a[j];
  Affine rest = f;
  rest.a[j] = 0;
  Rational b = rest.b;
  rest.b = 0;
  if (a > 0) {
    Affine l = rest * Rational(-1, 1) * (1 / a);
    l.b = Rational(ceil_rat(-b / a));
    return l;
  }
  Rational ap = -a;
  Affine u = rest * (1 / ap);
  u.b = Rational(floor_rat(b / ap));
  return u;
}

// Keeps the tighter of two bounds whose difference is constant.
std::vector<Affine> prune_bounds(const std::vector<Affine>& bounds, bool lower) {
  std::vector<Affine> out;
  for (const auto& b : bounds) {
    bool dominated = false;
    for (auto& o : out) {
      Affine d = b - o;
      if (!d.is_constant()) continue;
      bool b_better = lower ? d.b > 0 : d.b < 0;
      if (b_better) o = b;
      dominated = true;
      break;
    }
    if (!dominated) out.push_back(b);
  }
  return out;
}

// Terms of sum_{t=0}^{N-1} C(t, k) L^{c t} (N absent: infinite sum), each as
// (coefficient, weight, exponent) over the variables of N.
std::vector<SumTerm> geometric_binomial(long c, unsigned k, const std::optional<Affine>& count, std::size_t n) {
  std::vector<SumTerm> out;
  if (!count) {
    if (c >= 0) fail(ErrorKind::NotSummable, "infinite sum with non-negative exponent slope");
    QMotElem g = QMotElem::l_pow(c * static_cast<long>(k)) * QMotElem::inv_one_minus_l_pow(c).pow(k + 1);
    out.push_back({g, MultiPoly(n, 1), Affine(n)});
    return out;
  }
  if (c == 0) {
    out.push_back({QMotElem(Rational(1)), binomial_poly(*count, k + 1), Affine(n)});
    return out;
  }
  QMotElem inv = QMotElem::inv_one_minus_l_pow(c);
  out.push_back({QMotElem::l_pow(c * static_cast<long>(k)) * inv.pow(k + 1), MultiPoly(n, 1), Affine(n)});
  Affine tail_exp = *count * Rational(c);
  for (unsigned i = 0; i <= k; ++i) {
    QMotElem g = -(QMotElem::l_pow(c * static_cast<long>(i)) * inv.pow(i + 1));
    out.push_back({g, binomial_poly(*count, k - i), tail_exp});
  }
  return out;
}

// Groups terms by (exponent, monomial) and sums the coefficients.
std::vector<SumTerm> combine_terms(const std::vector<SumTerm>& terms, std::size_t n) {
  std::map<std::pair<Affine, MultiPoly::Monomial>, QMotElem> acc;
  for (const auto& t : terms) {
    if (t.coef.is_zero()) continue;
    for (const auto& [mono, c] : t.weight.terms()) {
      auto key = std::make_pair(t.exponent, mono);
      auto it = acc.find(key);
      QMotElem v = t.coef * QMotElem(c);
      if (it == acc.end())
        acc.emplace(key, v);
      else
        it->second += v;
    }
  }
  std::vector<SumTerm> out;
  for (auto& [key, coef] : acc) {
    if (coef.is_zero()) continue;
    MultiPoly w = MultiPoly::monomial(n, key.second);
    out.push_back({coef, w, key.first});
  }
  return out;
}

enum class Mode { Sum, Exists };

// Number of residue classes needed to make every bound on x_j integral.
double split_cost(const Region& r, std::size_t j) {
  Integer modulus = 1;
  std::set<std::size_t> involved;
  for (const auto& f0 : r.ineqs) {
    Affine f = normalize_ineq(f0);
    if (f.a[j] == 0) continue;
    Integer aj = abs(f.a[j]).get_num();
    for (std::size_t v = 0; v < f.nvars(); ++v) {
      if (v == j || f.a[v] == 0) continue;
      Integer rem;
      mpz_mod(rem.get_mpz_t(), f.a[v].get_num_mpz_t(), aj.get_mpz_t());
      if (rem != 0) {
        modulus = lcm_int(modulus, aj);
        involved.insert(v);
      }
    }
  }
  double m = modulus.get_d();
  double cost = 1;
  for (std::size_t k = 0; k < involved.size(); ++k) cost *= m;
  return cost;
}

// Swaps the inner variable with the cheapest bounds into the last slot. The
// sum over the inner variables does not depend on their order.
WorkCell move_cheapest_last(const WorkCell& c, std::size_t outer) {
  std::size_t n = c.region.nvars;
  std::size_t last = n - 1, best = last;
  double best_cost = split_cost(c.region, last);
  for (std::size_t v = outer; v < last && best_cost > 1; ++v) {
    double cost = split_cost(c.region, v);
    if (cost < best_cost) {
      best_cost = cost;
      best = v;
    }
  }
  if (best == last) return c;
  auto images = identity_images(n);
  std::swap(images[best], images[last]);
  WorkCell out;
  out.region = c.region.substitute(images, n);
  for (const auto& t : c.terms) out.terms.push_back({t.coef, t.weight.substitute(images, n), t.exponent.substitute(images)});
  out.frames = c.frames;
  return out;
}

// Eliminates the last variable of the cell. The results have one variable
// fewer.
std::vector<WorkCell> eliminate_last(const WorkCell& input, Mode mode, std::size_t outer) {
  std::size_t n = input.region.nvars;
  std::size_t j = n - 1;
  WorkCell cell = input;

  auto normalize = [&](WorkCell& c) -> bool {
    std::vector<Affine> kept;
    std::set<Affine> seen;
    for (const auto& f : c.region.ineqs) {
      Affine g = normalize_ineq(f);
      int t = constant_truth(g);
      if (t < 0) return false;
      if (t > 0) continue;
      if (seen.insert(g).second) kept.push_back(g);
    }
    c.region.ineqs = std::move(kept);
    return true;
  };
  if (!normalize(cell)) return {};

  // Residue splitting so that every bound on j is integral: variables whose
  // coefficient is not a multiple of |a_j| are split modulo the lcm.
  Integer modulus = 1;
  std::set<std::size_t> involved;
  for (const auto& f : cell.region.ineqs) {
    if (f.a[j] == 0) continue;
    Integer aj = abs(f.a[j]).get_num();
    for (std::size_t v = 0; v < j; ++v) {
      if (f.a[v] == 0) continue;
      Integer r;
      mpz_mod(r.get_mpz_t(), f.a[v].get_num_mpz_t(), aj.get_mpz_t());
      if (r != 0) {
        modulus = lcm_int(modulus, aj);
        involved.insert(v);
      }
    }
  }
  if (modulus > 1) {
    std::vector<std::size_t> vars(involved.begin(), involved.end());
    std::vector<WorkCell> out;
    for_each_residue(vars.size(), modulus, [&](const std::vector<Integer>& rho) {
      WorkCell sub = substitute_residue(cell, vars, rho, modulus, outer);
      auto part = eliminate_last(sub, mode, outer);
      for (auto& p : part) out.push_back(std::move(p));
    });
    return out;
  }

  std::vector<Affine> lowers, uppers, others;
  for (const auto& f : cell.region.ineqs) {
    if (f.a[j] > 0)
      lowers.push_back(drop_last(bound_from(f, j)));
    else if (f.a[j] < 0)
      uppers.push_back(drop_last(bound_from(f, j)));
    else
      others.push_back(drop_last(f));
  }
  lowers = prune_bounds(lowers, true);
  uppers = prune_bounds(uppers, false);

  if (lowers.empty()) {
    if (mode == Mode::Exists) {
      WorkCell c;
      c.region.nvars = j;
      c.region.ineqs = others;
      c.frames = cell.frames;
      return {c};
    }
    fail(ErrorKind::DecompositionUnsupported, "summation variable is unbounded below");
  }

  std::vector<WorkCell> out;
  std::size_t nu = std::max<std::size_t>(uppers.size(), 1);
  for (std::size_t li = 0; li < lowers.size(); ++li) {
    for (std::size_t ui = 0; ui < nu; ++ui) {
      WorkCell c;
      c.region.nvars = j;
      c.frames = cell.frames;
      c.region.ineqs = others;
      const Affine& l = lowers[li];
      for (std::size_t t = 0; t < lowers.size(); ++t) {
        if (t == li) continue;
        Affine d = l - lowers[t];
        if (t < li) d.b -= 1;
        c.region.ineqs.push_back(d);
      }
      std::optional<Affine> u;
      if (!uppers.empty()) {
        u = uppers[ui];
        for (std::size_t t = 0; t < uppers.size(); ++t) {
          if (t == ui) continue;
          Affine d = uppers[t] - *u;
          if (t < ui) d.b -= 1;
          c.region.ineqs.push_back(d);
        }
        c.region.ineqs.push_back(*u - l);
      }
      bool feasible = true;
      for (const auto& f : c.region.ineqs)
        if (constant_truth(f) < 0) feasible = false;
      if (!feasible) continue;

      if (mode == Mode::Sum) {
        std::optional<Affine> count;
        if (u) {
          count = *u - l;
          count->b += 1;
        }
        // Back in n variables so that weights can be split along j.
        auto widen = [&](const Affine& f) {
          Affine g = f;
          g.a.push_back(0);
          return g;
        };
        Affine lw = widen(l);
        std::optional<Affine> cw;
        if (count) cw = widen(*count);
        std::vector<SumTerm> summed;
        for (const auto& t : cell.terms) {
          Rational cj = t.exponent.a[j];
          if (cj.get_den() != 1) fail(ErrorKind::Internal, "non-integral exponent slope");
          long c_slope = cj.get_num().get_si();
          Affine e_rest = t.exponent;
          e_rest.a[j] = 0;
          Affine base_exp = e_rest + lw * cj;
          auto parts = t.weight.split_by(j);
          MultiPoly lpoly = MultiPoly::from_affine(lw);
          for (unsigned m = 0; m < parts.size(); ++m) {
            if (parts[m].is_zero()) continue;
            for (unsigned p = 0; p <= m; ++p) {
              MultiPoly shift = lpoly.pow(m - p) * Rational(binomial(m, p));
              for (unsigned k = 0; k <= p; ++k) {
                Integer s = surjections(p, k);
                if (s == 0) continue;
                for (const auto& g : geometric_binomial(c_slope, k, cw, n)) {
                  MultiPoly w = parts[m] * shift * g.weight * Rational(s);
                  summed.push_back({t.coef * g.coef, w, base_exp + g.exponent});
                }
              }
            }
          }
        }
        std::vector<Affine> shrink(n);
        for (std::size_t v = 0; v < j; ++v) shrink[v] = Affine::var(j, v);
        shrink[j] = Affine(j);
        for (auto& t : summed) {
          t.weight = t.weight.substitute(shrink, j);
          t.exponent = t.exponent.substitute(shrink);
        }
        c.terms = combine_terms(summed, j);
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

} // namespace

// ---- Affine ------------------------------------------------------------

bool Affine::is_constant() const {
  return std::all_of(a.begin(), a.end(), [](const Rational& c) { return c == 0; });
}

bool Affine::has_integer_coeffs() const {
  return std::all_of(a.begin(), a.end(), [](const Rational& c) { return c.get_den() == 1; });
}

Rational Affine::eval(const std::vector<Rational>& x) const {
  Rational s = b;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * x[k];
  return s;
}

Rational Affine::eval(const std::vector<long>& x) const {
  Rational s = b;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * x[k];
  return s;
}

Affine Affine::operator+(const Affine& o) const {
  Affine r = *this;
  for (std::size_t k = 0; k < a.size(); ++k) r.a[k] += o.a[k];
  r.b += o.b;
  return r;
}

Affine Affine::operator-(const Affine& o) const { return *this + o * Rational(-1); }

Affine Affine::operator*(const Rational& s) const {
  Affine r = *this;
  for (auto& c : r.a) c *= s;
  r.b *= s;
  return r;
}

Affine Affine::substitute(const std::vector<Affine>& images) const {
  std::size_t n = images.empty() ? 0 : images.front().nvars();
  Affine r(n, b);
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != 0) r = r + images[k] * a[k];
  return r;
}

std::string Affine::to_string(const std::vector<std::string>& names) const {
  std::string out;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0) continue;
    out += term_text(a[k], names[k], out.empty());
  }
  if (b != 0 || out.empty()) out += term_text(b, "", out.empty());
  return out;
}

// ---- Region ------------------------------------------------------------

Region Region::natural(std::size_t n) {
  Region r;
  r.nvars = n;
  for (std::size_t k = 0; k < n; ++k) r.ineqs.push_back(Affine::var(n, k));
  return r;
}

bool Region::contains(const std::vector<long>& x) const {
  for (const auto& f : ineqs)
    if (f.eval(x) < 0) return false;
  for (const auto& c : congs) {
    Rational v = c.form.eval(x);
    if (v.get_den() != 1) return false;
    Integer r;
    mpz_mod(r.get_mpz_t(), v.get_num_mpz_t(), c.modulus.get_mpz_t());
    if (r != 0) return false;
  }
  return true;
}

namespace {

// Skips repeated constraints and constant ones that always hold.
void add_ineq(Region& r, const Affine& f) {
  if (f.is_constant() && f.b >= 0) return;
  for (const auto& g : r.ineqs)
    if (g == f) return;
  r.ineqs.push_back(f);
}

void add_cong(Region& r, const Congruence& c) {
  if (c.form.is_constant() && c.form.b.get_den() == 1 && c.form.b.get_num() % c.modulus == 0) return;
  for (const auto& d : r.congs)
    if (d.form == c.form && d.modulus == c.modulus) return;
  r.congs.push_back(c);
}

} // namespace

Region Region::intersect(const Region& o) const {
  if (o.nvars != nvars) fail(ErrorKind::Internal, "region dimension mismatch");
  Region r = *this;
  for (const auto& f : o.ineqs) add_ineq(r, f);
  for (const auto& c : o.congs) add_cong(r, c);
  return r;
}

Region Region::substitute(const std::vector<Affine>& images, std::size_t new_nvars) const {
  Region r;
  r.nvars = new_nvars;
  for (const auto& f : ineqs) add_ineq(r, f.substitute(images));
  for (const auto& c : congs) add_cong(r, {c.form.substitute(images), c.modulus});
  return r;
}

bool Region::is_empty() const {
  WorkCell start;
  start.region = *this;
  std::vector<WorkCell> cells = drop_congruences(start, 0);
  for (std::size_t v = nvars; v > 0; --v) {
    std::vector<WorkCell> next;
    for (const auto& c : cells) {
      auto part = eliminate_last(move_cheapest_last(c, 0), Mode::Exists, 0);
      for (auto& p : part) next.push_back(std::move(p));
      if (next.size() > kMaxCells)
        fail(ErrorKind::DecompositionUnsupported, "emptiness test needs more than " + std::to_string(kMaxCells) + " cells");
    }
    cells = std::move(next);
    if (cells.empty()) return true;
  }
  for (const auto& c : cells) {
    bool ok = true;
    for (const auto& f : c.region.ineqs)
      if (f.b < 0) ok = false;
    if (ok) return false;
  }
  return true;
}

std::string Region::to_string(const std::vector<std::string>& names) const {
  std::vector<std::string> parts;
  for (const auto& f : ineqs) parts.push_back(f.to_string(names) + " >= 0");
  for (const auto& c : congs) parts.push_back(c.form.to_string(names) + " mod " + c.modulus.get_str() + " == 0");
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? ", " : "") + parts[k];
  return out.empty() ? "true" : out;
}

// ---- MultiPoly ---------------------------------------------------------

MultiPoly::MultiPoly(std::size_t n, Rational constant) : n_(n) {
  if (constant != 0) t_[Monomial(n, 0u)] = std::move(constant);
}

MultiPoly MultiPoly::monomial(std::size_t n, const Monomial& m, Rational c) {
  MultiPoly p(n);
  p.add_term(m, c);
  return p;
}

MultiPoly MultiPoly::from_affine(const Affine& f) {
  MultiPoly p(f.nvars(), f.b);
  for (std::size_t k = 0; k < f.nvars(); ++k) {
    if (f.a[k] == 0) continue;
    Monomial m(f.nvars(), 0u);
    m[k] = 1;
    p.add_term(m, f.a[k]);
  }
  return p;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = t_.find(m);
  if (it == t_.end()) {
    t_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == 0) t_.erase(it);
}

bool MultiPoly::is_constant() const {
  return t_.empty() || (t_.size() == 1 && std::all_of(t_.begin()->first.begin(), t_.begin()->first.end(), [](unsigned e) { return e == 0; }));
}

Rational MultiPoly::constant_value() const {
  auto it = t_.find(Monomial(n_, 0u));
  return it == t_.end() ? Rational(0) : it->second;
}

unsigned MultiPoly::degree_in(std::size_t k) const {
  unsigned d = 0;
  for (const auto& [m, c] : t_) d = std::max(d, m[k]);
  return d;
}

Rational MultiPoly::eval(const std::vector<Rational>& x) const {
  Rational s = 0;
  for (const auto& [m, c] : t_) {
    Rational v = c;
    for (std::size_t k = 0; k < n_; ++k)
      if (m[k]) v *= rational_pow(x[k], m[k]);
    s += v;
  }
  return s;
}

Rational MultiPoly::eval(const std::vector<long>& x) const {
  std::vector<Rational> r(x.begin(), x.end());
  return eval(r);
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r = *this;
  if (r.n_ == 0 && r.t_.empty()) r.n_ = o.n_;
  for (const auto& [m, c] : o.t_) r.add_term(m, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + o * Rational(-1); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly r(std::max(n_, o.n_));
  for (const auto& [m1, c1] : t_)
    for (const auto& [m2, c2] : o.t_) {
      Monomial m(m1.size());
      for (std::size_t k = 0; k < m.size(); ++k) m[k] = m1[k] + m2[k];
      r.add_term(m, c1 * c2);
    }
  return r;
}

MultiPoly MultiPoly::operator*(const Rational& s) const {
  MultiPoly r(n_);
  for (const auto& [m, c] : t_) r.add_term(m, c * s);
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly out(n_, 1), base = *this;
  while (e) {
    if (e & 1u) out = out * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return out;
}

MultiPoly MultiPoly::substitute(const std::vector<Affine>& images, std::size_t new_nvars) const {
  std::vector<std::vector<MultiPoly>> powers(n_);
  MultiPoly out(new_nvars);
  for (const auto& [m, c] : t_) {
    MultiPoly term(new_nvars, c);
    for (std::size_t k = 0; k < n_; ++k) {
      if (m[k] == 0) continue;
      auto& pw = powers[k];
      if (pw.empty()) pw.push_back(MultiPoly(new_nvars, 1));
      while (pw.size() <= m[k]) pw.push_back(pw.back() * from_affine(images[k]));
      term = term * pw[m[k]];
    }
    out = out + term;
  }
  return out;
}

std::vector<MultiPoly> MultiPoly::split_by(std::size_t k) const {
  std::vector<MultiPoly> out(degree_in(k) + 1, MultiPoly(n_));
  for (const auto& [m, c] : t_) {
    Monomial rest = m;
    rest[k] = 0;
    out[m[k]].add_term(rest, c);
  }
  return out;
}

Rational MultiPoly::l1_norm() const {
  Rational s = 0;
  for (const auto& [m, c] : t_) s += abs(c);
  return s;
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
  if (t_.empty()) return "0";
  std::string out;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string mono;
    for (std::size_t k = 0; k < n_; ++k) {
      if (m[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[k];
      if (m[k] > 1) mono += "^" + std::to_string(m[k]);
    }
    out += term_text(c, mono, out.empty());
  }
  return out;
}

MultiPoly binomial_poly(const Affine& x, unsigned k) {
  MultiPoly p(x.nvars(), 1);
  for (unsigned t = 0; t < k; ++t) {
    Affine f = x;
    f.b -= t;
    p = p * MultiPoly::from_affine(f);
  }
  Integer fact = 1;
  for (unsigned t = 2; t <= k; ++t) fact *= t;
  return p * (Rational(1) / Rational(fact));
}

// ---- summation ---------------------------------------------------------

ClosedForm sum_over_trailing(const std::vector<SumCell>& cells, std::size_t outer) {
  ClosedForm out;
  for (const auto& input : cells) {
    std::size_t n = input.region.nvars;
    if (outer > n) fail(ErrorKind::Internal, "more outer variables than variables");
    WorkCell start;
    start.region = input.region;
    start.terms = input.terms;
    start.frames.assign(outer, Frame{});
    std::vector<WorkCell> work = drop_congruences(start, outer);
    for (std::size_t v = n; v > outer; --v) {
      std::vector<WorkCell> next;
      for (const auto& c : work) {
        auto part = eliminate_last(move_cheapest_last(c, outer), Mode::Sum, outer);
        for (auto& p : part) next.push_back(std::move(p));
        if (next.size() > kMaxCells)
          fail(ErrorKind::DecompositionUnsupported, "piece decomposes into more than " + std::to_string(kMaxCells) + " cells");
      }
      work = std::move(next);
    }
    for (auto& c : work) {
      // Undo the residue substitutions on the outer variables: y = (x - r)/a.
      std::vector<Affine> back(outer);
      Region extra;
      extra.nvars = outer;
      bool moved = false;
      for (std::size_t v = 0; v < outer; ++v) {
        const Frame& f = c.frames[v];
        back[v] = Affine::var(outer, v, Rational(1) / Rational(f.a));
        back[v].b = Rational(-f.r) / Rational(f.a);
        if (f.a != 1 || f.r != 0) moved = true;
        if (f.a != 1) {
          Affine form = Affine::var(outer, v);
          form.b = Rational(-f.r);
          extra.congs.push_back({form, f.a});
        }
      }
      SumCell sc;
      if (moved) {
        sc.region = c.region.substitute(back, outer);
        for (auto& f : sc.region.ineqs) f = normalize_ineq(f);
        sc.region.congs.insert(sc.region.congs.end(), extra.congs.begin(), extra.congs.end());
        for (const auto& t : c.terms) sc.terms.push_back({t.coef, t.weight.substitute(back, outer), t.exponent.substitute(back)});
      } else {
        sc.region = std::move(c.region);
        sc.terms = std::move(c.terms);
      }
      bool dead = false;
      for (const auto& f : sc.region.ineqs)
        if (constant_truth(f) < 0) dead = true;
      if (dead || sc.terms.empty()) continue;
      out.cells.push_back(std::move(sc));
    }
  }
  return out;
}

QMotElem closed_value(const ClosedForm& f) {
  QMotElem total;
  for (const auto& c : f.cells) {
    if (c.region.nvars != 0) fail(ErrorKind::Internal, "closed form still has free variables");
    if (!c.region.contains({})) continue;
    for (const auto& t : c.terms) {
      Rational e = t.exponent.b;
      if (e.get_den() != 1) fail(ErrorKind::Internal, "non-integral exponent in closed form");
      total += t.coef * QMotElem(t.weight.constant_value()) * QMotElem::l_pow(e.get_num().get_si());
    }
  }
  return total;
}

// ---- cones and vertices --------------------------------------------------

namespace {

// Solves rows * x = rhs; returns nullopt when the system is singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
  std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = rhs[k] / m[k][k];
  return x;
}

// One-dimensional kernel of a (k-1) x k matrix, if the rank is k-1.
std::optional<std::vector<Rational>> kernel_line(std::vector<std::vector<Rational>> m, std::size_t k) {
  std::size_t rows = m.size();
  std::vector<long> pivot_col;
  std::size_t r = 0;
  for (std::size_t col = 0; col < k && r < rows; ++col) {
    std::size_t piv = r;
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t t = 0; t < rows; ++t) {
      if (t == r || m[t][col] == 0) continue;
      Rational f = m[t][col] / m[r][col];
      for (std::size_t c = 0; c < k; ++c) m[t][c] -= f * m[r][c];
    }
    pivot_col.push_back(static_cast<long>(col));
    ++r;
  }
  if (r + 1 != k) return std::nullopt;
  std::vector<bool> is_pivot(k, false);
  for (long c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  std::size_t free = 0;
  while (is_pivot[free]) ++free;
  std::vector<Rational> x(k, Rational(0));
  x[free] = 1;
  for (std::size_t t = 0; t < pivot_col.size(); ++t) {
    std::size_t c = static_cast<std::size_t>(pivot_col[t]);
    x[c] = -m[t][free] / m[t][c];
  }
  return x;
}

std::vector<Integer> primitive(const std::vector<Rational>& v) {
  Integer den = 1;
  for (const auto& c : v) den = lcm_int(den, c.get_den());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& c : v) {
    Rational s = c * Rational(den);
    out.push_back(s.get_num());
    g = gcd_int(g, s.get_num());
  }
  if (g > 1)
    for (auto& c : out) c /= g;
  return out;
}

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    long i = static_cast<long>(k) - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + static_cast<std::size_t>(i)) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (std::size_t t = static_cast<std::size_t>(i) + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
}

} // namespace

std::vector<std::vector<Integer>> recession_rays(const Region& r, const std::vector<std::size_t>& coords) {
  std::size_t k = coords.size();
  std::vector<std::vector<Rational>> rows;
  for (const auto& f : r.ineqs) {
    std::vector<Rational> row;
    bool nonzero = false;
    for (std::size_t c : coords) {
      row.push_back(f.a[c]);
      if (f.a[c] != 0) nonzero = true;
    }
    if (nonzero) rows.push_back(std::move(row));
  }
  auto feasible = [&](const std::vector<Rational>& x) {
    for (const auto& row : rows) {
      Rational s = 0;
      for (std::size_t t = 0; t < k; ++t) s += row[t] * x[t];
      if (s < 0) return false;
    }
    return true;
  };
  std::set<std::vector<Integer>> found;
  if (k == 0) return {};
  if (k == 1) {
    for (int s : {1, -1})
      if (feasible({Rational(s)})) found.insert({Integer(s)});
    return {found.begin(), found.end()};
  }
  for_each_subset(rows.size(), k - 1, [&](const std::vector<std::size_t>& sel) {
    std::vector<std::vector<Rational>> m;
    for (std::size_t s : sel) m.push_back(rows[s]);
    auto line = kernel_line(m, k);
    if (!line) return;
    for (int sgn_v : {1, -1}) {
      std::vector<Rational> x = *line;
      for (auto& c : x) c *= sgn_v;
      if (feasible(x)) found.insert(primitive(x));
    }
  });
  return {found.begin(), found.end()};
}

std::vector<std::vector<Rational>> vertices(const Region& r) {
  std::size_t n = r.nvars;
  std::set<std::vector<Rational>> found;
  if (n == 0) return {{}};
  for_each_subset(r.ineqs.size(), n, [&](const std::vector<std::size_t>& sel) {
    std::vector<std::vector<Rational>> m;
    std::vector<Rational> rhs;
    for (std::size_t s : sel) {
      m.push_back(r.ineqs[s].a);
      rhs.push_back(-r.ineqs[s].b);
    }
    auto x = solve_square(m, rhs);
    if (!x) return;
    for (const auto& f : r.ineqs)
      if (f.eval(*x) < 0) return;
    found.insert(*x);
  });
  return {found.begin(), found.end()};
}

std::string direction_name(const std::vector<Integer>& ray, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t k = 0; k < ray.size(); ++k) {
    if (ray[k] == 0) continue;
    bool neg = ray[k] < 0;
    Integer mag = neg ? Integer(-ray[k]) : ray[k];
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? "-" : "+";
    if (mag != 1) out += mag.get_str() + "*";
    out += names[k];
  }
  return out.empty() ? "0" : out;
}

} // namespace motint
