#include "motint/real_roots.hpp"

namespace motint {

namespace {

int sign_at(const IntPoly& p, const Rational& x) {
  Rational v = p.eval(x);
  return sgn(v);
}

long variations(const std::vector<IntPoly>& seq, const Rational& x) {
  long changes = 0;
  int last = 0;
  for (const auto& p : seq) {
    int s = sign_at(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// A point of (lo, hi) that is not a root of p, as close to the midpoint as
// the probe grid allows. At most deg(p) probes can be roots.
Rational nonroot_between(const IntPoly& p, const Rational& lo, const Rational& hi) {
  long d = std::max<long>(p.degree(), 1);
  long slots = d + 2;
  Rational width = hi - lo;
  // Probe order: centre, centre+1, centre-1, centre+2, ...
  long centre = slots / 2;
  for (long off = 0; off < slots; ++off) {
    long k = off % 2 == 0 ? centre + off / 2 : centre - (off + 1) / 2;
    if (k <= 0 || k >= slots) continue;
    Rational x = lo + width * Rational(k, slots);
    if (sign_at(p, x) != 0) return x;
  }
  fail(ErrorKind::Internal, "no non-root probe found");
}

} // namespace

std::vector<IntPoly> sturm_sequence(const IntPoly& squarefree) {
  std::vector<IntPoly> seq;
  if (squarefree.is_zero()) return seq;
  seq.push_back(squarefree);
  if (squarefree.degree() == 0) return seq;
  seq.push_back(primitive_part(squarefree.derivative()));
  while (true) {
    const IntPoly& a = seq[seq.size() - 2];
    const IntPoly& b = seq.back();
    RatPoly r = divmod(to_rational(a), to_rational(b)).second;
    if (r.is_zero()) break;
    seq.push_back(-primitive_integer_part(r));
  }
  return seq;
}

long count_roots(const std::vector<IntPoly>& sturm, const Rational& lo, const Rational& hi) {
  if (sturm.empty()) return 0;
  return variations(sturm, lo) - variations(sturm, hi);
}

Integer cauchy_bound(const IntPoly& p) {
  if (p.degree() <= 0) return 1;
  Integer lead = p.lead() < 0 ? Integer(-p.lead()) : p.lead();
  Rational m = 0;
  for (long k = 0; k < p.degree(); ++k) {
    const Integer& c = p.coeffs()[static_cast<std::size_t>(k)];
    Rational r(c < 0 ? Integer(-c) : c, lead);
    if (r > m) m = r;
  }
  Rational b = 1 + m;
  return ceil_div(b.get_num(), b.get_den()) + 1;
}

std::vector<RootInterval> isolate_roots_above_one(const IntPoly& p) {
  std::vector<RootInterval> out;
  if (p.degree() <= 0) return out;
  auto seq = sturm_sequence(p);
  Rational top(cauchy_bound(p));
  if (top < 2) top = 2;

  struct Pending {
    Rational lo, hi;
  };
  // Depth-first over (lo, hi]; hi is always a non-root, lo is 1 or a non-root.
  std::vector<Pending> stack{{Rational(1), top}};
  std::vector<RootInterval> found;
  while (!stack.empty()) {
    Pending cur = stack.back();
    stack.pop_back();
    long n = count_roots(seq, cur.lo, cur.hi);
    if (n == 0) continue;
    if (n == 1 && cur.lo > 1) {
      found.push_back({cur.lo, cur.hi});
      continue;
    }
    Rational mid = nonroot_between(p, cur.lo, cur.hi);
    stack.push_back({cur.lo, mid});
    stack.push_back({mid, cur.hi});
  }
  std::sort(found.begin(), found.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return found;
}

SignDecision decide_nonneg_above_one(const IntPoly& p) {
  SignDecision out;
  if (p.is_zero()) return out;
  if (p.degree() == 0) {
    out.samples.push_back(2);
    out.nonneg = p.lead() > 0;
    if (!out.nonneg) out.witness = Rational(2);
    return out;
  }
  IntPoly s = squarefree_part(p);
  auto roots = isolate_roots_above_one(s);
  if (roots.empty()) {
    Rational top(cauchy_bound(s));
    if (top < 2) top = 2;
    out.samples.push_back(top);
  } else {
    out.samples.push_back(roots.front().lo);
    for (const auto& r : roots) out.samples.push_back(r.hi);
  }
  for (const auto& x : out.samples) {
    if (sgn(p.eval(x)) < 0) {
      out.nonneg = false;
      out.witness = x;
      break;
    }
  }
  return out;
}

} // namespace motint
