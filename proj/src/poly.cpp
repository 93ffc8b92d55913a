#include "motint/poly.hpp"

#include <map>
#include <mutex>

namespace motint {

Integer content(const IntPoly& p) {
  Integer g = 0;
  for (const auto& v : p.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  Integer g = content(p);
  std::vector<Integer> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.emplace_back(v / g);
  return IntPoly(std::move(c));
}

IntPoly primitive_integer_part(const RatPoly& p) {
  if (p.is_zero()) return IntPoly();
  Integer l = 1;
  for (const auto& v : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  std::vector<Integer> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) {
    Rational s = v * l;
    c.emplace_back(s.get_num());
  }
  return primitive_part(IntPoly(std::move(c)));
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) fail(ErrorKind::Internal, "polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  long db = b.degree();
  long da = a.degree();
  if (da < db) return {RatPoly(), a};
  std::vector<Rational> quo(static_cast<std::size_t>(da - db + 1), Rational(0));
  const Rational& lb = b.lead();
  for (long k = da; k >= db; --k) {
    Rational coef = rem[static_cast<std::size_t>(k)] / lb;
    if (coef == 0) continue;
    quo[static_cast<std::size_t>(k - db)] = coef;
    for (long j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= coef * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

bool divide_exact_monic(const IntPoly& a, const IntPoly& b, IntPoly& quotient) {
  if (b.is_zero()) fail(ErrorKind::Internal, "polynomial division by zero");
  const Integer& lb = b.lead();
  if (lb != 1 && lb != -1) fail(ErrorKind::Internal, "divide_exact_monic needs a unit leading coefficient");
  if (a.is_zero()) {
    quotient = IntPoly();
    return true;
  }
  long db = b.degree();
  long da = a.degree();
  if (da < db) return false;
  std::vector<Integer> rem = a.coeffs();
  std::vector<Integer> quo(static_cast<std::size_t>(da - db + 1), Integer(0));
  for (long k = da; k >= db; --k) {
    Integer coef = rem[static_cast<std::size_t>(k)] * lb; // lb = +-1 so this divides
    if (coef == 0) continue;
    quo[static_cast<std::size_t>(k - db)] = coef;
    for (long j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= coef * b.coeffs()[static_cast<std::size_t>(j)];
  }
  for (long k = 0; k < db; ++k)
    if (rem[static_cast<std::size_t>(k)] != 0) return false;
  quotient = IntPoly(std::move(quo));
  return true;
}

RatPoly gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.scaled(Rational(1) / a.lead());
}

namespace {

IntPoly positive_primitive(const IntPoly& p) {
  IntPoly q = primitive_part(p);
  if (!q.is_zero() && q.lead() < 0) q = -q;
  return q;
}

IntPoly exact_quotient(const IntPoly& a, const IntPoly& b) {
  auto [q, r] = divmod(to_rational(a), to_rational(b));
  if (!r.is_zero()) fail(ErrorKind::Internal, "expected exact polynomial quotient");
  return primitive_integer_part(q);
}

} // namespace

IntPoly squarefree_part(const IntPoly& p) {
  if (p.degree() <= 0) return p.is_zero() ? p : IntPoly(Integer(1));
  RatPoly g = gcd(to_rational(p), to_rational(p.derivative()));
  return positive_primitive(exact_quotient(p, primitive_integer_part(g)));
}

std::vector<IntPoly> squarefree_decomposition(const IntPoly& p) {
  std::vector<IntPoly> out;
  if (p.degree() <= 0) return out;
  // Yun's algorithm over Q, converted to primitive integer parts at each step.
  RatPoly f = to_rational(p);
  RatPoly fp = f.derivative();
  RatPoly a = gcd(f, fp);
  RatPoly b = divmod(f, a).first;
  RatPoly c = divmod(fp, a).first;
  RatPoly d = c - b.derivative();
  while (b.degree() > 0) {
    RatPoly s = gcd(b, d);
    out.push_back(positive_primitive(primitive_integer_part(s)));
    b = divmod(b, s).first;
    c = divmod(d, s).first;
    d = c - b.derivative();
  }
  return out;
}

IntPoly x_pow_minus_one(unsigned i) {
  std::vector<Integer> c(i + 1, Integer(0));
  c[0] = -1;
  c[i] = 1;
  return IntPoly(std::move(c));
}

const IntPoly& cyclotomic(unsigned d) {
  static std::mutex mu;
  static std::map<unsigned, IntPoly> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  // Phi_d = (x^d - 1) / prod_{k | d, k < d} Phi_k, computed without recursion
  // into the locked cache.
  std::vector<unsigned> divisors;
  for (unsigned k = 1; k <= d; ++k)
    if (d % k == 0) divisors.push_back(k);
  for (unsigned k : divisors) {
    if (cache.count(k)) continue;
    IntPoly num = x_pow_minus_one(k);
    for (unsigned j = 1; j < k; ++j) {
      if (k % j != 0) continue;
      IntPoly q;
      if (!divide_exact_monic(num, cache.at(j), q)) fail(ErrorKind::Internal, "cyclotomic division failed");
      num = std::move(q);
    }
    cache.emplace(k, std::move(num));
  }
  return cache.at(d);
}

} // namespace motint
