#include "motint/mot_elem.hpp"

#include <algorithm>
#include <sstream>

namespace motint {

namespace {

bool try_divide(const IntPoly& a, const IntPoly& b, IntPoly& q) { return divide_exact_monic(a, b, q); }

bool try_divide(const RatPoly& a, const IntPoly& b, RatPoly& q) {
  auto [quo, rem] = divmod(a, to_rational(b));
  if (!rem.is_zero()) return false;
  q = std::move(quo);
  return true;
}

template <class Coeff>
Poly<Coeff> lift(const IntPoly& p) {
  std::vector<Coeff> c;
  for (const auto& v : p.coeffs()) c.emplace_back(v);
  return Poly<Coeff>(std::move(c));
}

std::vector<unsigned> divisors_of(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned k = 1; k <= n; ++k)
    if (n % k == 0) out.push_back(k);
  return out;
}

// Wraps a polynomial rendering in parentheses when it has several terms.
std::string group(const std::string& s) {
  bool compound = s.find(" + ") != std::string::npos || s.find(" - ") != std::string::npos;
  return compound ? "(" + s + ")" : s;
}

} // namespace

template <class Coeff>
BasicMotElem<Coeff> BasicMotElem<Coeff>::canonical() const {
  if (num_.is_zero()) return BasicMotElem();
  PolyT num = num_;
  unsigned long strip = std::min<unsigned long>(l_power_, num.low_order());
  num = num.unshifted(strip);
  unsigned long lp = l_power_ - strip;

  std::map<unsigned, unsigned> phi; // cyclotomic index -> multiplicity
  for (const auto& [i, e] : factors_)
    for (unsigned d : divisors_of(i)) phi[d] += e;

  for (auto& [d, m] : phi) {
    while (m > 0) {
      PolyT q;
      if (!try_divide(num, cyclotomic(d), q)) break;
      num = std::move(q);
      --m;
    }
  }

  FactorMap rebuilt;
  while (true) {
    auto it = std::find_if(phi.rbegin(), phi.rend(), [](const auto& kv) { return kv.second > 0; });
    if (it == phi.rend()) break;
    unsigned top = it->first;
    for (unsigned k : divisors_of(top)) {
      auto& m = phi[k];
      if (m > 0)
        --m;
      else
        num *= lift<Coeff>(cyclotomic(k));
    }
    ++rebuilt[top];
  }
  return BasicMotElem(std::move(num), lp, std::move(rebuilt));
}

template <class Coeff>
BasicMotElem<Coeff> BasicMotElem<Coeff>::inverse() const {
  BasicMotElem c = canonical();
  if (c.is_zero()) fail(ErrorKind::Value, "zero is not invertible");
  PolyT num = c.num_;
  std::size_t k = num.low_order();
  num = num.unshifted(k);
  std::map<unsigned, unsigned> phi;
  long deg = num.degree();
  // Phi_d has degree phi(d) >= sqrt(d/2), so only d <= 2 deg^2 can divide.
  unsigned limit = static_cast<unsigned>(2 * deg * deg + 2);
  for (unsigned d = 1; d <= limit && num.degree() > 0; ++d) {
    while (num.degree() > 0) {
      PolyT q;
      if (!try_divide(num, cyclotomic(d), q)) break;
      num = std::move(q);
      ++phi[d];
    }
  }
  if (num.degree() != 0 || (num.lead() != 1 && num.lead() != -1))
    fail(ErrorKind::Value, "element " + to_string() + " is not invertible in the coefficient ring");
  Coeff sign = num.lead();

  // New numerator: old denominator times the cofactors (L^d - 1)/Phi_d.
  PolyT new_num = c.denominator().scaled(sign);
  FactorMap f;
  for (const auto& [d, m] : phi) {
    IntPoly cof;
    if (!divide_exact_monic(x_pow_minus_one(d), cyclotomic(d), cof)) fail(ErrorKind::Internal, "cyclotomic cofactor");
    new_num *= lift<Coeff>(cof).pow(m);
    f[d] += m;
  }
  return BasicMotElem(std::move(new_num), k, std::move(f)).canonical();
}

template <class Coeff>
std::string BasicMotElem<Coeff>::to_string() const {
  BasicMotElem c = canonical();
  std::string num = c.num_.to_string("L");
  if (c.l_power_ == 0 && c.factors_.empty()) return num;
  std::vector<std::string> parts;
  if (c.l_power_ == 1) parts.push_back("L");
  if (c.l_power_ > 1) parts.push_back("L^" + std::to_string(c.l_power_));
  for (const auto& [i, e] : c.factors_) {
    std::string base = "(" + x_pow_minus_one(i).to_string("L") + ")";
    parts.push_back(e == 1 ? base : base + "^" + std::to_string(e));
  }
  std::string den;
  for (std::size_t k = 0; k < parts.size(); ++k) den += (k ? "*" : "") + parts[k];
  return group(num) + "/" + (parts.size() > 1 ? "(" + den + ")" : den);
}

template <class Coeff>
std::string BasicMotElem<Coeff>::to_expr() const {
  BasicMotElem c = canonical();
  std::string out = group(c.num_.to_string("L"));
  long shift = static_cast<long>(c.l_power_);
  for (const auto& [i, e] : c.factors_) shift += static_cast<long>(i) * e;
  if (shift != 0) out += "*L^" + std::to_string(-shift);
  for (const auto& [i, e] : c.factors_) {
    out += "*inv1m(" + std::to_string(i) + ")";
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

template <class Coeff>
std::string BasicMotElem<Coeff>::serialize() const {
  BasicMotElem c = canonical();
  std::ostringstream os;
  os << c.num_.to_string("L") << " | " << c.l_power_ << " | [";
  bool first = true;
  for (const auto& [i, e] : c.factors_) {
    os << (first ? "" : ",") << "(" << i << "," << e << ")";
    first = false;
  }
  os << "]";
  return os.str();
}

template class BasicMotElem<Integer>;
template class BasicMotElem<Rational>;

QMotElem to_rational(const MotElem& a) {
  return QMotElem(motint::to_rational(a.numerator()), a.l_power(), a.factors());
}

MotElem to_integral(const QMotElem& a) {
  std::vector<Integer> c;
  for (const auto& v : a.numerator().coeffs()) {
    if (v.get_den() != 1) fail(ErrorKind::Internal, "non-integral numerator coefficient " + motint::to_string(v));
    c.emplace_back(v.get_num());
  }
  return MotElem(IntPoly(std::move(c)), a.l_power(), a.factors());
}

Positivity is_nonneg(const MotElem& a) {
  SignDecision d = decide_nonneg_above_one(a.numerator());
  return {d.nonneg, d.witness, std::move(d.samples)};
}

Positivity is_nonneg(const QMotElem& a) {
  SignDecision d = decide_nonneg_above_one(primitive_integer_part(a.numerator()));
  return {d.nonneg, d.witness, std::move(d.samples)};
}

} // namespace motint
