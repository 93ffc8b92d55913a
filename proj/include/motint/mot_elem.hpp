#pragma once

#include "motint/errors.hpp"
#include "motint/numeric.hpp"
#include "motint/poly.hpp"
#include "motint/real_roots.hpp"

#include <map>
#include <optional>
#include <string>

namespace motint {

/// A point q > 1 at which elements of the coefficient ring are evaluated.
class EvalPoint {
public:
  explicit EvalPoint(Rational q) : q_(std::move(q)) {
    q_.canonicalize();
    if (q_ <= 1) fail(ErrorKind::Value, "evaluation point must satisfy q > 1, got " + motint::to_string(q_));
  }
  const Rational& q() const { return q_; }

private:
  Rational q_;
};

/// Element of Z[L, 1/L, (1/(1 - L^-i))_{i>0}] stored as
///   numerator / (L^a * prod_i (L^i - 1)^{e_i}).
/// The generator 1/(1 - L^-i) is L^i / (L^i - 1). The denominator is
/// positive at every real q > 1, so order questions reduce to the sign of
/// the numerator. Representations are not unique; `canonical()` picks one.
///
/// `Coeff` is Integer for ring elements proper and Rational for
/// intermediate values inside the summation engine.
template <class Coeff>
class BasicMotElem {
public:
  using PolyT = Poly<Coeff>;
  using FactorMap = std::map<unsigned, unsigned>; // i -> multiplicity of (L^i - 1)

  BasicMotElem() = default;
  BasicMotElem(Coeff c) : num_(std::move(c)) {} // NOLINT(google-explicit-constructor)
  BasicMotElem(PolyT num, unsigned long l_power, FactorMap factors)
      : num_(std::move(num)), l_power_(l_power), factors_(std::move(factors)) {
    for (auto it = factors_.begin(); it != factors_.end();) {
      if (it->first == 0) fail(ErrorKind::Value, "denominator factor index must be positive");
      it = it->second == 0 ? factors_.erase(it) : std::next(it);
    }
  }

  static BasicMotElem from_poly(PolyT p) { return BasicMotElem(std::move(p), 0, {}); }

  /// L^k for any integer k.
  static BasicMotElem l_pow(long k) {
    if (k >= 0) return from_poly(PolyT::monomial(Coeff(1), static_cast<std::size_t>(k)));
    return BasicMotElem(PolyT(Coeff(1)), static_cast<unsigned long>(-k), {});
  }

  /// 1 / (L^i - 1).
  static BasicMotElem inv_l_pow_minus_one(unsigned i) {
    if (i == 0) fail(ErrorKind::Value, "inv1m index must be a positive integer");
    return BasicMotElem(PolyT(Coeff(1)), 0, {{i, 1u}});
  }

  /// 1 / (1 - L^-i) = L^i / (L^i - 1).
  static BasicMotElem inv1m(unsigned i) {
    if (i == 0) fail(ErrorKind::Value, "inv1m index must be a positive integer");
    return BasicMotElem(PolyT::monomial(Coeff(1), i), 0, {{i, 1u}});
  }

  /// 1 / (1 - L^c) for c != 0, as an element of the ring.
  static BasicMotElem inv_one_minus_l_pow(long c) {
    if (c == 0) fail(ErrorKind::Domain, "1/(1 - L^0) is not defined");
    if (c < 0) return inv1m(static_cast<unsigned>(-c));
    return -inv_l_pow_minus_one(static_cast<unsigned>(c));
  }

  const PolyT& numerator() const { return num_; }
  unsigned long l_power() const { return l_power_; }
  const FactorMap& factors() const { return factors_; }

  bool is_zero() const { return num_.is_zero(); }

  PolyT denominator() const {
    PolyT d = PolyT(Coeff(1)).shifted(l_power_);
    for (const auto& [i, e] : factors_) d *= to_coeff(x_pow_minus_one(i)).pow(e);
    return d;
  }

  friend BasicMotElem operator+(const BasicMotElem& a, const BasicMotElem& b) { return combine(a, b, false); }
  friend BasicMotElem operator-(const BasicMotElem& a, const BasicMotElem& b) { return combine(a, b, true); }
  friend BasicMotElem operator-(const BasicMotElem& a) {
    BasicMotElem out = a;
    out.num_ = -out.num_;
    return out;
  }
  friend BasicMotElem operator*(const BasicMotElem& a, const BasicMotElem& b) {
    FactorMap f = a.factors_;
    for (const auto& [i, e] : b.factors_) f[i] += e;
    return BasicMotElem(a.num_ * b.num_, a.l_power_ + b.l_power_, std::move(f));
  }
  BasicMotElem& operator+=(const BasicMotElem& o) { return *this = *this + o; }
  BasicMotElem& operator-=(const BasicMotElem& o) { return *this = *this - o; }
  BasicMotElem& operator*=(const BasicMotElem& o) { return *this = *this * o; }

  BasicMotElem pow(unsigned e) const {
    BasicMotElem out(Coeff(1)), base = *this;
    while (e) {
      if (e & 1u) out *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return out;
  }

  /// Equality in the ring, decided by bringing both sides to a common
  /// denominator and comparing numerators.
  friend bool eq(const BasicMotElem& a, const BasicMotElem& b) { return (a - b).is_zero(); }

  /// Exact value at q > 1.
  Rational eval(const EvalPoint& p) const {
    Rational n = num_.template eval<Rational>(p.q());
    Rational d = rational_pow(p.q(), static_cast<long>(l_power_));
    for (const auto& [i, e] : factors_) d *= rational_pow(rational_pow(p.q(), static_cast<long>(i)) - 1, e);
    return n / d;
  }

  /// Unique reduced representative: the numerator shares no factor with the
  /// denominator, and the denominator's cyclotomic factors are regrouped
  /// greedily into the fewest (L^i - 1) blocks, largest i first.
  BasicMotElem canonical() const;

  /// Inverse when this element is a unit of the ring (numerator of the form
  /// +-L^k * product of cyclotomic polynomials); throws Error(Value) otherwise.
  BasicMotElem inverse() const;

  /// "(L^2 + 1)/(L*(L - 1)^2)"-style rendering of the canonical form.
  std::string to_string() const;

  /// Grammar-conformant rendering of the canonical form using L, ^, * and
  /// inv1m(i); parsing it back gives an equal element.
  std::string to_expr() const;

  /// Stable golden form "P | a | [(i,e),...]" of the canonical form.
  std::string serialize() const;

private:
  static Poly<Coeff> to_coeff(const IntPoly& p) {
    std::vector<Coeff> c;
    for (const auto& v : p.coeffs()) c.emplace_back(v);
    return Poly<Coeff>(std::move(c));
  }

  static BasicMotElem combine(const BasicMotElem& a, const BasicMotElem& b, bool subtract) {
    unsigned long lp = std::max(a.l_power_, b.l_power_);
    FactorMap f = a.factors_;
    for (const auto& [i, e] : b.factors_) f[i] = std::max(f[i], e);
    PolyT na = a.num_.shifted(lp - a.l_power_);
    PolyT nb = b.num_.shifted(lp - b.l_power_);
    for (const auto& [i, e] : f) {
      auto ia = a.factors_.find(i);
      auto ib = b.factors_.find(i);
      unsigned ea = ia == a.factors_.end() ? 0u : ia->second;
      unsigned eb = ib == b.factors_.end() ? 0u : ib->second;
      if (e > ea) na *= to_coeff(x_pow_minus_one(i)).pow(e - ea);
      if (e > eb) nb *= to_coeff(x_pow_minus_one(i)).pow(e - eb);
    }
    return BasicMotElem(subtract ? na - nb : na + nb, lp, std::move(f));
  }

  PolyT num_;
  unsigned long l_power_ = 0;
  FactorMap factors_;
};

using MotElem = BasicMotElem<Integer>;
using QMotElem = BasicMotElem<Rational>;

QMotElem to_rational(const MotElem& a);

/// Converts back when every numerator coefficient is integral; throws
/// Error(Internal) otherwise.
MotElem to_integral(const QMotElem& a);

/// Verdict for membership in the nonnegative cone.
struct Positivity {
  bool nonneg;
  std::optional<Rational> witness; // q > 1 with negative value when !nonneg
  std::vector<Rational> samples;
};

/// Decides whether the value at q is >= 0 for every real q > 1.
Positivity is_nonneg(const MotElem& a);
Positivity is_nonneg(const QMotElem& a);

/// a <= b in the evaluation order, i.e. b - a is nonnegative.
inline bool leq(const MotElem& a, const MotElem& b) { return is_nonneg(b - a).nonneg; }

} // namespace motint
