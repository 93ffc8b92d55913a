#pragma once

#include "motint/errors.hpp"
#include "motint/numeric.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace motint {

/// Dense univariate polynomial, coefficients stored from degree 0 upward.
/// The zero polynomial has no coefficients; the leading coefficient of a
/// nonzero polynomial is never zero.
template <class T>
class Poly {
public:
  Poly() = default;
  Poly(T constant) { // NOLINT(google-explicit-constructor)
    if (constant != 0) c_.push_back(std::move(constant));
  }
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly monomial(T coeff, std::size_t degree) {
    std::vector<T> c(degree + 1, T(0));
    c[degree] = std::move(coeff);
    return Poly(std::move(c));
  }
  static Poly x() { return monomial(T(1), 1); }

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; } // -1 for zero
  const T& lead() const { return c_.back(); }
  const std::vector<T>& coeffs() const { return c_; }

  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }

  /// Multiplicity of x as a factor (0 for the zero polynomial).
  std::size_t low_order() const {
    std::size_t k = 0;
    while (k < c_.size() && c_[k] == 0) ++k;
    return c_.empty() ? 0 : k;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> out(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(out));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly scaled(const T& s) const {
    Poly out = *this;
    for (auto& v : out.c_) v *= s;
    out.trim();
    return out;
  }

  /// Multiplication by x^k.
  Poly shifted(std::size_t k) const {
    if (is_zero()) return *this;
    std::vector<T> out(k, T(0));
    out.insert(out.end(), c_.begin(), c_.end());
    return Poly(std::move(out));
  }

  /// Exact division by x^k; the low k coefficients must vanish.
  Poly unshifted(std::size_t k) const {
    if (k > low_order() && !is_zero()) fail(ErrorKind::Internal, "unshift of non-divisible polynomial");
    if (is_zero()) return *this;
    return Poly(std::vector<T>(c_.begin() + static_cast<long>(k), c_.end()));
  }

  Poly pow(unsigned e) const {
    Poly out(T(1)), base = *this;
    while (e) {
      if (e & 1u) out *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return out;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<T> out(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) out[k - 1] = c_[k] * T(static_cast<long>(k));
    return Poly(std::move(out));
  }

  /// Reversal x^d p(1/x) for d = degree.
  Poly reversed() const {
    std::vector<T> out(c_.rbegin(), c_.rend());
    return Poly(std::move(out));
  }

  template <class V>
  V eval(const V& x) const {
    V acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + V(*it);
    return acc;
  }

  /// Sum of absolute values of coefficients.
  T l1_norm() const {
    T s(0);
    for (const auto& v : c_) s += v < 0 ? T(-v) : v;
    return s;
  }

  /// Human form in the variable `var`, highest degree first, e.g. "L^2 - 3*L + 1".
  std::string to_string(const std::string& var = "L") const;

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<T> c_;
};

using IntPoly = Poly<Integer>;
using RatPoly = Poly<Rational>;

template <class T>
std::string Poly<T>::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (long k = degree(); k >= 0; --k) {
    const T& v = c_[static_cast<std::size_t>(k)];
    if (v == 0) continue;
    bool neg = v < 0;
    T mag = neg ? T(-v) : v;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    if (mono.empty())
      out += motint::to_string(mag);
    else if (mag == 1)
      out += mono;
    else
      out += motint::to_string(mag) + "*" + mono;
  }
  return out;
}

inline RatPoly to_rational(const IntPoly& p) {
  std::vector<Rational> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.emplace_back(v);
  return RatPoly(std::move(c));
}

/// Scales by a positive integer to clear denominators, then removes the
/// positive content. The sign of every value is preserved.
IntPoly primitive_integer_part(const RatPoly& p);
IntPoly primitive_part(const IntPoly& p);
Integer content(const IntPoly& p);

/// Division with remainder over Q.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);

/// Exact division in Z[x] by a polynomial whose leading coefficient is +-1.
/// Returns false (leaving `quotient` unspecified) when the division is not exact.
bool divide_exact_monic(const IntPoly& a, const IntPoly& b, IntPoly& quotient);

/// Monic gcd over Q.
RatPoly gcd(RatPoly a, RatPoly b);

/// Square-free part of p (primitive, positive leading coefficient).
IntPoly squarefree_part(const IntPoly& p);

/// Yun decomposition: p = c * prod_k S_k^k with S_k square-free and pairwise
/// coprime. Entry k-1 of the result is S_k (possibly constant 1).
std::vector<IntPoly> squarefree_decomposition(const IntPoly& p);

/// The d-th cyclotomic polynomial.
const IntPoly& cyclotomic(unsigned d);

/// x^i - 1.
IntPoly x_pow_minus_one(unsigned i);

} // namespace motint
