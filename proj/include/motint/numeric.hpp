#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace motint {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Rationals print as "p" or "p/q" in lowest terms.
inline std::string to_string(const Rational& r) {
  Rational c(r);
  c.canonicalize();
  return c.get_str();
}

/// Parses "p" or "p/q" (optional sign). Throws Error(Value) on malformed text.
Rational parse_rational(std::string_view text);

/// base^exp for any integer exponent; base must be nonzero when exp < 0.
Rational rational_pow(const Rational& base, long exp);

Integer integer_pow(const Integer& base, unsigned long exp);

/// Binomial coefficient C(n, k) for n >= 0; zero when k < 0 or k > n.
Integer binomial(long n, long k);

Integer floor_div(const Integer& a, const Integer& b);
Integer ceil_div(const Integer& a, const Integer& b);

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

} // namespace motint
