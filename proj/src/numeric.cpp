#include "motint/numeric.hpp"

#include "motint/errors.hpp"

#include <cctype>

namespace motint {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

} // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    fail(ErrorKind::Value, "malformed rational '" + std::string(text) + "'");
  Integer d(std::string(den), 10);
  if (d == 0) fail(ErrorKind::Value, "zero denominator in '" + std::string(text) + "'");
  Rational r(Integer(std::string(num), 10), d);
  r.canonicalize();
  if (negative) r = -r;
  return r;
}

Rational rational_pow(const Rational& base, long exp) {
  if (exp < 0) {
    if (base == 0) fail(ErrorKind::Domain, "negative power of zero");
    Rational inv = 1 / base;
    return rational_pow(inv, -exp);
  }
  Rational num, den;
  mpz_pow_ui(num.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exp));
  mpz_pow_ui(den.get_num_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exp));
  Rational out(num.get_num(), den.get_num());
  out.canonicalize();
  return out;
}

Integer integer_pow(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

Integer binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

} // namespace motint
