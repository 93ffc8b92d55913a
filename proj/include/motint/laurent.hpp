#pragma once

#include "motint/mot_elem.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace motint {

/// Element of Z[L][[1/L]] known down to L^-N, i.e. up to an error term
/// O(L^-(N+1)). Exact series carry no error term.
class TruncatedSeries {
public:
  TruncatedSeries() = default; // exact zero

  static TruncatedSeries exact(std::map<long, Integer> coeffs);
  static TruncatedSeries truncated(std::map<long, Integer> coeffs, long precision);

  bool is_exact() const { return exact_; }
  /// N such that coefficients of L^k are known for k >= -N. Meaningless
  /// for exact series.
  long precision() const { return prec_; }
  const std::map<long, Integer>& coeffs() const { return c_; }
  Integer coeff(long k) const;

  /// Highest exponent with a nonzero coefficient; for a series with no
  /// known nonzero coefficient, -N-1 (inexact) or nullopt (exact zero).
  std::optional<long> top_degree() const;

  /// Sum of the known terms at q.
  Rational eval(const Rational& q) const;

  /// Drops terms below L^-N and marks the result inexact (no-op on the
  /// precision when already coarser).
  TruncatedSeries truncate(long n) const;

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

  /// Same known coefficients and same precision/exactness.
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.exact_ == b.exact_ && a.c_ == b.c_ && (a.exact_ || a.prec_ == b.prec_);
  }

  /// "1 + L^-1 + L^-2 + O(L^-3)".
  std::string to_string() const;

private:
  std::map<long, Integer> c_;
  long prec_ = 0;
  bool exact_ = true;
};

/// Explicit bound on |nu_q(a) - series(q)| for a series produced by expand:
///   coefficient * q^exponent * (q/(q-1))^poles.
struct TailBound {
  Integer coefficient;
  long exponent = 0;
  unsigned poles = 0;

  Rational at(const Rational& q) const;
  std::string to_string() const;
};

struct Expansion {
  TruncatedSeries series;
  TailBound tail;
};

/// Expansion of a in powers of 1/L, keeping every term down to L^-N.
Expansion expand(const MotElem& a, long n);

/// Tail descriptor of a stream of exponents n_i (a_i = L^{n_i}).
struct TailDescriptor {
  enum class Kind { Constant, Decreasing, Increasing, Periodic };
  Kind kind;
  long value = 0;           // Constant
  std::vector<long> cycle;  // Periodic
};

struct MonomialSequence {
  std::vector<long> prefix;
  std::optional<TailDescriptor> tail;
};

struct MonomialLimit {
  enum class Kind { Zero, Stable, Divergent };
  Kind kind;
  long exponent = 0; // Stable

  std::string to_string() const;
};

/// Limit of L^{n_i}: zero when n_i -> -inf, L^N when eventually constant,
/// divergent otherwise. Decided from the tail descriptor only; throws
/// Error(Value) when it is missing.
MonomialLimit classify_monomial_limit(const MonomialSequence& s);

/// Parses "constant:5", "decreasing", "increasing", "periodic:0,1".
TailDescriptor parse_tail_descriptor(const std::string& text);

struct ConvergenceCheck {
  bool converged = false;
  std::optional<std::size_t> settle_index; // first index after which every term is within tol
  std::vector<Rational> distances;
  bool advisory = true; // a finite prefix never certifies a limit
};

/// Checks |nu_q(a_i) - nu_q(limit)| < tol from some index to the end of the
/// supplied prefix.
ConvergenceCheck is_q_convergent(const std::vector<MotElem>& terms, const MotElem& limit, const EvalPoint& p,
                                 const Rational& tol);

} // namespace motint
