#pragma once

#include "motint/poly.hpp"

#include <optional>
#include <vector>

namespace motint {

/// Sturm sequence of a square-free polynomial; every entry is a primitive
/// integer polynomial whose sign agrees with the rational Sturm chain.
std::vector<IntPoly> sturm_sequence(const IntPoly& squarefree);

/// Number of distinct real roots of the square-free `p` in (lo, hi].
long count_roots(const std::vector<IntPoly>& sturm, const Rational& lo, const Rational& hi);

/// Integer strictly larger than the absolute value of every real root.
Integer cauchy_bound(const IntPoly& p);

/// Open interval (lo, hi) holding exactly one root; both ends are non-roots.
struct RootInterval {
  Rational lo;
  Rational hi;
};

/// Isolates every real root of the square-free `p` in (1, infinity).
std::vector<RootInterval> isolate_roots_above_one(const IntPoly& p);

/// Outcome of deciding p(q) >= 0 for all real q > 1.
struct SignDecision {
  bool nonneg = true;
  std::optional<Rational> witness;  // q > 1 with p(q) < 0 when !nonneg
  std::vector<Rational> samples;    // one point per sign-invariant open cell
};

SignDecision decide_nonneg_above_one(const IntPoly& p);

} // namespace motint
