#pragma once

// Random generators shared by the unit and acceptance tests.

#include "motint/mot_elem.hpp"

#include <random>

namespace motint::testing {

class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return range(0, 1) == 1; }

  IntPoly poly(long max_deg, long bound) {
    std::vector<Integer> c;
    long d = range(0, max_deg);
    for (long k = 0; k <= d; ++k) c.emplace_back(range(-bound, bound));
    return IntPoly(std::move(c));
  }

  MotElem elem(long max_deg = 4, long bound = 6, unsigned max_index = 4) {
    IntPoly p = poly(max_deg, bound);
    if (p.is_zero()) p = IntPoly(Integer(range(1, bound)));
    MotElem::FactorMap f;
    long nf = range(0, 2);
    for (long k = 0; k < nf; ++k) f[static_cast<unsigned>(range(1, max_index))] += static_cast<unsigned>(range(1, 2));
    return MotElem(p, static_cast<unsigned long>(range(0, 3)), std::move(f));
  }

  // Product of (L - r) factors times a positive scale; biased toward
  // elements whose sign changes near small q so both verdicts occur.
  MotElem signed_elem() {
    IntPoly p(Integer(range(1, 3)));
    long roots = range(0, 3);
    for (long k = 0; k < roots; ++k) {
      Rational r(range(-4, 40), range(1, 4));
      IntPoly lin(std::vector<Integer>{Integer(-r.get_num()), Integer(r.get_den())});
      p *= lin;
      if (coin()) p *= lin;
    }
    if (coin()) p = -p;
    if (coin()) p += IntPoly(Integer(range(-3, 3)));
    if (p.is_zero()) p = IntPoly(Integer(1));
    MotElem::FactorMap f;
    if (coin()) f[static_cast<unsigned>(range(1, 3))] = 1;
    return MotElem(p, static_cast<unsigned long>(range(0, 2)), std::move(f));
  }

  Rational q_point(long max_num = 1000) {
    long den = range(1, 12);
    long num = range(den + 1, max_num * den);
    return Rational(num, den);
  }

  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

} // namespace motint::testing
