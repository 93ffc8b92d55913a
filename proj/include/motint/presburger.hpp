#pragma once

#include "motint/mot_elem.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace motint {

/// a . x + b over a fixed number of variables.
struct Affine {
  std::vector<Rational> a;
  Rational b;

  Affine() = default;
  explicit Affine(std::size_t n, Rational constant = 0) : a(n, Rational(0)), b(std::move(constant)) {}
  static Affine var(std::size_t n, std::size_t k, Rational coeff = 1) {
    Affine f(n);
    f.a[k] = std::move(coeff);
    return f;
  }

  std::size_t nvars() const { return a.size(); }
  bool is_constant() const;
  bool has_integer_coeffs() const;
  Rational eval(const std::vector<Rational>& x) const;
  Rational eval(const std::vector<long>& x) const;

  Affine operator+(const Affine& o) const;
  Affine operator-(const Affine& o) const;
  Affine operator*(const Rational& s) const;
  friend bool operator==(const Affine& x, const Affine& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator<(const Affine& x, const Affine& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; }

  /// Image under x_k = images[k] (each over a new variable set).
  Affine substitute(const std::vector<Affine>& images) const;

  /// "2*i - j + 3".
  std::string to_string(const std::vector<std::string>& names) const;
};

/// form == 0 (mod modulus), with integer coefficients.
struct Congruence {
  Affine form;
  Integer modulus;
};

/// Integer points satisfying every inequality (form >= 0) and congruence.
/// Nonnegativity of the variables is not implicit; regions built for N^k
/// carry x_i >= 0 explicitly.
struct Region {
  std::size_t nvars = 0;
  std::vector<Affine> ineqs;
  std::vector<Congruence> congs;

  static Region natural(std::size_t n); // N^n
  bool contains(const std::vector<long>& x) const;
  Region intersect(const Region& o) const;
  Region substitute(const std::vector<Affine>& images, std::size_t new_nvars) const;

  /// Exact test for an integer point.
  bool is_empty() const;

  std::string to_string(const std::vector<std::string>& names) const;
};

/// Multivariate polynomial with rational coefficients.
class MultiPoly {
public:
  using Monomial = std::vector<unsigned>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t n, Rational constant = 0);
  static MultiPoly from_affine(const Affine& f);
  static MultiPoly monomial(std::size_t n, const Monomial& m, Rational c = 1);

  std::size_t nvars() const { return n_; }
  const std::map<Monomial, Rational>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  Rational constant_value() const; // coefficient of the empty monomial
  unsigned degree_in(std::size_t k) const;

  Rational eval(const std::vector<Rational>& x) const;
  Rational eval(const std::vector<long>& x) const;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(const Rational& s) const;
  MultiPoly pow(unsigned e) const;
  friend bool operator==(const MultiPoly& x, const MultiPoly& y) { return x.n_ == y.n_ && x.t_ == y.t_; }
  friend bool operator<(const MultiPoly& x, const MultiPoly& y) { return x.t_ < y.t_; }

  MultiPoly substitute(const std::vector<Affine>& images, std::size_t new_nvars) const;

  /// Coefficients of x_k^m as polynomials in the remaining variables (x_k
  /// itself no longer occurs).
  std::vector<MultiPoly> split_by(std::size_t k) const;

  /// Sum of absolute values of the coefficients.
  Rational l1_norm() const;

  std::string to_string(const std::vector<std::string>& names) const;

private:
  void add_term(const Monomial& m, const Rational& c);

  std::size_t n_ = 0;
  std::map<Monomial, Rational> t_;
};

/// coef * weight(x) * L^{exponent(x)}.
struct SumTerm {
  QMotElem coef;
  MultiPoly weight;
  Affine exponent;
};

/// A piece of a summation problem: the terms are summed over the integer
/// points of the region.
struct SumCell {
  Region region;
  std::vector<SumTerm> terms;
};

/// Closed form of a sum over the last (nvars - outer) variables, as pieces
/// over the first `outer` variables. Terms in the output may have rational
/// exponent and weight coefficients; they are integral on their region.
struct ClosedForm {
  std::vector<SumCell> cells;
};

/// Sums each cell over its trailing variables. Throws NotSummable when an
/// infinite sum does not converge, and DecompositionUnsupported when the
/// residue splitting would exceed internal limits.
ClosedForm sum_over_trailing(const std::vector<SumCell>& cells, std::size_t outer);

/// Value of a fully summed closed form (outer = 0).
QMotElem closed_value(const ClosedForm& f);

/// Extreme rays (primitive integer vectors) of {r : homogeneous part of every
/// inequality restricted to the given coordinates >= 0}, other coordinates
/// held at zero.
std::vector<std::vector<Integer>> recession_rays(const Region& r, const std::vector<std::size_t>& coords);

/// Vertices of the polyhedron cut out by the inequalities (congruences are
/// ignored). The polyhedron must be pointed.
std::vector<std::vector<Rational>> vertices(const Region& r);

/// Renders a direction like "i", "i+j" or "2*i+j".
std::string direction_name(const std::vector<Integer>& ray, const std::vector<std::string>& names);

/// Binomial C(x, k) as a polynomial in one affine argument.
MultiPoly binomial_poly(const Affine& x, unsigned k);

} // namespace motint
