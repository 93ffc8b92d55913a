#pragma once

#include "motint/laurent.hpp"
#include "motint/perm_fn.hpp"
#include "motint/presburger.hpp"

namespace motint {

/// "i", "j", "k", "l", then "i4", "i5", ...
std::vector<std::string> index_names(std::size_t n);

struct PointRef {
  int obj = 0;
  std::string point;
  friend auto operator<=>(const PointRef&, const PointRef&) = default;
};

/// Points a piece applies to; nullopt selects every point.
using Selector = std::optional<std::set<PointRef>>;

/// Exponent given by a finite table on one coordinate followed by a
/// polynomial tail of degree >= 2, which is not expressible by affine pieces.
struct TabularExponent {
  std::size_t coord = 0;
  std::vector<Integer> table;
  IntPoly tail;
  Integer at(long i) const;
};

/// coef * weight(idx) * L^exponent(idx).
struct TotalTerm {
  QMotElem coef;
  MultiPoly weight;
  Affine exponent;
  std::optional<TabularExponent> tabular; // replaces exponent when set
};

struct TotalPiece {
  Selector sel;
  Region region; // over the family's indices
  std::vector<TotalTerm> terms;
};

/// Finite sum of pieces over the points of a simplicial family. The value at
/// (obj, point, idx) adds the terms of every piece whose selector and region
/// contain it; the point must be present in the family at idx.
class TotalFn {
public:
  TotalFn() = default;
  /// Tabular exponents with affine tails are unfolded into pieces here.
  TotalFn(SimplicialFamily base, std::vector<TotalPiece> pieces);

  static TotalFn constant(const SimplicialFamily& base, const MotElem& c);
  /// L^form on the region (zero elsewhere).
  static TotalFn exponential(const SimplicialFamily& base, const Region& region, const Affine& form);
  /// Integer-valued factor from a Grothendieck class, one piece per point and
  /// level class.
  static TotalFn from_groth(const GrothElem& g);
  /// L^alpha for a permissible exponent alpha.
  static TotalFn exponential(const PermFn& alpha);

  const SimplicialFamily& base() const { return base_; }
  const std::vector<TotalPiece>& pieces() const { return pieces_; }
  std::size_t dim() const { return base_.dim(); }

  bool present(const PointRef& p, const SimplicialFamily::Index& idx) const;
  /// Exact value in the ring; throws Error(Domain) for absent points.
  MotElem at(const PointRef& p, const SimplicialFamily::Index& idx) const;
  Rational eval(const PointRef& p, const SimplicialFamily::Index& idx, const EvalPoint& q) const;

  /// Every exponent is piecewise affine.
  bool is_presburger() const;
  /// Every point id per object over all listed levels.
  std::vector<PointRef> all_points() const;

  std::string to_string() const;

private:
  SimplicialFamily base_;
  std::vector<TotalPiece> pieces_;
};

TotalFn total_add(const TotalFn& f, const TotalFn& g);
TotalFn total_mul(const TotalFn& f, const TotalFn& g);
TotalFn total_scale(const TotalFn& f, const MotElem& c);

/// Values at every point of the base on the grid [0, bound + margin]^n,
/// compared under eq. Exact for dimension 0.
bool total_equal(const TotalFn& f, const TotalFn& g, long margin = 4);

/// Regions where a point is present, one per level class of the tails.
std::vector<Region> membership_cells(const SimplicialFamily& fam, const PointRef& p);

struct TotalPositivity {
  bool nonneg = true;
  bool certified = true; // false when some unbounded class was only sampled
  std::string detail;
};
TotalPositivity is_total_positive(const TotalFn& f);

/// Fixes the last sigma.size() indices.
TotalFn tau_total(const TotalFn& f, const SimplicialFamily::Index& sigma);

struct SummabilityCertificate {
  bool summable = true;
  std::string reason; // first failure, "NotSummable: ..."
  std::vector<std::string> verdicts;
};
/// Summability over the last k indices.
SummabilityCertificate is_summable(const TotalFn& f, std::size_t k);

struct SummationResult {
  TotalFn value; // over the remaining n - k indices
  SummabilityCertificate certificate;
};
/// Closed-form sum over the last k indices. Throws NotSummable with the
/// certificate's reason, DecompositionUnsupported for tabular exponents.
SummationResult integrate(const TotalFn& f, std::size_t k);

/// Sum over the trailing indices in [0, T)^k at a point and outer index.
Rational partial_sum(const TotalFn& f, std::size_t k, const PointRef& p, const SimplicialFamily::Index& outer, const EvalPoint& q,
                     long T);
/// Bound on |full sum - partial_sum| for the same truncation.
Rational truncation_bound(const TotalFn& f, std::size_t k, const PointRef& p, const SimplicialFamily::Index& outer,
                          const EvalPoint& q, long T);

struct WeakValue {
  PointRef point;
  TruncatedSeries series;
  TailBound expansion_tail;
  struct Rest {
    QMotElem coef;
    Rational weight;
    long exponent; // every skipped term has exponent <= this, strictly decreasing
  };
  std::vector<Rest> rest;
  /// Bound on |value at q - series at q|.
  Rational bound(const Rational& q) const;
};

struct WeakResult {
  bool presburger = true;
  std::optional<SummationResult> exact;
  std::vector<WeakValue> values; // filled when the result has dimension 0
};
/// Integration with a fallback to truncated series for tabular exponents
/// (dimension 1 summed completely).
WeakResult weak_integrate(const TotalFn& f, std::size_t k, long precision);

/// Pieces act through the selector {(n, x) : (m (x) n, x) selected}.
TotalFn arc_total(int m, const TotalFn& f);

/// Exponent pieces must be pairwise disjoint and cover N^n.
std::optional<Witness> check_exponent_partition(const std::vector<Region>& pieces, std::size_t n);

} // namespace motint
