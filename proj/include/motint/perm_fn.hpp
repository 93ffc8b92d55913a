#pragma once

#include "motint/fat_model.hpp"
#include "motint/numeric.hpp"

#include <set>

namespace motint {

/// Compares two families level by level on a box large enough to see both
/// tails.
bool same_levels(const SimplicialFamily& a, const SimplicialFamily& b);

/// Declared sub-sieve, given by point ids per object and applied at every
/// level of a family.
struct OpenSet {
  std::string name;
  std::vector<std::set<std::string>> points; // per object

  static OpenSet whole(const SimplicialFamily& fam, std::string name = "whole");
  /// Restriction of every level; fails with a witness when a level is not
  /// closed under transitions.
  std::optional<Witness> check(const SimplicialFamily& fam) const;
  SimplicialFamily apply(const SimplicialFamily& fam) const;
};

/// N-valued function on the points of a family, stored on the listed box
/// (the tail repeats the boundary values).
class PermFn {
public:
  using Values = std::map<SimplicialFamily::Index, std::vector<std::vector<Integer>>>;

  PermFn() = default;
  /// Shape-checked candidate; permissibility is not enforced here.
  PermFn(SimplicialFamily base, Values values);
  /// Candidate plus permissibility check; throws Error(Domain) with the witness.
  static PermFn make(SimplicialFamily base, Values values);
  static PermFn constant(const SimplicialFamily& base, const Integer& n);

  const SimplicialFamily& base() const { return base_; }
  const Values& values() const { return values_; }
  /// Value at a point; throws Error(Domain) when the point is absent.
  Integer at(const SimplicialFamily::Index& idx, int obj, const std::string& point) const;
  Integer max_value() const;

  friend bool operator==(const PermFn& a, const PermFn& b) { return a.base_ == b.base_ && a.values_ == b.values_; }

  std::string to_string() const;

private:
  SimplicialFamily base_;
  Values values_;
};

/// Compatibility along embeddings and the levelwise sieve condition, with a
/// counterexample (morphism, point) on failure.
std::optional<Witness> is_permissible(const PermFn& f);

PermFn fn_add(const PermFn& f, const PermFn& g);
PermFn fn_mul(const PermFn& f, const PermFn& g);

/// Level sets f^-1(n) as a family with one extra trailing index (empty tail).
SimplicialFamily graph(const PermFn& f);
/// Union over t of Gf(t) and Gg(n - t) intersected, built from the graphs alone.
SimplicialFamily graph_sum(const SimplicialFamily& gf, const SimplicialFamily& gg);
/// Every point of every base level lies in exactly one graph level.
std::optional<Witness> check_partition(const SimplicialFamily& base, const SimplicialFamily& g);
/// Reads a function back from a graph family.
PermFn from_graph(const SimplicialFamily& base, const SimplicialFamily& g);

/// Class of the pair (pos, neg).
struct GrothElem {
  PermFn pos, neg;
  Integer at(const SimplicialFamily::Index& idx, int obj, const std::string& point) const {
    return pos.at(idx, obj, point) - neg.at(idx, obj, point);
  }
};
GrothElem groth_add(const GrothElem& a, const GrothElem& b);
GrothElem groth_mul(const GrothElem& a, const GrothElem& b);
bool groth_eq(const GrothElem& a, const GrothElem& b);

PermFn restrict(const PermFn& f, const OpenSet& u);
/// The unique function on base restricting to parts[k] on cover[k]; throws
/// Error(Gluing) with a witness point when parts disagree or leave a point
/// uncovered.
PermFn glue(const SimplicialFamily& base, const std::vector<OpenSet>& cover, const std::vector<PermFn>& parts);

PermFn arc_fn(int m, const PermFn& f);

/// Element of the colimit of function rings along a limit chain.
struct ColimitElem {
  std::size_t level = 0;
  PermFn fn;
};
ColimitElem colimit_inject(const LimitChain& chain, std::size_t level, const PermFn& g);
/// Image one step up the chain, along the connecting maps.
ColimitElem colimit_push(const LimitChain& chain, const ColimitElem& x);
bool colimit_eq(const LimitChain& chain, const ColimitElem& x, const ColimitElem& y);

} // namespace motint
