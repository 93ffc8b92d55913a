#pragma once

#include "motint/errors.hpp"

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace motint {

struct Morphism {
  std::string name;
  int from = 0;
  int to = 0;
  bool embedding = false;
  bool identity = false;
};

/// Declarative description of a finite fat-point category, validated by
/// FatModel::build.
struct FatModelSpec {
  struct Arrow {
    std::string name, from, to;
    bool embedding = false;
  };
  struct Composite {
    std::string g, f, result; // g o f = result
  };
  struct TensorSpec {
    std::string unit;
    std::vector<std::array<std::string, 3>> objects; // a (x) b = c
    std::vector<std::array<std::string, 3>> arrows;  // f (x) g = h, identities as id_<obj>
  };

  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<Composite> compose;
  bool thin = false; // composition and tensor on arrows inferred from uniqueness
  std::optional<TensorSpec> tensor;
};

/// Finite category of fat points with identities, a composition table, a
/// designated class of embeddings and an optional tensor.
class FatModel {
public:
  /// Validates composition closure, associativity, identities, closure of
  /// embeddings, and the tensor unit and associativity. Throws Error(Model).
  static std::shared_ptr<const FatModel> build(const FatModelSpec& spec);

  std::size_t object_count() const { return objects_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }
  const std::string& object_name(int o) const { return objects_[static_cast<std::size_t>(o)]; }
  const Morphism& morphism(int m) const { return morphisms_[static_cast<std::size_t>(m)]; }
  int object(const std::string& name) const;   // throws Error(Model) when unknown
  int morphism_id(const std::string& name) const;
  int identity(int o) const { return identities_[static_cast<std::size_t>(o)]; }

  /// g o f, or -1 when not composable.
  int compose(int g, int f) const { return compose_[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)]; }

  /// n <= m: an embedding n -> m exists.
  bool leq(int n, int m) const { return order_[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)]; }
  /// Some embedding n -> m, or -1.
  int embedding_between(int n, int m) const;

  bool has_tensor() const { return tensor_unit_ >= 0; }
  int tensor_unit() const { return tensor_unit_; }
  /// a (x) b, or -1 when not declared.
  int tensor(int a, int b) const;
  /// f (x) g for arrows; throws Error(Model) when undefined.
  int tensor_arrow(int f, int g) const;

private:
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<int> identities_;
  std::vector<std::vector<int>> compose_;
  std::vector<std::vector<bool>> order_;
  int tensor_unit_ = -1;
  std::vector<std::vector<int>> tensor_obj_;
  std::map<std::pair<int, int>, int> tensor_arrow_;
  std::map<std::string, int> object_index_, morphism_index_;
  bool thin_ = false;
};

using ModelPtr = std::shared_ptr<const FatModel>;

/// A failed functoriality or compatibility check.
struct Witness {
  std::string message;
};

/// Per-object finite point sets with transition maps j*: X(to) -> X(from)
/// for every morphism j: from -> to.
class Sieve {
public:
  Sieve() = default;
  explicit Sieve(ModelPtr model); // empty sieve

  /// points[o] lists point ids at object o; maps[{morphism name}] gives
  /// j* as pairs (x in X(to), image in X(from)). Identities may be omitted.
  static Sieve build(ModelPtr model, const std::vector<std::vector<std::string>>& points,
                     const std::map<std::string, std::map<std::string, std::string>>& maps);

  const ModelPtr& model() const { return model_; }
  const std::vector<std::string>& points(int o) const { return points_[static_cast<std::size_t>(o)]; }
  /// Index of a point id at object o, or -1.
  int index_of(int o, const std::string& id) const;
  bool contains(int o, const std::string& id) const { return index_of(o, id) >= 0; }
  /// j*(x) for x an index into X(to(j)); result indexes X(from(j)).
  int pull(int morphism, int x) const { return maps_[static_cast<std::size_t>(morphism)][static_cast<std::size_t>(x)]; }
  std::size_t size() const;
  bool is_empty() const { return size() == 0; }

  /// Exhaustive identity and composition check with a counterexample.
  std::optional<Witness> check_functor() const;

  /// Sub-sieve on the selected points (keep[o][x]); fails with a witness
  /// when a transition leaves the selection.
  std::optional<Witness> restrict_check(const std::vector<std::vector<bool>>& keep) const;
  Sieve restrict(const std::vector<std::vector<bool>>& keep) const;

  friend bool operator==(const Sieve& a, const Sieve& b);

  /// Stable multi-line rendering.
  std::string to_string() const;

  /// Point ids sorted per object; transition maps by morphism name.
  using MapTable = std::map<std::string, std::map<std::string, std::string>>;
  MapTable map_table() const;

private:
  ModelPtr model_;
  std::vector<std::vector<std::string>> points_;
  std::vector<std::vector<int>> maps_;
};

enum class SetOp { Union, Intersection, Product, DisjointUnion };
Sieve set_op(const Sieve& a, const Sieve& b, SetOp op);

/// (arc_m X)(n) = X(m (x) n) with transitions (id_m (x) j)*.
Sieve arc(int m, const Sieve& s);

enum class TailKind { Constant, Empty, None };
const char* tail_name(TailKind k);

/// N^n-indexed family of sieves on one model, listed on the box
/// [0, bound_c] per coordinate and extended by a per-coordinate tail.
class SimplicialFamily {
public:
  using Index = std::vector<long>;

  SimplicialFamily() = default;
  SimplicialFamily(ModelPtr model, std::vector<long> bound, std::vector<TailKind> tail, std::map<Index, Sieve> levels);
  static SimplicialFamily constant(const Sieve& s); // dimension 0

  const ModelPtr& model() const { return model_; }
  std::size_t dim() const { return bound_.size(); }
  const std::vector<long>& bound() const { return bound_; }
  const std::vector<TailKind>& tail() const { return tail_; }

  /// Sieve at any index; throws Error(Domain) beyond a coordinate without tail.
  Sieve level(const Index& idx) const;
  /// Index inside the box holding the same sieve, or nullopt when the level
  /// is empty by the tail.
  std::optional<Index> representative(const Index& idx) const;
  bool covers(const Index& idx) const;

  /// Every index of the box [0, bound].
  std::vector<Index> box() const;

  /// Fixes the last sigma.size() coordinates.
  SimplicialFamily tau(const Index& sigma) const;

  SimplicialFamily arc(int m) const;
  std::optional<Witness> check_functor() const;

  friend bool operator==(const SimplicialFamily& a, const SimplicialFamily& b);

private:
  ModelPtr model_;
  std::vector<long> bound_;
  std::vector<TailKind> tail_;
  std::map<Index, Sieve> levels_; // every index of the box
};

std::string index_to_string(const SimplicialFamily::Index& idx);

/// Ascending chain m_0 <= ... <= m_t with levels arc(m_k, base).
struct LimitChain {
  SimplicialFamily base;
  std::vector<int> chain;

  /// Validates the chain order and the tensor data needed for the
  /// connecting maps. Throws Error(Model).
  void validate() const;
  SimplicialFamily level(std::size_t k) const { return base.arc(chain[k]); }
  /// Morphism e_k (x) id_n : m_k (x) n -> m_{k+1} (x) n.
  int connecting(std::size_t k, int n) const;
};

} // namespace motint
