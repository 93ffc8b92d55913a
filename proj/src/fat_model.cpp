#include "motint/fat_model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace motint {

namespace {

[[noreturn]] void model_error(const std::string& what) { fail(ErrorKind::Model, what); }

} // namespace

int FatModel::object(const std::string& name) const {
  auto it = object_index_.find(name);
  if (it == object_index_.end()) model_error("unknown object '" + name + "'");
  return it->second;
}

int FatModel::morphism_id(const std::string& name) const {
  auto it = morphism_index_.find(name);
  if (it == morphism_index_.end()) model_error("unknown morphism '" + name + "'");
  return it->second;
}

int FatModel::embedding_between(int n, int m) const {
  for (std::size_t k = 0; k < morphisms_.size(); ++k) {
    const Morphism& f = morphisms_[k];
    if (f.embedding && f.from == n && f.to == m) return static_cast<int>(k);
  }
  return -1;
}

int FatModel::tensor(int a, int b) const {
  if (!has_tensor()) return -1;
  return tensor_obj_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

int FatModel::tensor_arrow(int f, int g) const {
  if (!has_tensor()) model_error("the model declares no tensor");
  auto it = tensor_arrow_.find({f, g});
  if (it == tensor_arrow_.end())
    model_error("tensor of arrows " + morphism(f).name + " and " + morphism(g).name + " is not declared");
  return it->second;
}

std::shared_ptr<const FatModel> FatModel::build(const FatModelSpec& spec) {
  auto m = std::make_shared<FatModel>();
  m->thin_ = spec.thin;
  if (spec.objects.empty()) model_error("a model needs at least one object");
  for (const auto& o : spec.objects) {
    if (o.empty()) model_error("object names must be nonempty");
    if (!m->object_index_.emplace(o, static_cast<int>(m->objects_.size())).second) model_error("duplicate object '" + o + "'");
    m->objects_.push_back(o);
  }
  for (std::size_t o = 0; o < m->objects_.size(); ++o) {
    Morphism id{"id_" + m->objects_[o], static_cast<int>(o), static_cast<int>(o), true, true};
    m->morphism_index_[id.name] = static_cast<int>(m->morphisms_.size());
    m->identities_.push_back(static_cast<int>(m->morphisms_.size()));
    m->morphisms_.push_back(id);
  }
  for (const auto& a : spec.arrows) {
    if (a.name.empty()) model_error("morphism names must be nonempty");
    Morphism f{a.name, m->object(a.from), m->object(a.to), a.embedding, false};
    if (!m->morphism_index_.emplace(a.name, static_cast<int>(m->morphisms_.size())).second)
      model_error("duplicate morphism '" + a.name + "'");
    m->morphisms_.push_back(f);
  }

  const std::size_t nm = m->morphisms_.size();
  const std::size_t no = m->objects_.size();
  m->compose_.assign(nm, std::vector<int>(nm, -1));

  if (spec.thin) {
    std::map<std::pair<int, int>, int> between;
    for (std::size_t k = 0; k < nm; ++k) {
      const Morphism& f = m->morphisms_[k];
      if (!between.emplace(std::make_pair(f.from, f.to), static_cast<int>(k)).second)
        model_error("thin model has two morphisms " + m->objects_[static_cast<std::size_t>(f.from)] + " -> " +
                    m->objects_[static_cast<std::size_t>(f.to)]);
    }
    for (std::size_t g = 0; g < nm; ++g)
      for (std::size_t f = 0; f < nm; ++f) {
        if (m->morphisms_[f].to != m->morphisms_[g].from) continue;
        auto it = between.find({m->morphisms_[f].from, m->morphisms_[g].to});
        if (it == between.end())
          model_error("composition " + m->morphisms_[g].name + " o " + m->morphisms_[f].name + " has no morphism to land in");
        m->compose_[g][f] = it->second;
      }
  } else {
    for (std::size_t k = 0; k < nm; ++k) {
      const Morphism& f = m->morphisms_[k];
      m->compose_[k][static_cast<std::size_t>(m->identities_[static_cast<std::size_t>(f.from)])] = static_cast<int>(k);
      m->compose_[static_cast<std::size_t>(m->identities_[static_cast<std::size_t>(f.to)])][k] = static_cast<int>(k);
    }
    for (const auto& c : spec.compose) {
      int g = m->morphism_id(c.g), f = m->morphism_id(c.f), h = m->morphism_id(c.result);
      const Morphism &mg = m->morphism(g), &mf = m->morphism(f), &mh = m->morphism(h);
      if (mf.to != mg.from) model_error("composition " + c.g + " o " + c.f + " is not composable");
      if (mh.from != mf.from || mh.to != mg.to)
        model_error("composition " + c.g + " o " + c.f + " = " + c.result + " has the wrong source or target");
      int& slot = m->compose_[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)];
      if (slot >= 0 && slot != h) model_error("composition " + c.g + " o " + c.f + " is declared twice");
      slot = h;
    }
    for (std::size_t g = 0; g < nm; ++g)
      for (std::size_t f = 0; f < nm; ++f)
        if (m->morphisms_[f].to == m->morphisms_[g].from && m->compose_[g][f] < 0)
          model_error("composition " + m->morphisms_[g].name + " o " + m->morphisms_[f].name + " is not declared");
  }

  for (std::size_t h = 0; h < nm; ++h)
    for (std::size_t g = 0; g < nm; ++g) {
      if (m->morphisms_[g].to != m->morphisms_[h].from) continue;
      for (std::size_t f = 0; f < nm; ++f) {
        if (m->morphisms_[f].to != m->morphisms_[g].from) continue;
        int left = m->compose_[h][static_cast<std::size_t>(m->compose_[g][f])];
        int right = m->compose_[static_cast<std::size_t>(m->compose_[h][g])][f];
        if (left != right)
          model_error("composition is not associative on " + m->morphisms_[h].name + ", " + m->morphisms_[g].name + ", " +
                      m->morphisms_[f].name);
      }
    }
  for (std::size_t g = 0; g < nm; ++g)
    for (std::size_t f = 0; f < nm; ++f) {
      int h = m->compose_[g][f];
      if (h >= 0 && m->morphisms_[g].embedding && m->morphisms_[f].embedding && !m->morphisms_[static_cast<std::size_t>(h)].embedding)
        model_error("embeddings are not closed under composition: " + m->morphisms_[g].name + " o " + m->morphisms_[f].name);
    }

  m->order_.assign(no, std::vector<bool>(no, false));
  for (const auto& f : m->morphisms_)
    if (f.embedding) m->order_[static_cast<std::size_t>(f.from)][static_cast<std::size_t>(f.to)] = true;

  if (spec.tensor) {
    const auto& t = *spec.tensor;
    m->tensor_unit_ = m->object(t.unit);
    m->tensor_obj_.assign(no, std::vector<int>(no, -1));
    for (const auto& [a, b, c] : t.objects) {
      int& slot = m->tensor_obj_[static_cast<std::size_t>(m->object(a))][static_cast<std::size_t>(m->object(b))];
      int r = m->object(c);
      if (slot >= 0 && slot != r) model_error("tensor " + a + " (x) " + b + " is declared twice");
      slot = r;
    }
    const auto u = static_cast<std::size_t>(m->tensor_unit_);
    for (std::size_t a = 0; a < no; ++a) {
      for (int* slot : {&m->tensor_obj_[u][a], &m->tensor_obj_[a][u]}) {
        if (*slot >= 0 && *slot != static_cast<int>(a))
          model_error("tensor unit " + t.unit + " does not act trivially on " + m->objects_[a]);
        *slot = static_cast<int>(a);
      }
    }
    for (std::size_t a = 0; a < no; ++a)
      for (std::size_t b = 0; b < no; ++b)
        for (std::size_t c = 0; c < no; ++c) {
          int ab = m->tensor_obj_[a][b], bc = m->tensor_obj_[b][c];
          if (ab < 0 || bc < 0) continue;
          int l = m->tensor_obj_[static_cast<std::size_t>(ab)][c], r = m->tensor_obj_[a][static_cast<std::size_t>(bc)];
          if (l >= 0 && r >= 0 && l != r)
            model_error("tensor is not associative on " + m->objects_[a] + ", " + m->objects_[b] + ", " + m->objects_[c]);
        }

    auto set_arrow = [&](int f, int g, int h) {
      const Morphism &mf = m->morphism(f), &mg = m->morphism(g), &mh = m->morphism(h);
      int src = m->tensor(mf.from, mg.from), dst = m->tensor(mf.to, mg.to);
      if (src < 0 || dst < 0 || mh.from != src || mh.to != dst)
        model_error("tensor " + mf.name + " (x) " + mg.name + " = " + mh.name + " has the wrong source or target");
      auto [it, fresh] = m->tensor_arrow_.emplace(std::make_pair(f, g), h);
      if (!fresh && it->second != h) model_error("tensor " + mf.name + " (x) " + mg.name + " is declared twice");
    };
    for (std::size_t a = 0; a < no; ++a)
      for (std::size_t b = 0; b < no; ++b) {
        int ab = m->tensor_obj_[a][b];
        if (ab >= 0) set_arrow(m->identities_[a], m->identities_[b], m->identities_[static_cast<std::size_t>(ab)]);
      }
    for (std::size_t k = 0; k < nm; ++k) {
      set_arrow(m->identities_[u], static_cast<int>(k), static_cast<int>(k));
      set_arrow(static_cast<int>(k), m->identities_[u], static_cast<int>(k));
    }
    for (const auto& [f, g, h] : t.arrows) set_arrow(m->morphism_id(f), m->morphism_id(g), m->morphism_id(h));
    if (spec.thin) {
      // The arrow f (x) g is forced whenever both tensors of objects exist.
      for (std::size_t f = 0; f < nm; ++f)
        for (std::size_t g = 0; g < nm; ++g) {
          const Morphism &mf = m->morphisms_[f], &mg = m->morphisms_[g];
          int src = m->tensor(mf.from, mg.from), dst = m->tensor(mf.to, mg.to);
          if (src < 0 || dst < 0) continue;
          int h = -1;
          for (std::size_t k = 0; k < nm; ++k)
            if (m->morphisms_[k].from == src && m->morphisms_[k].to == dst) h = static_cast<int>(k);
          if (h < 0)
            model_error("no morphism " + m->objects_[static_cast<std::size_t>(src)] + " -> " +
                        m->objects_[static_cast<std::size_t>(dst)] + " for the tensor of " + mf.name + " and " + mg.name);
          set_arrow(static_cast<int>(f), static_cast<int>(g), h);
        }
    }
  }
  return m;
}

Sieve::Sieve(ModelPtr model) : model_(std::move(model)) {
  points_.assign(model_->object_count(), {});
  maps_.assign(model_->morphism_count(), {});
}

Sieve Sieve::build(ModelPtr model, const std::vector<std::vector<std::string>>& points, const MapTable& maps) {
  Sieve s(model);
  if (points.size() != model->object_count()) fail(ErrorKind::Model, "sieve must list points for every object");
  for (std::size_t o = 0; o < points.size(); ++o) {
    auto sorted = points[o];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail(ErrorKind::Model, "duplicate point at object " + model->object_name(static_cast<int>(o)));
    s.points_[o] = std::move(sorted);
  }
  for (const auto& [name, table] : maps) model->morphism_id(name);
  for (std::size_t k = 0; k < model->morphism_count(); ++k) {
    const Morphism& j = model->morphism(static_cast<int>(k));
    const auto& dst = s.points_[static_cast<std::size_t>(j.to)];
    auto& out = s.maps_[k];
    out.assign(dst.size(), -1);
    auto it = maps.find(j.name);
    for (std::size_t x = 0; x < dst.size(); ++x) {
      std::string image;
      if (it != maps.end() && it->second.count(dst[x])) {
        image = it->second.at(dst[x]);
      } else if (j.identity) {
        image = dst[x];
      } else {
        fail(ErrorKind::Model, "transition " + j.name + "* is not defined at point " + dst[x]);
      }
      int y = s.index_of(j.from, image);
      if (y < 0)
        fail(ErrorKind::Model, "transition " + j.name + "* sends " + dst[x] + " to " + image + ", which is not a point of " +
                                   model->object_name(j.from));
      out[x] = y;
    }
    if (it != maps.end())
      for (const auto& [x, y] : it->second)
        if (s.index_of(j.to, x) < 0)
          fail(ErrorKind::Model, "transition " + j.name + "* is given at " + x + ", which is not a point of " + model->object_name(j.to));
  }
  return s;
}

int Sieve::index_of(int o, const std::string& id) const {
  const auto& p = points(o);
  auto it = std::lower_bound(p.begin(), p.end(), id);
  return it != p.end() && *it == id ? static_cast<int>(it - p.begin()) : -1;
}

std::size_t Sieve::size() const {
  std::size_t n = 0;
  for (const auto& p : points_) n += p.size();
  return n;
}

std::optional<Witness> Sieve::check_functor() const {
  const FatModel& m = *model_;
  for (std::size_t o = 0; o < m.object_count(); ++o) {
    int id = m.identity(static_cast<int>(o));
    for (std::size_t x = 0; x < points_[o].size(); ++x)
      if (pull(id, static_cast<int>(x)) != static_cast<int>(x))
        return Witness{"identity " + m.morphism(id).name + "* moves point " + points_[o][x]};
  }
  for (std::size_t g = 0; g < m.morphism_count(); ++g)
    for (std::size_t f = 0; f < m.morphism_count(); ++f) {
      int h = m.compose(static_cast<int>(g), static_cast<int>(f));
      if (h < 0) continue;
      const Morphism& mg = m.morphism(static_cast<int>(g));
      const Morphism& mf = m.morphism(static_cast<int>(f));
      const auto& top = points_[static_cast<std::size_t>(mg.to)];
      for (std::size_t x = 0; x < top.size(); ++x) {
        int lhs = pull(h, static_cast<int>(x));
        int rhs = pull(static_cast<int>(f), pull(static_cast<int>(g), static_cast<int>(x)));
        if (lhs != rhs) {
          const auto& bottom = points_[static_cast<std::size_t>(mf.from)];
          return Witness{"(" + mg.name + " o " + mf.name + ")* differs from " + mf.name + "* o " + mg.name + "* at point " + top[x] +
                         ": " + bottom[static_cast<std::size_t>(lhs)] + " vs " + bottom[static_cast<std::size_t>(rhs)]};
        }
      }
    }
  return std::nullopt;
}

std::optional<Witness> Sieve::restrict_check(const std::vector<std::vector<bool>>& keep) const {
  const FatModel& m = *model_;
  for (std::size_t k = 0; k < m.morphism_count(); ++k) {
    const Morphism& j = m.morphism(static_cast<int>(k));
    const auto& kt = keep[static_cast<std::size_t>(j.to)];
    const auto& kf = keep[static_cast<std::size_t>(j.from)];
    for (std::size_t x = 0; x < kt.size(); ++x) {
      if (!kt[x]) continue;
      auto y = static_cast<std::size_t>(pull(static_cast<int>(k), static_cast<int>(x)));
      if (!kf[y])
        return Witness{"transition " + j.name + "* sends " + points_[static_cast<std::size_t>(j.to)][x] + " to " +
                       points_[static_cast<std::size_t>(j.from)][y] + ", outside the selection"};
    }
  }
  return std::nullopt;
}

Sieve Sieve::restrict(const std::vector<std::vector<bool>>& keep) const {
  if (auto w = restrict_check(keep)) fail(ErrorKind::Domain, w->message);
  std::vector<std::vector<std::string>> pts(points_.size());
  for (std::size_t o = 0; o < points_.size(); ++o)
    for (std::size_t x = 0; x < points_[o].size(); ++x)
      if (keep[o][x]) pts[o].push_back(points_[o][x]);
  MapTable maps = map_table();
  for (auto& [name, table] : maps) {
    const Morphism& j = model_->morphism(model_->morphism_id(name));
    for (auto it = table.begin(); it != table.end();)
      it = keep[static_cast<std::size_t>(j.to)][static_cast<std::size_t>(index_of(j.to, it->first))] ? std::next(it) : table.erase(it);
  }
  return build(model_, pts, maps);
}

Sieve::MapTable Sieve::map_table() const {
  MapTable out;
  for (std::size_t k = 0; k < maps_.size(); ++k) {
    const Morphism& j = model_->morphism(static_cast<int>(k));
    auto& table = out[j.name];
    const auto& dst = points_[static_cast<std::size_t>(j.to)];
    const auto& src = points_[static_cast<std::size_t>(j.from)];
    for (std::size_t x = 0; x < dst.size(); ++x) table[dst[x]] = src[static_cast<std::size_t>(maps_[k][x])];
  }
  return out;
}

bool operator==(const Sieve& a, const Sieve& b) {
  return a.model_ == b.model_ && a.points_ == b.points_ && a.maps_ == b.maps_;
}

std::string Sieve::to_string() const {
  std::ostringstream os;
  for (std::size_t o = 0; o < points_.size(); ++o) {
    os << model_->object_name(static_cast<int>(o)) << ": {";
    for (std::size_t x = 0; x < points_[o].size(); ++x) os << (x ? ", " : "") << points_[o][x];
    os << "}\n";
  }
  return os.str();
}

Sieve set_op(const Sieve& a, const Sieve& b, SetOp op) {
  if (a.model() != b.model()) fail(ErrorKind::Value, "sieves live on different models");
  const ModelPtr& m = a.model();
  std::vector<std::vector<std::string>> pts(m->object_count());
  Sieve::MapTable maps;
  auto ta = a.map_table(), tb = b.map_table();

  switch (op) {
    case SetOp::Union:
    case SetOp::Intersection: {
      bool uni = op == SetOp::Union;
      for (std::size_t o = 0; o < pts.size(); ++o) {
        std::set<std::string> s;
        for (const auto& x : a.points(static_cast<int>(o)))
          if (uni || b.contains(static_cast<int>(o), x)) s.insert(x);
        if (uni) s.insert(b.points(static_cast<int>(o)).begin(), b.points(static_cast<int>(o)).end());
        pts[o].assign(s.begin(), s.end());
      }
      for (std::size_t k = 0; k < m->morphism_count(); ++k) {
        const Morphism& j = m->morphism(static_cast<int>(k));
        auto& out = maps[j.name];
        for (const auto& x : pts[static_cast<std::size_t>(j.to)]) {
          auto ia = ta[j.name].find(x), ib = tb[j.name].find(x);
          if (ia != ta[j.name].end() && ib != tb[j.name].end() && ia->second != ib->second)
            fail(ErrorKind::Value, "sieves disagree on " + j.name + "* at point " + x + " (no common ambient)");
          out[x] = ia != ta[j.name].end() ? ia->second : ib->second;
        }
      }
      break;
    }
    case SetOp::Product:
      for (std::size_t o = 0; o < pts.size(); ++o)
        for (const auto& x : a.points(static_cast<int>(o)))
          for (const auto& y : b.points(static_cast<int>(o))) pts[o].push_back("(" + x + "," + y + ")");
      for (std::size_t k = 0; k < m->morphism_count(); ++k) {
        const Morphism& j = m->morphism(static_cast<int>(k));
        for (const auto& x : a.points(j.to))
          for (const auto& y : b.points(j.to)) maps[j.name]["(" + x + "," + y + ")"] = "(" + ta[j.name][x] + "," + tb[j.name][y] + ")";
      }
      break;
    case SetOp::DisjointUnion:
      for (std::size_t o = 0; o < pts.size(); ++o) {
        for (const auto& x : a.points(static_cast<int>(o))) pts[o].push_back("(0," + x + ")");
        for (const auto& y : b.points(static_cast<int>(o))) pts[o].push_back("(1," + y + ")");
      }
      for (std::size_t k = 0; k < m->morphism_count(); ++k) {
        const Morphism& j = m->morphism(static_cast<int>(k));
        for (const auto& x : a.points(j.to)) maps[j.name]["(0," + x + ")"] = "(0," + ta[j.name][x] + ")";
        for (const auto& y : b.points(j.to)) maps[j.name]["(1," + y + ")"] = "(1," + tb[j.name][y] + ")";
      }
      break;
  }
  return Sieve::build(m, pts, maps);
}

namespace {

void require_tensor_column(const FatModel& m, int obj) {
  if (!m.has_tensor()) fail(ErrorKind::Model, "the arc operator needs a model with a tensor");
  for (std::size_t n = 0; n < m.object_count(); ++n)
    if (m.tensor(obj, static_cast<int>(n)) < 0)
      fail(ErrorKind::Model, "tensor " + m.object_name(obj) + " (x) " + m.object_name(static_cast<int>(n)) + " is not declared");
}

} // namespace

Sieve arc(int obj, const Sieve& s) {
  const ModelPtr& mp = s.model();
  const FatModel& m = *mp;
  require_tensor_column(m, obj);
  std::vector<std::vector<std::string>> pts(m.object_count());
  for (std::size_t n = 0; n < pts.size(); ++n) pts[n] = s.points(m.tensor(obj, static_cast<int>(n)));
  Sieve::MapTable maps;
  int id = m.identity(obj);
  for (std::size_t k = 0; k < m.morphism_count(); ++k) {
    const Morphism& j = m.morphism(static_cast<int>(k));
    int h = m.tensor_arrow(id, static_cast<int>(k));
    const Morphism& mh = m.morphism(h);
    auto& out = maps[j.name];
    const auto& dst = s.points(mh.to);
    for (std::size_t x = 0; x < dst.size(); ++x) out[dst[x]] = s.points(mh.from)[static_cast<std::size_t>(s.pull(h, static_cast<int>(x)))];
  }
  return Sieve::build(mp, pts, maps);
}

const char* tail_name(TailKind k) {
  switch (k) {
    case TailKind::Constant: return "constant";
    case TailKind::Empty: return "empty";
    case TailKind::None: return "none";
  }
  return "?";
}

std::string index_to_string(const SimplicialFamily::Index& idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
  return s + ")";
}

SimplicialFamily::SimplicialFamily(ModelPtr model, std::vector<long> bound, std::vector<TailKind> tail, std::map<Index, Sieve> levels)
    : model_(std::move(model)), bound_(std::move(bound)), tail_(std::move(tail)), levels_(std::move(levels)) {
  if (bound_.size() != tail_.size()) fail(ErrorKind::Model, "family needs one tail per coordinate");
  for (long b : bound_)
    if (b < 0) fail(ErrorKind::Model, "family bounds must be natural numbers");
  for (const auto& idx : box()) {
    auto it = levels_.find(idx);
    if (it == levels_.end()) fail(ErrorKind::Model, "family level " + index_to_string(idx) + " is missing");
    if (it->second.model() != model_) fail(ErrorKind::Model, "family level " + index_to_string(idx) + " lives on another model");
  }
  if (levels_.size() != box().size()) fail(ErrorKind::Model, "family lists a level outside its bound");
}

SimplicialFamily SimplicialFamily::constant(const Sieve& s) { return SimplicialFamily(s.model(), {}, {}, {{Index{}, s}}); }

std::vector<SimplicialFamily::Index> SimplicialFamily::box() const {
  std::vector<Index> out{Index{}};
  for (long b : bound_) {
    std::vector<Index> next;
    for (const auto& p : out)
      for (long v = 0; v <= b; ++v) {
        Index q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  return out;
}

bool SimplicialFamily::covers(const Index& idx) const {
  if (idx.size() != dim()) return false;
  for (std::size_t c = 0; c < idx.size(); ++c) {
    if (idx[c] < 0) return false;
    if (idx[c] > bound_[c] && tail_[c] == TailKind::None) return false;
  }
  return true;
}

std::optional<SimplicialFamily::Index> SimplicialFamily::representative(const Index& idx) const {
  if (idx.size() != dim()) fail(ErrorKind::Domain, "index " + index_to_string(idx) + " has the wrong dimension");
  if (!covers(idx)) fail(ErrorKind::Domain, "index " + index_to_string(idx) + " lies beyond the listed levels and no tail covers it");
  Index rep = idx;
  for (std::size_t c = 0; c < idx.size(); ++c) {
    if (idx[c] <= bound_[c]) continue;
    if (tail_[c] == TailKind::Empty) return std::nullopt;
    rep[c] = bound_[c];
  }
  return rep;
}

Sieve SimplicialFamily::level(const Index& idx) const {
  auto rep = representative(idx);
  if (!rep) return Sieve(model_);
  return levels_.at(*rep);
}

SimplicialFamily SimplicialFamily::tau(const Index& sigma) const {
  if (sigma.size() > dim()) fail(ErrorKind::Domain, "sigma has more coordinates than the family");
  std::size_t d = dim() - sigma.size();
  std::vector<long> bound(bound_.begin(), bound_.begin() + static_cast<long>(d));
  std::vector<TailKind> tail(tail_.begin(), tail_.begin() + static_cast<long>(d));
  Index probe(dim(), 0);
  std::copy(sigma.begin(), sigma.end(), probe.begin() + static_cast<long>(d));
  if (!covers(probe)) fail(ErrorKind::Domain, "sigma " + index_to_string(sigma) + " lies beyond the listed levels and no tail covers it");
  SimplicialFamily out;
  out.model_ = model_;
  out.bound_ = bound;
  out.tail_ = tail;
  for (const auto& idx : out.box()) {
    Index full = idx;
    full.insert(full.end(), sigma.begin(), sigma.end());
    out.levels_.emplace(idx, level(full));
  }
  return out;
}

SimplicialFamily SimplicialFamily::arc(int m) const {
  SimplicialFamily out = *this;
  for (auto& [idx, s] : out.levels_) s = motint::arc(m, s);
  return out;
}

std::optional<Witness> SimplicialFamily::check_functor() const {
  for (const auto& [idx, s] : levels_)
    if (auto w = s.check_functor()) return Witness{"level " + index_to_string(idx) + ": " + w->message};
  return std::nullopt;
}

bool operator==(const SimplicialFamily& a, const SimplicialFamily& b) {
  return a.model_ == b.model_ && a.bound_ == b.bound_ && a.tail_ == b.tail_ && a.levels_ == b.levels_;
}

void LimitChain::validate() const {
  const FatModel& m = *base.model();
  if (chain.empty()) fail(ErrorKind::Model, "a limit chain needs at least one object");
  for (int o : chain) require_tensor_column(m, o);
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    if (m.embedding_between(chain[k], chain[k + 1]) < 0)
      fail(ErrorKind::Model, "chain is not ascending: no embedding " + m.object_name(chain[k]) + " -> " + m.object_name(chain[k + 1]));
    for (std::size_t n = 0; n < m.object_count(); ++n) connecting(k, static_cast<int>(n));
  }
}

int LimitChain::connecting(std::size_t k, int n) const {
  const FatModel& m = *base.model();
  int e = m.embedding_between(chain[k], chain[k + 1]);
  if (e < 0) fail(ErrorKind::Model, "chain is not ascending at step " + std::to_string(k));
  return m.tensor_arrow(e, m.identity(n));
}

} // namespace motint
