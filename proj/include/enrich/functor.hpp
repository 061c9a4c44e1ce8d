#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "enrich/error.hpp"
#include "enrich/fincat.hpp"

namespace enrich {

struct VecHash {
  std::size_t operator()(std::vector<int> const& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6)
           + (h >> 2);
    }
    return h;
  }
};

/// Enumeration budgets shared by the functor-category machinery.
struct Limits {
  std::size_t max_functors = 200000;
  std::size_t max_arrows = 2000000;
};

/// A functor between finite categories, given by its object and arrow maps.
struct FinFunctor {
  CatPtr dom;
  CatPtr cod;
  std::vector<ObjId> obj;
  std::vector<ArrId> arr;

  ObjId operator()(ObjId o) const { return obj.at(o); }

  /// Empty string when functorial, otherwise a description of the first
  /// violated law.
  std::string violation() const {
    if (obj.size() != dom->num_objects() || arr.size() != dom->num_arrows()) {
      return "object or arrow map has the wrong size";
    }
    for (ObjId o = 0; o < static_cast<ObjId>(dom->num_objects()); ++o) {
      if (obj[o] < 0 || obj[o] >= static_cast<ObjId>(cod->num_objects())) {
        return "object " + dom->object_name(o) + " is sent outside the codomain";
      }
      if (arr[dom->identity(o)] != cod->identity(obj[o])) {
        return "identity of " + dom->object_name(o) + " is not preserved";
      }
    }
    for (ArrId a = 0; a < static_cast<ArrId>(dom->num_arrows()); ++a) {
      if (arr[a] < 0 || arr[a] >= static_cast<ArrId>(cod->num_arrows())) {
        return "arrow " + dom->arrow_name(a) + " is sent outside the codomain";
      }
      if (cod->source(arr[a]) != obj[dom->source(a)]
          || cod->target(arr[a]) != obj[dom->target(a)]) {
        return "endpoints of " + dom->arrow_name(a) + " are not preserved";
      }
    }
    for (ArrId f = 0; f < static_cast<ArrId>(dom->num_arrows()); ++f) {
      for (ArrId g : dom->out(dom->target(f))) {
        if (arr[dom->comp(g, f)] != cod->comp(arr[g], arr[f])) {
          return "composite " + dom->arrow_name(g) + " . "
                 + dom->arrow_name(f) + " is not preserved";
        }
      }
    }
    return {};
  }

  void validate() const {
    auto v = violation();
    if (!v.empty()) {
      throw Error(ErrorKind::not_functor, v);
    }
  }

  bool operator==(FinFunctor const& o) const {
    return obj == o.obj && arr == o.arr && *dom == *o.dom && *cod == *o.cod;
  }
};

inline FinFunctor identity_functor(CatPtr c) {
  FinFunctor f{c, c, {}, {}};
  for (ObjId o = 0; o < static_cast<ObjId>(c->num_objects()); ++o) {
    f.obj.push_back(o);
  }
  for (ArrId a = 0; a < static_cast<ArrId>(c->num_arrows()); ++a) {
    f.arr.push_back(a);
  }
  return f;
}

/// g∘f
inline FinFunctor compose(FinFunctor const& g, FinFunctor const& f) {
  if (!(*f.cod == *g.dom)) {
    throw Error(ErrorKind::arity_mismatch, "functors are not composable");
  }
  FinFunctor h{f.dom, g.cod, {}, {}};
  for (ObjId o : f.obj) {
    h.obj.push_back(g.obj[o]);
  }
  for (ArrId a : f.arr) {
    h.arr.push_back(g.arr[a]);
  }
  return h;
}

/// A natural transformation, one component per object of the domain.
struct NatTrans {
  FinFunctor source;
  FinFunctor target;
  std::vector<ArrId> comp;

  std::string violation() const {
    auto const& d = *source.dom;
    auto const& c = *source.cod;
    if (comp.size() != d.num_objects()) {
      return "wrong number of components";
    }
    for (ObjId o = 0; o < static_cast<ObjId>(d.num_objects()); ++o) {
      if (c.source(comp[o]) != source.obj[o]
          || c.target(comp[o]) != target.obj[o]) {
        return "component at " + d.object_name(o) + " has wrong endpoints";
      }
    }
    for (ArrId a = 0; a < static_cast<ArrId>(d.num_arrows()); ++a) {
      if (c.comp(target.arr[a], comp[d.source(a)])
          != c.comp(comp[d.target(a)], source.arr[a])) {
        return "naturality square at " + d.arrow_name(a) + " does not commute";
      }
    }
    return {};
  }

  void validate() const {
    auto v = violation();
    if (!v.empty()) {
      throw Error(ErrorKind::not_natural, v);
    }
  }
};

namespace detail {

/// Precomputed plan for enumerating functors out of a fixed domain.
struct FunctorPlan {
  // non-identity arrows in id order
  std::vector<ArrId> order;
  std::vector<int> pos;  // position in order, -1 for identities
  // for order[k]: decompositions (g, f) with both earlier in order
  std::vector<std::vector<std::pair<ArrId, ArrId>>> forced_by;
  // for order[k]: triples (g, f, h) whose last-assigned member is order[k]
  std::vector<std::vector<std::array<ArrId, 3>>> checks;

  explicit FunctorPlan(FinCat const& x) {
    auto m = static_cast<ArrId>(x.num_arrows());
    pos.assign(m, -1);
    for (ArrId a = 0; a < m; ++a) {
      if (!x.is_identity(a)) {
        pos[a] = static_cast<int>(order.size());
        order.push_back(a);
      }
    }
    forced_by.assign(order.size(), {});
    checks.assign(order.size(), {});
    for (ArrId f = 0; f < m; ++f) {
      if (x.is_identity(f)) {
        continue;
      }
      for (ArrId g : x.out(x.target(f))) {
        if (x.is_identity(g)) {
          continue;
        }
        ArrId h = x.comp(g, f);
        int last = std::max({pos[g], pos[f], pos[h]});
        if (pos[h] >= 0 && pos[h] > std::max(pos[g], pos[f])) {
          forced_by[pos[h]].push_back({g, f});
        }
        checks[last].push_back({g, f, h});
      }
    }
  }
};

}  // namespace detail

/// Calls `emit(obj_map, arr_map)` for every functor X -> A in canonical
/// (lexicographic) order. Enumeration stops early when `emit` returns false.
inline void for_each_functor(
    FinCat const& x, FinCat const& a,
    std::function<bool(std::vector<ObjId> const&, std::vector<ArrId> const&)> const&
        emit) {
  detail::FunctorPlan plan(x);
  auto nx = static_cast<int>(x.num_objects());
  auto na = static_cast<int>(a.num_objects());
  std::vector<ObjId> om(nx, -1);
  std::vector<ArrId> am(x.num_arrows(), -1);
  bool stop = false;

  auto arrows_ok = [&](int k) {
    for (auto const& t : plan.checks[k]) {
      if (a.comp(am[t[0]], am[t[1]]) != am[t[2]]) {
        return false;
      }
    }
    return true;
  };

  std::function<void(int)> assign_arrow = [&](int k) {
    if (stop) {
      return;
    }
    if (k == static_cast<int>(plan.order.size())) {
      if (!emit(om, am)) {
        stop = true;
      }
      return;
    }
    ArrId xa = plan.order[k];
    ObjId s = om[x.source(xa)];
    ObjId t = om[x.target(xa)];
    if (!plan.forced_by[k].empty()) {
      auto [g, f] = plan.forced_by[k][0];
      ArrId v = a.comp(am[g], am[f]);
      am[xa] = v;
      if (arrows_ok(k)) {
        assign_arrow(k + 1);
      }
      am[xa] = -1;
      return;
    }
    for (ArrId v : a.hom(s, t)) {
      am[xa] = v;
      if (arrows_ok(k)) {
        assign_arrow(k + 1);
      }
      if (stop) {
        break;
      }
    }
    am[xa] = -1;
  };

  std::function<void(int)> assign_object = [&](int i) {
    if (stop) {
      return;
    }
    if (i == nx) {
      for (ObjId o = 0; o < nx; ++o) {
        am[x.identity(o)] = a.identity(om[o]);
      }
      assign_arrow(0);
      return;
    }
    for (ObjId v = 0; v < na; ++v) {
      om[i] = v;
      bool ok = true;
      for (ArrId xa : x.out(i)) {
        ObjId t = x.target(xa);
        if (t <= i && a.hom(v, om[t]).empty()) {
          ok = false;
          break;
        }
      }
      if (ok) {
        for (ArrId xa : x.in(i)) {
          ObjId s = x.source(xa);
          if (s < i && a.hom(om[s], v).empty()) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        assign_object(i + 1);
      }
      if (stop) {
        break;
      }
    }
    om[i] = -1;
  };

  assign_object(0);
}

inline std::vector<FinFunctor> enumerate_functors(CatPtr x, CatPtr a,
                                                  Limits const& lim = {}) {
  std::vector<FinFunctor> out;
  for_each_functor(*x, *a, [&](auto const& om, auto const& am) {
    if (out.size() >= lim.max_functors) {
      throw Error(ErrorKind::size_bound_exceeded,
                  "more than " + std::to_string(lim.max_functors)
                      + " functors");
    }
    out.push_back(FinFunctor{x, a, om, am});
    return true;
  });
  return out;
}

/// Calls `emit(components)` for every natural transformation between the
/// functors with the given maps, in lexicographic order of components.
inline void for_each_nat_trans(
    FinCat const& x, FinCat const& a, std::span<ObjId const> fo,
    std::span<ArrId const> fa, std::span<ObjId const> go,
    std::span<ArrId const> ga,
    std::function<bool(std::vector<ArrId> const&)> const& emit) {
  auto nx = static_cast<int>(x.num_objects());
  for (ObjId o = 0; o < nx; ++o) {
    if (a.hom(fo[o], go[o]).empty()) {
      return;
    }
  }
  std::vector<ArrId> c(nx, -1);
  bool stop = false;
  std::function<void(int)> rec = [&](int i) {
    if (stop) {
      return;
    }
    if (i == nx) {
      if (!emit(c)) {
        stop = true;
      }
      return;
    }
    for (ArrId v : a.hom(fo[i], go[i])) {
      c[i] = v;
      bool ok = true;
      for (ArrId xa : x.out(i)) {
        ObjId t = x.target(xa);
        if (t <= i && a.comp(ga[xa], v) != a.comp(c[t], fa[xa])) {
          ok = false;
          break;
        }
      }
      if (ok) {
        for (ArrId xa : x.in(i)) {
          ObjId s = x.source(xa);
          if (s < i && a.comp(ga[xa], c[s]) != a.comp(v, fa[xa])) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        rec(i + 1);
      }
      if (stop) {
        break;
      }
    }
    c[i] = -1;
  };
  rec(0);
}

inline std::vector<NatTrans> enumerate_nat_trans(FinFunctor const& f,
                                                 FinFunctor const& g,
                                                 Limits const& lim = {}) {
  if (!(*f.dom == *g.dom) || !(*f.cod == *g.cod)) {
    throw Error(ErrorKind::arity_mismatch, "functors are not parallel");
  }
  std::vector<NatTrans> out;
  for_each_nat_trans(*f.dom, *f.cod, f.obj, f.arr, g.obj, g.arr,
                     [&](auto const& c) {
                       if (out.size() >= lim.max_arrows) {
                         throw Error(ErrorKind::size_bound_exceeded,
                                     "too many natural transformations");
                       }
                       out.push_back(NatTrans{f, g, c});
                       return true;
                     });
  return out;
}

/// The functor category A^X, materialized: objects are all functors X -> A
/// and arrows all natural transformations, both in canonical order.
///
/// Composition is computed on demand; to_fincat() produces a FinCat with a
/// full table when one is needed.
class FunctorCat {
 public:
  FunctorCat(CatPtr x, CatPtr a, Limits const& lim = {})
      : x_(std::move(x)), a_(std::move(a)) {
    nx_ = static_cast<int>(x_->num_objects());
    mx_ = static_cast<int>(x_->num_arrows());
    for_each_functor(*x_, *a_, [&](auto const& om, auto const& am) {
      if (num_objects() >= lim.max_functors) {
        throw Error(ErrorKind::size_bound_exceeded,
                    "functor category has more than "
                        + std::to_string(lim.max_functors) + " objects");
      }
      std::vector<int> key(om);
      key.insert(key.end(), am.begin(), am.end());
      obj_index_.emplace(key, static_cast<int>(num_objects()));
      images_.insert(images_.end(), key.begin(), key.end());
      ++n_obj_;
      return true;
    });
    auto n = static_cast<int>(num_objects());
    identity_.assign(n, -1);
    for (int f = 0; f < n; ++f) {
      for (int g = 0; g < n; ++g) {
        for_each_nat_trans(*x_, *a_, objects_of(f), arrows_of(f),
                           objects_of(g), arrows_of(g), [&](auto const& c) {
                             if (num_arrows() >= lim.max_arrows) {
                               throw Error(
                                   ErrorKind::size_bound_exceeded,
                                   "functor category has more than "
                                       + std::to_string(lim.max_arrows)
                                       + " arrows");
                             }
                             int id = static_cast<int>(num_arrows());
                             src_.push_back(f);
                             tgt_.push_back(g);
                             comps_.insert(comps_.end(), c.begin(), c.end());
                             std::vector<int> key{f, g};
                             key.insert(key.end(), c.begin(), c.end());
                             arr_index_.emplace(std::move(key), id);
                             if (f == g && identity_[f] < 0) {
                               bool ident = true;
                               for (ObjId o = 0; o < nx_; ++o) {
                                 ident = ident
                                         && c[o]
                                                == a_->identity(
                                                    objects_of(f)[o]);
                               }
                               if (ident) {
                                 identity_[f] = id;
                               }
                             }
                             return true;
                           });
      }
    }
  }

  CatPtr const& exponent() const { return x_; }
  CatPtr const& base() const { return a_; }

  std::size_t num_objects() const {
    return n_obj_;
  }
  std::size_t num_arrows() const { return src_.size(); }

  /// Object map of the functor with id `f`.
  std::span<ObjId const> objects_of(int f) const {
    if (nx_ + mx_ == 0) {
      return {};
    }
    return {images_.data() + static_cast<std::size_t>(f) * (nx_ + mx_),
            static_cast<std::size_t>(nx_)};
  }

  /// Arrow map of the functor with id `f`.
  std::span<ArrId const> arrows_of(int f) const {
    if (nx_ + mx_ == 0) {
      return {};
    }
    return {images_.data() + static_cast<std::size_t>(f) * (nx_ + mx_) + nx_,
            static_cast<std::size_t>(mx_)};
  }

  /// Components of the natural transformation with id `t`.
  std::span<ArrId const> components(int t) const {
    return {comps_.data() + static_cast<std::size_t>(t) * nx_,
            static_cast<std::size_t>(nx_)};
  }

  int source(int t) const { return src_[t]; }
  int target(int t) const { return tgt_[t]; }
  int identity(int f) const { return identity_[f]; }

  /// Id of the functor with the given maps, or -1.
  int find_object(std::span<ObjId const> om, std::span<ArrId const> am) const {
    std::vector<int> key(om.begin(), om.end());
    key.insert(key.end(), am.begin(), am.end());
    auto it = obj_index_.find(key);
    return it == obj_index_.end() ? -1 : it->second;
  }

  /// Id of the natural transformation f => g with the given components, or -1.
  int find_arrow(int f, int g, std::span<ArrId const> c) const {
    std::vector<int> key{f, g};
    key.insert(key.end(), c.begin(), c.end());
    auto it = arr_index_.find(key);
    return it == arr_index_.end() ? -1 : it->second;
  }

  /// t∘s (vertical composite).
  int compose(int t, int s) const {
    if (tgt_[s] != src_[t]) {
      return -1;
    }
    std::vector<ArrId> c(nx_);
    auto cs = components(s);
    auto ct = components(t);
    for (int o = 0; o < nx_; ++o) {
      c[o] = a_->comp(ct[o], cs[o]);
    }
    return find_arrow(src_[s], tgt_[t], c);
  }

  FinFunctor functor(int f) const {
    auto om = objects_of(f);
    auto am = arrows_of(f);
    return FinFunctor{x_, a_, {om.begin(), om.end()}, {am.begin(), am.end()}};
  }

  NatTrans nat_trans(int t) const {
    auto c = components(t);
    return NatTrans{functor(src_[t]), functor(tgt_[t]), {c.begin(), c.end()}};
  }

  std::string object_label(int f) const {
    std::string s = "[";
    auto om = objects_of(f);
    for (std::size_t i = 0; i < om.size(); ++i) {
      s += (i ? "," : "") + a_->object_name(om[i]);
    }
    bool first = true;
    auto am = arrows_of(f);
    for (ArrId xa = 0; xa < mx_; ++xa) {
      if (x_->is_identity(xa)) {
        continue;
      }
      s += first ? "|" : ",";
      first = false;
      s += a_->arrow_name(am[xa]);
    }
    return s + "]";
  }

  std::string arrow_label(int t) const {
    std::string s = object_label(src_[t]) + "=>" + object_label(tgt_[t]) + "{";
    auto c = components(t);
    for (std::size_t i = 0; i < c.size(); ++i) {
      s += (i ? "," : "") + a_->arrow_name(c[i]);
    }
    return s + "}";
  }

  /// The functor category as a FinCat with a full composition table.
  FinCat to_fincat() const {
    CatBuilder b;
    auto n = static_cast<int>(num_objects());
    for (int f = 0; f < n; ++f) {
      b.add_object(object_label(f));
    }
    for (int t = 0; t < static_cast<int>(num_arrows()); ++t) {
      b.add_arrow(arrow_label(t), src_[t], tgt_[t]);
    }
    for (int f = 0; f < n; ++f) {
      b.set_identity(f, identity_[f]);
    }
    std::vector<std::vector<int>> out(n);
    for (int t = 0; t < static_cast<int>(num_arrows()); ++t) {
      out[src_[t]].push_back(t);
    }
    for (int s = 0; s < static_cast<int>(num_arrows()); ++s) {
      for (int t : out[tgt_[s]]) {
        b.set_compose(t, s, compose(t, s));
      }
    }
    return b.build(false);
  }

 private:
  CatPtr x_;
  CatPtr a_;
  int nx_ = 0;
  int mx_ = 0;
  std::size_t n_obj_ = 0;
  std::vector<int> images_;
  std::unordered_map<std::vector<int>, int, VecHash> obj_index_;
  std::vector<int> src_;
  std::vector<int> tgt_;
  std::vector<ArrId> comps_;
  std::unordered_map<std::vector<int>, int, VecHash> arr_index_;
  std::vector<int> identity_;
};

/// The power A^X as a FinCat.
inline FinCat hom_category(CatPtr x, CatPtr a, Limits const& lim = {}) {
  return FunctorCat(std::move(x), std::move(a), lim).to_fincat();
}

/// A functor between two materialized functor categories, as plain maps.
struct PowerMap {
  std::vector<int> obj;
  std::vector<int> arr;
};

/// A^h : A^Y -> A^X, precomposition with h : X -> Y.
inline PowerMap power_map(FinFunctor const& h, FunctorCat const& ay,
                          FunctorCat const& ax) {
  auto const& x = *h.dom;
  PowerMap m;
  m.obj.resize(ay.num_objects());
  for (int f = 0; f < static_cast<int>(ay.num_objects()); ++f) {
    auto om = ay.objects_of(f);
    auto am = ay.arrows_of(f);
    std::vector<ObjId> o2(x.num_objects());
    std::vector<ArrId> a2(x.num_arrows());
    for (ObjId o = 0; o < static_cast<ObjId>(x.num_objects()); ++o) {
      o2[o] = om[h.obj[o]];
    }
    for (ArrId a = 0; a < static_cast<ArrId>(x.num_arrows()); ++a) {
      a2[a] = am[h.arr[a]];
    }
    m.obj[f] = ax.find_object(o2, a2);
  }
  m.arr.resize(ay.num_arrows());
  for (int t = 0; t < static_cast<int>(ay.num_arrows()); ++t) {
    auto c = ay.components(t);
    std::vector<ArrId> c2(x.num_objects());
    for (ObjId o = 0; o < static_cast<ObjId>(x.num_objects()); ++o) {
      c2[o] = c[h.obj[o]];
    }
    m.arr[t] = ax.find_arrow(m.obj[ay.source(t)], m.obj[ay.target(t)], c2);
  }
  return m;
}

}  // namespace enrich
