#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "enrich/error.hpp"
#include "enrich/fincat.hpp"
#include "enrich/functor.hpp"

namespace enrich {

/// One step of a closure recipe.
struct Recipe {
  enum class Kind { seed, identity, compose, invert };
  Kind kind = Kind::seed;
  int a = -1;  // seed index, object, outer arrow g, or inverted arrow
  int b = -1;  // inner arrow f for compose
};

/// Smallest subcategory containing the seeds and closed under composition
/// and inverses of isomorphisms. Every member arrow carries one recipe,
/// chosen in breadth-first order so that recipes are shortest.
struct Closure {
  std::vector<bool> objects;
  std::vector<bool> arrows;
  std::vector<std::optional<Recipe>> recipe;
  std::vector<int> level;

  bool full() const {
    for (bool b : arrows) {
      if (!b) {
        return false;
      }
    }
    for (bool b : objects) {
      if (!b) {
        return false;
      }
    }
    return true;
  }
};

/// Closure of the seed arrows and seed objects inside `c`.
inline Closure isbell_closure(FinCat const& c, std::vector<ArrId> const& seeds,
                              std::vector<ObjId> const& seed_objects = {}) {
  Closure cl;
  auto n = static_cast<ObjId>(c.num_objects());
  auto m = static_cast<ArrId>(c.num_arrows());
  cl.objects.assign(n, false);
  cl.arrows.assign(m, false);
  cl.recipe.assign(m, std::nullopt);
  cl.level.assign(m, -1);
  std::vector<ArrId> members;
  auto add = [&](ArrId a, Recipe r, int lvl) {
    if (cl.arrows[a]) {
      return;
    }
    cl.arrows[a] = true;
    cl.recipe[a] = r;
    cl.level[a] = lvl;
    members.push_back(a);
  };
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    add(seeds[k], {Recipe::Kind::seed, static_cast<int>(k), -1}, 0);
  }
  auto touch = [&](ObjId o) {
    if (!cl.objects[o]) {
      cl.objects[o] = true;
      add(c.identity(o), {Recipe::Kind::identity, o, -1}, 0);
    }
  };
  for (ArrId s : seeds) {
    touch(c.source(s));
    touch(c.target(s));
  }
  for (ObjId o : seed_objects) {
    touch(o);
  }
  for (int lvl = 1;; ++lvl) {
    std::vector<ArrId> snapshot = members;
    std::vector<std::pair<ArrId, Recipe>> found;
    std::vector<bool> pending(m, false);
    for (ArrId f : snapshot) {
      for (ArrId g : snapshot) {
        if (c.target(f) != c.source(g)) {
          continue;
        }
        ArrId h = c.comp(g, f);
        if (!cl.arrows[h] && !pending[h]) {
          pending[h] = true;
          found.push_back({h, {Recipe::Kind::compose, g, f}});
        }
      }
    }
    for (ArrId a : snapshot) {
      if (auto inv = c.inverse(a); inv && !cl.arrows[*inv] && !pending[*inv]) {
        pending[*inv] = true;
        found.push_back({*inv, {Recipe::Kind::invert, a, -1}});
      }
    }
    if (found.empty()) {
      break;
    }
    std::sort(found.begin(), found.end(),
              [](auto const& x, auto const& y) { return x.first < y.first; });
    for (auto const& [h, r] : found) {
      add(h, r, lvl);
    }
  }
  return cl;
}

/// Replays the recipe of `target` with values in some category `v`.
/// `seed_value(k)` gives the value of seed k; `obj_value(o)` that of
/// object o. Returns nullopt if an inversion is impossible in `v`.
template <class SeedFn, class ObjFn>
std::optional<ArrId> replay(Closure const& cl, FinCat const& v, ArrId target,
                            SeedFn const& seed_value, ObjFn const& obj_value,
                            std::vector<std::optional<ArrId>>& memo) {
  if (memo.empty()) {
    memo.assign(cl.recipe.size(), std::nullopt);
  }
  if (memo[target]) {
    return memo[target];
  }
  auto const& r = *cl.recipe.at(target);
  std::optional<ArrId> out;
  switch (r.kind) {
    case Recipe::Kind::seed:
      out = seed_value(r.a);
      break;
    case Recipe::Kind::identity:
      out = v.identity(obj_value(r.a));
      break;
    case Recipe::Kind::compose: {
      auto g = replay(cl, v, r.a, seed_value, obj_value, memo);
      auto f = g ? replay(cl, v, r.b, seed_value, obj_value, memo) : g;
      if (g && f) {
        out = v.compose(*g, *f);
      }
      break;
    }
    case Recipe::Kind::invert: {
      auto a = replay(cl, v, r.a, seed_value, obj_value, memo);
      if (a) {
        out = v.inverse(*a);
      }
      break;
    }
  }
  memo[target] = out;
  return out;
}

/// Closure of the image of a functor.
inline Closure isbell_closure(FinFunctor const& f) {
  return isbell_closure(*f.cod, f.arr, f.obj);
}

/// Arrows of `c` between seed objects that every pair of functors agreeing
/// on the seeds must also agree on. Decided by the tensor criterion: d : a -> b
/// is dominated iff (d, id_a) and (id_b, d) are identified in the quotient of
/// composable pairs under (x.u, y) ~ (x, u.y) for seed arrows u.
inline std::vector<bool> dominion(FinCat const& c, std::vector<ArrId> const& seeds,
                                  std::vector<ObjId> const& seed_objects) {
  auto n = static_cast<ObjId>(c.num_objects());
  std::vector<bool> is_seed(c.num_arrows(), false);
  std::vector<bool> obj(n, false);
  for (ArrId u : seeds) {
    is_seed[u] = true;
    obj[c.source(u)] = true;
    obj[c.target(u)] = true;
  }
  for (ObjId o : seed_objects) {
    obj[o] = true;
  }
  std::vector<bool> out(c.num_arrows(), false);
  for (ObjId a = 0; a < n; ++a) {
    for (ObjId b = 0; b < n; ++b) {
      if (!obj[a] || !obj[b] || c.hom(a, b).empty()) {
        continue;
      }
      // pairs (x : m -> b, y : a -> m), indexed by (x, y)
      std::vector<std::pair<ArrId, ArrId>> pairs;
      std::map<std::pair<ArrId, ArrId>, int> index;
      for (ObjId m = 0; m < n; ++m) {
        for (ArrId y : c.hom(a, m)) {
          for (ArrId x : c.hom(m, b)) {
            index.emplace(std::pair{x, y}, static_cast<int>(pairs.size()));
            pairs.emplace_back(x, y);
          }
        }
      }
      std::vector<int> parent(pairs.size());
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](int i) {
        while (parent[i] != i) {
          parent[i] = parent[parent[i]];
          i = parent[i];
        }
        return i;
      };
      for (ArrId u : seeds) {
        ObjId s = c.source(u);
        ObjId t = c.target(u);
        for (ArrId y : c.hom(a, s)) {
          for (ArrId x : c.hom(t, b)) {
            int i = find(index.at({c.comp(x, u), y}));
            int j = find(index.at({x, c.comp(u, y)}));
            parent[i] = j;
          }
        }
      }
      ArrId ia = c.identity(a);
      ArrId ib = c.identity(b);
      for (ArrId d : c.hom(a, b)) {
        out[d] = is_seed[d]
                 || find(index.at({d, ia})) == find(index.at({ib, d}));
      }
    }
  }
  return out;
}

/// Exact epimorphism test: surjective on objects and every arrow dominated
/// by the image. A full closure implies this; the converse fails when a
/// retraction is forced without being an inverse.
inline bool is_epi(FinFunctor const& f) {
  std::vector<bool> hit(f.cod->num_objects(), false);
  for (ObjId o : f.obj) {
    hit[o] = true;
  }
  for (bool h : hit) {
    if (!h) {
      return false;
    }
  }
  auto d = dominion(*f.cod, f.arr, f.obj);
  return std::all_of(d.begin(), d.end(), [](bool b) { return b; });
}

inline bool is_injective_on_objects(FinFunctor const& f) {
  std::vector<bool> seen(f.cod->num_objects(), false);
  for (ObjId o : f.obj) {
    if (seen[o]) {
      return false;
    }
    seen[o] = true;
  }
  return true;
}

inline bool is_faithful(FinFunctor const& f) {
  auto const& d = *f.dom;
  for (ObjId a = 0; a < static_cast<ObjId>(d.num_objects()); ++a) {
    for (ObjId b = 0; b < static_cast<ObjId>(d.num_objects()); ++b) {
      auto h = d.hom(a, b);
      for (std::size_t i = 0; i < h.size(); ++i) {
        for (std::size_t j = i + 1; j < h.size(); ++j) {
          if (f.arr[h[i]] == f.arr[h[j]]) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

/// Reflects invertibility.
inline bool is_conservative(FinFunctor const& f) {
  for (ArrId a = 0; a < static_cast<ArrId>(f.dom->num_arrows()); ++a) {
    if (f.cod->inverse(f.arr[a]) && !f.dom->inverse(a)) {
      return false;
    }
  }
  return true;
}

inline bool is_strong_mono(FinFunctor const& f) {
  return is_injective_on_objects(f) && is_faithful(f) && is_conservative(f);
}

inline bool is_isomorphism(FinFunctor const& f) {
  if (f.dom->num_objects() != f.cod->num_objects()
      || f.dom->num_arrows() != f.cod->num_arrows()) {
    return false;
  }
  std::vector<bool> seen(f.cod->num_arrows(), false);
  for (ArrId a : f.arr) {
    if (seen[a]) {
      return false;
    }
    seen[a] = true;
  }
  return is_injective_on_objects(f);
}

/// (epi, strong mono) factorization f = m∘e through the closure of the image.
struct Factorization {
  FinFunctor e;
  FinFunctor m;
  Closure closure;
};

inline Factorization factorize(FinFunctor const& f) {
  Closure cl = isbell_closure(f);
  SubCat sub = subcategory(*f.cod, cl.objects, cl.arrows);
  auto mid = make_cat(std::move(sub.cat));
  std::vector<ObjId> obj_back(f.cod->num_objects(), -1);
  std::vector<ArrId> arr_back(f.cod->num_arrows(), -1);
  for (std::size_t i = 0; i < sub.obj_to_parent.size(); ++i) {
    obj_back[sub.obj_to_parent[i]] = static_cast<ObjId>(i);
  }
  for (std::size_t i = 0; i < sub.arr_to_parent.size(); ++i) {
    arr_back[sub.arr_to_parent[i]] = static_cast<ArrId>(i);
  }
  FinFunctor e{f.dom, mid, {}, {}};
  for (ObjId o : f.obj) {
    e.obj.push_back(obj_back[o]);
  }
  for (ArrId a : f.arr) {
    e.arr.push_back(arr_back[a]);
  }
  FinFunctor m{mid, f.cod, sub.obj_to_parent, sub.arr_to_parent};
  return {std::move(e), std::move(m), std::move(cl)};
}

/// A generator of a generating family: an object (a summand 1) or an arrow
/// (a summand 𝟚).
struct Generator {
  bool is_object = false;
  int id = -1;

  bool operator==(Generator const&) const = default;
};

/// A generating family S of Y; valid when e_S : Σ G_j -> Y is an
/// epimorphism. Construct with make_gamma.
struct GammaEpi {
  CatPtr y;
  std::vector<Generator> gens;
  Closure closure;

  std::string generator_name(std::size_t k) const {
    auto const& g = gens.at(k);
    return g.is_object ? y->object_name(g.id) : y->arrow_name(g.id);
  }

  /// The map e_S out of the coproduct of generators.
  FinFunctor summand_map() const {
    std::vector<FinCat> parts;
    for (auto const& g : gens) {
      parts.push_back(g.is_object ? shapes::terminal() : shapes::arrow());
    }
    auto dom = make_cat(coproduct(parts));
    FinFunctor f{dom, y, {}, {}};
    for (auto const& g : gens) {
      if (g.is_object) {
        f.obj.push_back(g.id);
        f.arr.push_back(y->identity(g.id));
      } else {
        f.obj.push_back(y->source(g.id));
        f.obj.push_back(y->target(g.id));
        f.arr.push_back(y->identity(y->source(g.id)));
        f.arr.push_back(y->identity(y->target(g.id)));
        f.arr.push_back(g.id);
      }
    }
    return f;
  }
};

inline GammaEpi validate_generating_family(CatPtr y,
                                           std::vector<Generator> gens) {
  std::vector<ArrId> seeds;
  std::vector<ObjId> objs;
  for (auto const& g : gens) {
    if (g.is_object) {
      if (g.id < 0 || g.id >= static_cast<int>(y->num_objects())) {
        throw Error(ErrorKind::unknown_object, std::to_string(g.id));
      }
      objs.push_back(g.id);
    } else {
      if (g.id < 0 || g.id >= static_cast<int>(y->num_arrows())) {
        throw Error(ErrorKind::unknown_arrow, std::to_string(g.id));
      }
      seeds.push_back(g.id);
    }
  }
  Closure cl = isbell_closure(*y, seeds, objs);
  std::optional<ArrId> missing;
  for (ArrId a = 0; a < static_cast<ArrId>(y->num_arrows()); ++a) {
    if (!cl.arrows[a] && !y->is_identity(a)) {
      missing = a;
      break;
    }
  }
  if (!missing) {
    for (ArrId a = 0; a < static_cast<ArrId>(y->num_arrows()); ++a) {
      if (!cl.arrows[a]) {
        missing = a;
        break;
      }
    }
  }
  if (missing) {
    throw Error(ErrorKind::not_generating,
                "arrow " + y->arrow_name(*missing) + " is not generated");
  }
  // recipes refer to seed positions; translate them to generator positions
  std::vector<int> seed_to_gen;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (!gens[k].is_object) {
      seed_to_gen.push_back(static_cast<int>(k));
    }
  }
  for (auto& r : cl.recipe) {
    if (r && r->kind == Recipe::Kind::seed) {
      r->a = seed_to_gen[r->a];
    }
  }
  return GammaEpi{std::move(y), std::move(gens), std::move(cl)};
}

/// Arrow generators only.
inline GammaEpi validate_generating_family(CatPtr y,
                                           std::vector<ArrId> const& arrows) {
  std::vector<Generator> gens;
  for (ArrId a : arrows) {
    gens.push_back({false, a});
  }
  return validate_generating_family(std::move(y), std::move(gens));
}

/// A deterministic generating family: every non-identity arrow when there
/// are at most `bound` arrows, otherwise a greedy choice in id order, plus
/// object generators for objects no such arrow touches.
inline std::vector<Generator> canonical_generators(FinCat const& y,
                                                   std::size_t bound = 16) {
  std::vector<Generator> gens;
  std::vector<bool> touched(y.num_objects(), false);
  std::vector<ArrId> picked;
  if (y.num_arrows() <= bound) {
    for (ArrId a = 0; a < static_cast<ArrId>(y.num_arrows()); ++a) {
      if (!y.is_identity(a)) {
        picked.push_back(a);
      }
    }
  } else {
    for (ArrId a = 0; a < static_cast<ArrId>(y.num_arrows()); ++a) {
      if (y.is_identity(a)) {
        continue;
      }
      Closure cl = isbell_closure(y, picked);
      if (!cl.arrows[a]) {
        picked.push_back(a);
      }
    }
  }
  for (ArrId a : picked) {
    gens.push_back({false, a});
    touched[y.source(a)] = true;
    touched[y.target(a)] = true;
  }
  for (ObjId o = 0; o < static_cast<ObjId>(y.num_objects()); ++o) {
    if (!touched[o]) {
      gens.push_back({true, o});
    }
  }
  return gens;
}

}  // namespace enrich
