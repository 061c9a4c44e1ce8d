#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "enrich/fincat.hpp"
#include "enrich/functor.hpp"

namespace enrich {

/// An isomorphism a -> b, if one exists.
inline std::optional<FinFunctor> find_isomorphism(CatPtr a, CatPtr b) {
  if (a->num_objects() != b->num_objects()
      || a->num_arrows() != b->num_arrows()) {
    return std::nullopt;
  }
  std::optional<FinFunctor> found;
  for_each_functor(*a, *b, [&](auto const& om, auto const& am) {
    std::vector<bool> seen_o(b->num_objects(), false);
    for (ObjId o : om) {
      if (seen_o[o]) {
        return true;
      }
      seen_o[o] = true;
    }
    std::vector<bool> seen_a(b->num_arrows(), false);
    for (ArrId x : am) {
      if (seen_a[x]) {
        return true;
      }
      seen_a[x] = true;
    }
    found = FinFunctor{a, b, om, am};
    return false;
  });
  return found;
}

inline bool isomorphic(CatPtr a, CatPtr b) {
  return find_isomorphism(std::move(a), std::move(b)).has_value();
}

/// Relabels `c` so that objects follow `perm` (new id of old object) and
/// arrows are grouped by hom-set in the order given by `arr_order`.
inline FinCat relabel(FinCat const& c, std::vector<ObjId> const& obj_new,
                      std::vector<ArrId> const& arr_order) {
  CatBuilder b;
  auto n = static_cast<ObjId>(c.num_objects());
  std::vector<ObjId> inv(n);
  for (ObjId o = 0; o < n; ++o) {
    inv[obj_new[o]] = o;
  }
  for (ObjId i = 0; i < n; ++i) {
    b.add_object(c.object_name(inv[i]));
  }
  std::vector<ArrId> arr_new(c.num_arrows());
  for (std::size_t i = 0; i < arr_order.size(); ++i) {
    ArrId a = arr_order[i];
    arr_new[a] = b.add_arrow(c.arrow_name(a), obj_new[c.source(a)],
                             obj_new[c.target(a)]);
  }
  for (ObjId o = 0; o < n; ++o) {
    b.set_identity(obj_new[o], arr_new[c.identity(o)]);
  }
  for (ArrId f = 0; f < static_cast<ArrId>(c.num_arrows()); ++f) {
    for (ArrId g : c.out(c.target(f))) {
      b.set_compose(arr_new[g], arr_new[f], arr_new[c.comp(g, f)]);
    }
  }
  return b.build(false);
}

/// A canonical representative of the isomorphism class of `c`: the
/// relabeling (object permutation, then a bijection inside every hom-set)
/// with the least table key. Intended for the small categories of the
/// corpus; the search is exhaustive.
inline FinCat canonical_form(FinCat const& c) {
  auto n = static_cast<ObjId>(c.num_objects());
  std::vector<ObjId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<FinCat> best;
  do {
    // perm[i] = old object placed at position i
    std::vector<ObjId> obj_new(n);
    for (ObjId i = 0; i < n; ++i) {
      obj_new[perm[i]] = i;
    }
    std::vector<std::vector<ArrId>> homs;
    for (ObjId i = 0; i < n; ++i) {
      for (ObjId j = 0; j < n; ++j) {
        auto h = c.hom(perm[i], perm[j]);
        std::vector<ArrId> v(h.begin(), h.end());
        std::sort(v.begin(), v.end());
        homs.push_back(std::move(v));
      }
    }
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == homs.size()) {
        std::vector<ArrId> order;
        for (auto const& h : homs) {
          order.insert(order.end(), h.begin(), h.end());
        }
        FinCat r = relabel(c, obj_new, order);
        if (!best || r.key() < best->key()) {
          best = std::move(r);
        }
        return;
      }
      auto& h = homs[k];
      std::sort(h.begin(), h.end());
      do {
        rec(k + 1);
      } while (std::next_permutation(h.begin(), h.end()));
      std::sort(h.begin(), h.end());
    };
    rec(0);
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (!best) {
    return c;
  }
  return *best;
}

}  // namespace enrich
