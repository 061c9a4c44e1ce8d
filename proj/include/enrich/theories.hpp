#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "enrich/catsem.hpp"
#include "enrich/fincat.hpp"
#include "enrich/term.hpp"

namespace enrich {

inline LangPtr empty_language() {
  static LangPtr l = std::make_shared<Language2 const>("empty");
  return l;
}

/// ⊩ 1_𝟚⁻¹ over the empty language: the models are the groupoids.
inline Theory2 groupoid_theory() {
  Theory2 t{"groupoid", empty_language(), {}};
  t.add_defined(invert2(var_arr(std_shapes::two(), kTwoU)), "defined inv(arr(u))");
  return t;
}

/// ⊩ ! over the empty language: the models are the discrete categories.
inline Theory2 discrete_theory() {
  Theory2 t{"discrete", empty_language(), {}};
  t.add_defined(discreteness_term(), "defined !");
  return t;
}

inline CatStructure bare_structure(CatPtr carrier, std::string name = "A") {
  return CatStructure{std::move(name), empty_language(), std::move(carrier),
                      {}, {}, {}};
}

/// Inclusion D -> cone(D).
inline FinFunctor cone_inclusion(CatPtr const& d, CatPtr const& cone) {
  FinFunctor f{d, cone, {}, {}};
  for (ObjId o = 0; o < static_cast<ObjId>(d->num_objects()); ++o) {
    f.obj.push_back(o);
  }
  for (ArrId a = 0; a < static_cast<ArrId>(d->num_arrows()); ++a) {
    f.arr.push_back(a);
  }
  return f;
}

/// Symbols lim : D, pr_d : lim => d for each object d, and
/// rho : apex => lim(ι_D) of arity cone(D).
struct ChosenLimits {
  CatPtr d;
  CatPtr cone;
  LangPtr lang;
  Theory2 theory;
};

inline std::string projection_name(FinCat const& d, ObjId o) {
  return "pr_" + d.object_name(o);
}

inline ChosenLimits chosen_limits(CatPtr d) {
  auto cone = make_cat(shapes::cone(*d));
  auto l = std::make_shared<Language2>("chosen_limits");
  l->add_op("lim", d);
  auto lim = sym(*l, "lim");
  for (ObjId o = 0; o < static_cast<ObjId>(d->num_objects()); ++o) {
    l->add_op2(projection_name(*d, o), lim, var_obj(d, o));
  }
  auto iota = cone_inclusion(d, cone);
  ObjId apex = *cone->find_object("apex");
  l->add_op2("rho", var_obj(cone, apex), precompose(lim, iota));
  LangPtr lang = l;

  // the limit cone as a family over the generators of cone(D)
  std::vector<Generator> gens;
  std::vector<TermPtr> legs;
  for (ObjId o = 0; o < static_cast<ObjId>(d->num_objects()); ++o) {
    gens.push_back({false, *cone->find_arrow("to_" + d->object_name(o))});
    legs.push_back(sym2(*l, projection_name(*d, o)));
  }
  for (auto const& g : canonical_generators(*d)) {
    if (!g.is_object) {
      gens.push_back({false, g.id});
      legs.push_back(var_arr(d, g.id));
    }
  }
  auto gamma = make_gamma(cone, gens);

  Theory2 th{"chosen_limits", lang, {}};
  th.add_defined(glue(var_obj(cone, apex), gamma, legs, d),
                 "the projections form a cone");
  for (ObjId o = 0; o < static_cast<ObjId>(d->num_objects()); ++o) {
    auto to_d = var_arr(cone, "to_" + d->object_name(o));
    th.add_equal(compose2(precompose(sym2(*l, projection_name(*d, o)), iota),
                          sym2(*l, "rho")),
                 to_d, "pr_" + d->object_name(o) + "(iota) . rho = to_"
                           + d->object_name(o));
  }
  th.add_equal(glue(sym2(*l, "rho"), gamma, legs, d), identity2(lim),
               "rho(pr) = 1_lim");
  return {d, cone, lang, std::move(th)};
}

/// A structure on a poset carrier where every symbol is given on objects
/// only; arrows and 2-cell components are forced. Returns nullopt when the
/// object maps are not monotone or a component does not exist.
inline std::optional<CatStructure> poset_structure(
    LangPtr lang, CatPtr carrier,
    std::function<ObjId(std::string const&, std::span<ObjId const>)> const&
        value,
    std::string name = "A") {
  CatStructure s{std::move(name), lang, carrier, {}, {}, {}};
  auto const& a = *carrier;
  auto unique = [&](ObjId x, ObjId y) -> std::optional<ArrId> {
    auto h = a.hom(x, y);
    if (h.empty()) {
      return std::nullopt;
    }
    return h[0];
  };
  for (auto const& op : lang->ops()) {
    auto p = power(op.arity, carrier);
    auto& om = s.op_obj[op.name];
    auto& am = s.op_arr[op.name];
    for (int h = 0; h < static_cast<int>(p->num_objects()); ++h) {
      om.push_back(value(op.name, p->objects_of(h)));
    }
    for (int e = 0; e < static_cast<int>(p->num_arrows()); ++e) {
      auto u = unique(om[p->source(e)], om[p->target(e)]);
      if (!u) {
        return std::nullopt;
      }
      am.push_back(*u);
    }
  }
  Evaluator ev(s);
  for (auto const& op : lang->ops2()) {
    auto p = power(op.arity, carrier);
    auto const& dom = ev.eval(op.dom);
    auto const& cod = ev.eval(op.cod);
    if (!dom.ok() || !cod.ok()) {
      return std::nullopt;
    }
    auto& c = s.op2_comp[op.name];
    for (int h = 0; h < static_cast<int>(p->num_objects()); ++h) {
      auto u = unique(dom.value->obj[h], cod.value->obj[h]);
      if (!u) {
        return std::nullopt;
      }
      c.push_back(*u);
    }
  }
  return s;
}

/// Greatest lower bound of two objects of a poset, if any.
inline std::optional<ObjId> poset_meet(FinCat const& a, ObjId x, ObjId y) {
  std::optional<ObjId> best;
  for (ObjId z = 0; z < static_cast<ObjId>(a.num_objects()); ++z) {
    if (a.hom(z, x).empty() || a.hom(z, y).empty()) {
      continue;
    }
    if (!best || !a.hom(*best, z).empty()) {
      best = z;
    }
  }
  if (!best) {
    return std::nullopt;
  }
  for (ObjId z = 0; z < static_cast<ObjId>(a.num_objects()); ++z) {
    if (!a.hom(z, x).empty() && !a.hom(z, y).empty()
        && a.hom(z, *best).empty()) {
      return std::nullopt;
    }
  }
  return best;
}

/// A poset with binary meets as the chosen products (D discrete 2).
inline std::optional<CatStructure> meet_structure(ChosenLimits const& cl,
                                                  CatPtr poset,
                                                  std::string name = "A") {
  auto const& a = *poset;
  bool ok = true;
  auto s = poset_structure(
      cl.lang, poset,
      [&](std::string const&, std::span<ObjId const> h) -> ObjId {
        auto m = poset_meet(a, h[0], h[1]);
        if (!m) {
          ok = false;
          return 0;
        }
        return *m;
      },
      std::move(name));
  if (!ok) {
    return std::nullopt;
  }
  return s;
}

/// The idempotent monoid {1, e} as a one-object category.
inline FinCat idempotent_monoid() {
  CatBuilder b;
  b.add_object("*");
  b.add_identity(0, "1");
  ArrId e = b.add_arrow("e", 0, 0);
  b.set_compose(e, e, e);
  return b.build();
}

/// A well-formed structure for chosen binary products that is not a model:
/// carrier {1, e}, lim multiplies, and every projection and every
/// factorization is e.
inline CatStructure broken_projection_structure(ChosenLimits const& cl) {
  auto carrier = make_cat(idempotent_monoid());
  auto const& a = *carrier;
  ArrId e = 1;
  CatStructure s{"broken", cl.lang, carrier, {}, {}, {}};
  auto p = power(cl.d, carrier);
  auto& om = s.op_obj["lim"];
  auto& am = s.op_arr["lim"];
  for (int h = 0; h < static_cast<int>(p->num_objects()); ++h) {
    om.push_back(0);
  }
  for (int q = 0; q < static_cast<int>(p->num_arrows()); ++q) {
    auto c = p->components(q);
    ArrId v = a.identity(0);
    for (ArrId x : c) {
      v = a.comp(x, v);
    }
    am.push_back(v);
  }
  for (ObjId o = 0; o < static_cast<ObjId>(cl.d->num_objects()); ++o) {
    s.op2_comp[projection_name(*cl.d, o)].assign(p->num_objects(), e);
  }
  auto pc = power(cl.cone, carrier);
  s.op2_comp["rho"].assign(pc->num_objects(), e);
  return s;
}

}  // namespace enrich
