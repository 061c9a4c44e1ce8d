#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "enrich/catsem.hpp"
#include "enrich/corpus.hpp"
#include "enrich/error.hpp"
#include "enrich/fincat.hpp"
#include "enrich/functor.hpp"
#include "enrich/term.hpp"

namespace enrich {

/// h^Y : A^Y -> B^Y, postcomposition with h : A -> B.
inline PowerMap postcompose_map(FinFunctor const& h, FunctorCat const& ay,
                                FunctorCat const& by) {
  PowerMap m;
  m.obj.resize(ay.num_objects());
  m.arr.resize(ay.num_arrows());
  std::vector<ObjId> om;
  std::vector<ArrId> am;
  for (int x = 0; x < static_cast<int>(ay.num_objects()); ++x) {
    om.clear();
    am.clear();
    for (ObjId o : ay.objects_of(x)) {
      om.push_back(h.obj[o]);
    }
    for (ArrId r : ay.arrows_of(x)) {
      am.push_back(h.arr[r]);
    }
    m.obj[x] = by.find_object(om, am);
  }
  for (int e = 0; e < static_cast<int>(ay.num_arrows()); ++e) {
    am.clear();
    for (ArrId r : ay.components(e)) {
      am.push_back(h.arr[r]);
    }
    m.arr[e] = by.find_arrow(m.obj[ay.source(e)], m.obj[ay.target(e)], am);
  }
  return m;
}

/// The projections A×B -> A and A×B -> B.
inline std::pair<FinFunctor, FinFunctor> product_projections(
    CatPtr const& a, CatPtr const& b, CatPtr const& ab) {
  FinFunctor pa{ab, a, {}, {}};
  FinFunctor pb{ab, b, {}, {}};
  auto nb = static_cast<int>(b->num_objects());
  auto mb = static_cast<int>(b->num_arrows());
  for (ObjId o = 0; o < static_cast<ObjId>(ab->num_objects()); ++o) {
    pa.obj.push_back(o / nb);
    pb.obj.push_back(o % nb);
  }
  for (ArrId f = 0; f < static_cast<ArrId>(ab->num_arrows()); ++f) {
    pa.arr.push_back(f / mb);
    pb.arr.push_back(f % mb);
  }
  return {pa, pb};
}

/// The product structure: the product category with every symbol
/// interpreted componentwise through (A×B)^Y ≅ A^Y × B^Y.
inline CatStructure product_structure(CatStructure const& a,
                                      CatStructure const& b,
                                      Limits const& lim = {}) {
  auto ab = make_cat(product(*a.carrier, *b.carrier));
  auto [pa, pb] = product_projections(a.carrier, b.carrier, ab);
  auto nb = static_cast<int>(b.carrier->num_objects());
  auto mb = static_cast<int>(b.carrier->num_arrows());
  CatStructure s{a.name + "x" + b.name, a.lang, ab, {}, {}, {}};
  auto maps = [&](CatPtr const& y) {
    auto p = power(y, ab, lim);
    auto ma = postcompose_map(pa, *p, *power(y, a.carrier, lim));
    auto mbm = postcompose_map(pb, *p, *power(y, b.carrier, lim));
    return std::tuple{p, ma, mbm};
  };
  for (auto const& op : a.lang->ops()) {
    auto [p, ma, mbm] = maps(op.arity);
    auto const& ao = a.op_obj.at(op.name);
    auto const& aa = a.op_arr.at(op.name);
    auto const& bo = b.op_obj.at(op.name);
    auto const& ba = b.op_arr.at(op.name);
    auto& om = s.op_obj[op.name];
    auto& am = s.op_arr[op.name];
    for (int h = 0; h < static_cast<int>(p->num_objects()); ++h) {
      om.push_back(ao[ma.obj[h]] * nb + bo[mbm.obj[h]]);
    }
    for (int e = 0; e < static_cast<int>(p->num_arrows()); ++e) {
      am.push_back(aa[ma.arr[e]] * mb + ba[mbm.arr[e]]);
    }
  }
  for (auto const& op : a.lang->ops2()) {
    auto [p, ma, mbm] = maps(op.arity);
    auto const& ac = a.op2_comp.at(op.name);
    auto const& bc = b.op2_comp.at(op.name);
    auto& cm = s.op2_comp[op.name];
    for (int h = 0; h < static_cast<int>(p->num_objects()); ++h) {
      cm.push_back(ac[ma.obj[h]] * mb + bc[mbm.obj[h]]);
    }
  }
  return s;
}

/// Evaluation at z as a functor A^Z -> A.
inline FinFunctor evaluation_functor(FunctorCat const& az, CatPtr const& carrier,
                                     CatPtr const& a, ObjId z) {
  FinFunctor f{carrier, a, {}, {}};
  for (int x = 0; x < static_cast<int>(az.num_objects()); ++x) {
    f.obj.push_back(az.objects_of(x)[z]);
  }
  for (int t = 0; t < static_cast<int>(az.num_arrows()); ++t) {
    f.arr.push_back(az.components(t)[z]);
  }
  return f;
}

/// The power structure A^Z: the functor category with every symbol
/// interpreted pointwise through (A^Z)^Y ≅ (A^Y)^Z.
inline CatStructure power_structure(CatStructure const& a, CatPtr const& z,
                                    Limits const& lim = {}) {
  auto az = power(z, a.carrier, lim);
  auto c = make_cat(az->to_fincat());
  auto nz = static_cast<int>(z->num_objects());
  auto mz = static_cast<int>(z->num_arrows());
  std::vector<FinFunctor> ev;
  for (ObjId o = 0; o < nz; ++o) {
    ev.push_back(evaluation_functor(*az, c, a.carrier, o));
  }
  CatStructure s{a.name + "^Z", a.lang, c, {}, {}, {}};
  struct Slices {
    std::shared_ptr<FunctorCat const> p, pa;
    std::vector<PowerMap> at;
  };
  auto slices = [&](CatPtr const& y) {
    Slices sl{power(y, c, lim), power(y, a.carrier, lim), {}};
    for (ObjId o = 0; o < nz; ++o) {
      sl.at.push_back(postcompose_map(ev[o], *sl.p, *sl.pa));
    }
    return sl;
  };
  for (auto const& op : a.lang->ops()) {
    auto sl = slices(op.arity);
    auto const& fo = a.op_obj.at(op.name);
    auto const& fa = a.op_arr.at(op.name);
    auto ny = static_cast<int>(op.arity->num_objects());
    auto& om = s.op_obj[op.name];
    auto& am = s.op_arr[op.name];
    std::vector<ObjId> vo(nz);
    std::vector<ArrId> va(mz);
    std::vector<ArrId> comps(ny);
    for (int h = 0; h < static_cast<int>(sl.p->num_objects()); ++h) {
      auto hy = sl.p->objects_of(h);
      for (ObjId o = 0; o < nz; ++o) {
        vo[o] = fo[sl.at[o].obj[h]];
      }
      for (ArrId q = 0; q < mz; ++q) {
        for (ObjId y = 0; y < ny; ++y) {
          comps[y] = az->arrows_of(hy[y])[q];
        }
        int theta = sl.pa->find_arrow(sl.at[z->source(q)].obj[h],
                                      sl.at[z->target(q)].obj[h], comps);
        va[q] = fa[theta];
      }
      om.push_back(az->find_object(vo, va));
    }
    std::vector<ArrId> cz(nz);
    for (int e = 0; e < static_cast<int>(sl.p->num_arrows()); ++e) {
      for (ObjId o = 0; o < nz; ++o) {
        cz[o] = fa[sl.at[o].arr[e]];
      }
      am.push_back(az->find_arrow(om[sl.p->source(e)], om[sl.p->target(e)], cz));
    }
  }
  Evaluator evs(s, lim);
  for (auto const& op : a.lang->ops2()) {
    auto sl = slices(op.arity);
    auto const& ca = a.op2_comp.at(op.name);
    auto const& dom = evs.eval(op.dom);
    auto const& cod = evs.eval(op.cod);
    if (!dom.ok() || !cod.ok()) {
      throw Error(ErrorKind::invalid_structure,
                  "a boundary of " + op.name + " is not interpretable");
    }
    auto& cm = s.op2_comp[op.name];
    std::vector<ArrId> cz(nz);
    for (int h = 0; h < static_cast<int>(sl.p->num_objects()); ++h) {
      for (ObjId o = 0; o < nz; ++o) {
        cz[o] = ca[sl.at[o].obj[h]];
      }
      cm.push_back(az->find_arrow(dom.value->obj[h], cod.value->obj[h], cz));
    }
  }
  return s;
}

/// A substructure together with its inclusion.
struct SubStructure {
  CatStructure structure;
  FinFunctor inclusion;
};

namespace detail {

// The structure on S making the inclusion a structure morphism, or nullopt
// when S is not closed under the interpretations.
inline std::optional<CatStructure> restrict_structure(CatStructure const& a,
                                                      CatPtr const& sub,
                                                      FinFunctor const& inc,
                                                      Limits const& lim) {
  std::vector<int> obj_back(a.carrier->num_objects(), -1);
  std::vector<int> arr_back(a.carrier->num_arrows(), -1);
  for (ObjId o = 0; o < static_cast<ObjId>(inc.obj.size()); ++o) {
    obj_back[inc.obj[o]] = o;
  }
  for (ArrId f = 0; f < static_cast<ArrId>(inc.arr.size()); ++f) {
    arr_back[inc.arr[f]] = f;
  }
  CatStructure s{a.name + "|S", a.lang, sub, {}, {}, {}};
  for (auto const& op : a.lang->ops()) {
    auto p = power(op.arity, sub, lim);
    auto m = postcompose_map(inc, *p, *power(op.arity, a.carrier, lim));
    auto const& fo = a.op_obj.at(op.name);
    auto const& fa = a.op_arr.at(op.name);
    auto& om = s.op_obj[op.name];
    auto& am = s.op_arr[op.name];
    for (int h : m.obj) {
      int v = obj_back[fo[h]];
      if (v < 0) {
        return std::nullopt;
      }
      om.push_back(v);
    }
    for (int e : m.arr) {
      int v = arr_back[fa[e]];
      if (v < 0) {
        return std::nullopt;
      }
      am.push_back(v);
    }
  }
  for (auto const& op : a.lang->ops2()) {
    auto p = power(op.arity, sub, lim);
    auto m = postcompose_map(inc, *p, *power(op.arity, a.carrier, lim));
    auto const& fc = a.op2_comp.at(op.name);
    auto& cm = s.op2_comp[op.name];
    for (int h : m.obj) {
      int v = arr_back[fc[h]];
      if (v < 0) {
        return std::nullopt;
      }
      cm.push_back(v);
    }
  }
  return s;
}

}  // namespace detail

/// Every subcategory whose inclusion is injective on objects, faithful and
/// conservative and which is closed under the symbol interpretations.
inline std::vector<SubStructure> enumerate_strong_subobjects(
    CatStructure const& a, std::size_t max_free_arrows = 16,
    Limits const& lim = {}) {
  auto const& c = *a.carrier;
  auto n = static_cast<int>(c.num_objects());
  auto m = static_cast<int>(c.num_arrows());
  if (n > 16) {
    throw Error(ErrorKind::size_bound_exceeded, "too many objects");
  }
  std::vector<SubStructure> out;
  for (unsigned om = 0; om < (1u << n); ++om) {
    std::vector<bool> objs(n);
    for (int o = 0; o < n; ++o) {
      objs[o] = (om >> o) & 1u;
    }
    std::vector<ArrId> free;
    for (ArrId f = 0; f < m; ++f) {
      if (!c.is_identity(f) && objs[c.source(f)] && objs[c.target(f)]) {
        free.push_back(f);
      }
    }
    if (free.size() > max_free_arrows) {
      throw Error(ErrorKind::size_bound_exceeded,
                  "too many candidate arrows for subobject enumeration");
    }
    for (unsigned long am = 0; am < (1ul << free.size()); ++am) {
      std::vector<bool> arrs(m, false);
      for (ObjId o = 0; o < n; ++o) {
        if (objs[o]) {
          arrs[c.identity(o)] = true;
        }
      }
      for (std::size_t k = 0; k < free.size(); ++k) {
        arrs[free[k]] = (am >> k) & 1ul;
      }
      bool ok = true;
      for (ArrId f = 0; f < m && ok; ++f) {
        if (!arrs[f]) {
          continue;
        }
        if (auto inv = c.inverse(f); inv && !arrs[*inv]) {
          ok = false;
        }
        for (ArrId g : c.out(c.target(f))) {
          if (arrs[g] && !arrs[c.comp(g, f)]) {
            ok = false;
          }
        }
      }
      if (!ok) {
        continue;
      }
      auto sc = subcategory(c, objs, arrs);
      auto sub = make_cat(std::move(sc.cat));
      FinFunctor inc{sub, a.carrier, sc.obj_to_parent, sc.arr_to_parent};
      if (auto s = detail::restrict_structure(a, sub, inc, lim)) {
        out.push_back({std::move(*s), std::move(inc)});
      }
    }
  }
  return out;
}

/// A quotient structure C with a structure morphism e : A -> C and a
/// functor r : C -> A such that e ∘ r = 1.
struct SplitQuotient {
  CatStructure structure;
  FinFunctor e;
  FinFunctor r;
};

/// The structure on C for which e is a structure morphism, computed as
/// f_C = e ∘ f_A ∘ r^Y; nullopt when e does not commute with it.
inline std::optional<CatStructure> quotient_structure(CatStructure const& a,
                                                      FinFunctor const& e,
                                                      FinFunctor const& r,
                                                      Limits const& lim = {}) {
  auto const& cc = e.cod;
  CatStructure s{a.name + "/e", a.lang, cc, {}, {}, {}};
  for (auto const& op : a.lang->ops()) {
    auto p = power(op.arity, cc, lim);
    auto m = postcompose_map(r, *p, *power(op.arity, a.carrier, lim));
    auto const& fo = a.op_obj.at(op.name);
    auto const& fa = a.op_arr.at(op.name);
    auto& om = s.op_obj[op.name];
    auto& am = s.op_arr[op.name];
    for (int h : m.obj) {
      om.push_back(e.obj[fo[h]]);
    }
    for (int t : m.arr) {
      am.push_back(e.arr[fa[t]]);
    }
  }
  for (auto const& op : a.lang->ops2()) {
    auto p = power(op.arity, cc, lim);
    auto m = postcompose_map(r, *p, *power(op.arity, a.carrier, lim));
    auto const& fc = a.op2_comp.at(op.name);
    auto& cm = s.op2_comp[op.name];
    for (int h : m.obj) {
      cm.push_back(e.arr[fc[h]]);
    }
  }
  if (!structure_violation(s, lim).empty()
      || !check_structure_morphism(e, a, s, lim).ok) {
    return std::nullopt;
  }
  return s;
}

/// All (e, r) with e : A -> C a structure morphism onto a candidate carrier
/// C and r : C -> A a functor with e ∘ r = 1. Candidates default to the
/// corpus categories no larger than A.
inline std::vector<SplitQuotient> find_split_quotients(
    CatStructure const& a, std::vector<CatPtr> const* candidates = nullptr,
    Limits const& lim = {}) {
  std::vector<CatPtr> own;
  if (!candidates) {
    CorpusParams cp;
    cp.max_objects = static_cast<int>(a.carrier->num_objects());
    cp.max_arrows = static_cast<int>(a.carrier->num_arrows());
    for (auto& c : generate_corpus(cp)) {
      own.push_back(make_cat(std::move(c)));
    }
    candidates = &own;
  }
  std::vector<SplitQuotient> out;
  for (auto const& c : *candidates) {
    if (c->num_objects() > a.carrier->num_objects()
        || c->num_arrows() > a.carrier->num_arrows()) {
      continue;
    }
    auto sections = enumerate_functors(c, a.carrier, lim);
    for_each_functor(*a.carrier, *c, [&](auto const& om, auto const& am) {
      FinFunctor e{a.carrier, c, om, am};
      std::optional<CatStructure> q;
      bool tried = false;
      for (auto const& r : sections) {
        bool split = true;
        for (ObjId o = 0; o < static_cast<ObjId>(c->num_objects()) && split; ++o) {
          split = e.obj[r.obj[o]] == o;
        }
        for (ArrId f = 0; f < static_cast<ArrId>(c->num_arrows()) && split; ++f) {
          split = e.arr[r.arr[f]] == f;
        }
        if (!split) {
          continue;
        }
        if (!tried) {
          q = quotient_structure(a, e, r, lim);
          tried = true;
        }
        if (!q) {
          break;
        }
        out.push_back({*q, e, r});
      }
      return true;
    });
  }
  return out;
}

enum class ClosureStatus { pass, fail, skipped };

inline std::string to_string(ClosureStatus s) {
  switch (s) {
    case ClosureStatus::pass: return "Pass";
    case ClosureStatus::fail: return "Fail";
    case ClosureStatus::skipped: return "Skipped";
  }
  return "?";
}

struct ClosureEntry {
  std::string property;
  ClosureStatus status = ClosureStatus::pass;
  std::size_t checked = 0;
  std::size_t over_budget = 0;  // cells abandoned at a size bound
  std::string witness;
};

struct ClosureReport {
  std::string theory;
  std::size_t structures = 0;
  std::size_t models = 0;
  std::vector<ClosureEntry> entries;

  bool passed() const {
    for (auto const& e : entries) {
      if (e.status == ClosureStatus::fail) {
        return false;
      }
    }
    return true;
  }
};

/// The default power shapes: 𝟙, 𝟚, 𝟛, 𝕀 and the discrete category on two
/// objects.
inline std::vector<CatPtr> default_power_shapes() {
  return {std_shapes::one(), std_shapes::two(), std_shapes::three(),
          std_shapes::iso(), make_cat(shapes::discrete(2))};
}

struct ClosureParams {
  std::vector<CatPtr> shapes = default_power_shapes();
  bool products = true;
  bool powers = true;
  bool subobjects = true;
  bool quotients = true;
  std::size_t max_products = 2000;
  std::vector<CatPtr> const* quotient_candidates = nullptr;
  std::function<CatStructure(CatStructure const&, CatStructure const&)> product;
  Limits lim;
};

/// Checks that products, powers, strong substructures and split quotients
/// of the models in the corpus are again models. The first counterexample
/// of each kind is reported.
inline ClosureReport closure_suite(Theory2 const& th,
                                   std::vector<CatStructure> const& corpus,
                                   ClosureParams const& p = {}) {
  ClosureReport rep;
  rep.theory = th.name;
  rep.structures = corpus.size();
  std::vector<CatStructure const*> models;
  for (auto const& a : corpus) {
    if (is_model(a, th, p.lim).holds) {
      models.push_back(&a);
    }
  }
  rep.models = models.size();
  auto check = [&](ClosureEntry& e, auto const& make,
                   std::string const& what) {
    if (e.status == ClosureStatus::fail) {
      return;
    }
    std::optional<CatStructure> built;
    std::optional<ModelReport> r;
    try {
      built = make();
      auto v = structure_violation(*built, p.lim);
      if (!v.empty()) {
        ++e.checked;
        e.status = ClosureStatus::fail;
        e.witness = what + " is not a structure: " + v;
        return;
      }
      r = is_model(*built, th, p.lim);
    } catch (Error const& err) {
      if (!err.is_budget()) {
        throw;
      }
      ++e.over_budget;
      return;
    }
    ++e.checked;
    if (!r->holds) {
      auto const* f = r->first_failure();
      e.status = ClosureStatus::fail;
      e.witness = what + " violates " + f->judgement + ": " + f->witness;
    }
  };
  auto skip = [](std::string name, std::string why) {
    return ClosureEntry{std::move(name), ClosureStatus::skipped, 0, 0, std::move(why)};
  };

  if (p.products) {
    ClosureEntry e{"products"};
    auto prod = p.product;
    if (!prod) {
      prod = [&](CatStructure const& a, CatStructure const& b) {
        return product_structure(a, b, p.lim);
      };
    }
    for (std::size_t i = 0; i < models.size(); ++i) {
      for (std::size_t j = i; j < models.size(); ++j) {
        if (e.checked >= p.max_products) {
          throw Error(ErrorKind::budget_exceeded,
                      "more than " + std::to_string(p.max_products)
                          + " products");
        }
        check(e, [&] { return prod(*models[i], *models[j]); },
              "product of models " + std::to_string(i) + " and "
                  + std::to_string(j));
      }
    }
    rep.entries.push_back(std::move(e));
  } else {
    rep.entries.push_back(skip("products", "disabled"));
  }
  if (p.powers) {
    ClosureEntry e{"powers"};
    for (std::size_t i = 0; i < models.size(); ++i) {
      for (auto const& z : p.shapes) {
        check(e, [&] { return power_structure(*models[i], z, p.lim); },
              "power of model " + std::to_string(i) + " by a shape with "
                  + std::to_string(z->num_arrows()) + " arrows");
      }
    }
    rep.entries.push_back(std::move(e));
  } else {
    rep.entries.push_back(skip("powers", "disabled"));
  }
  if (p.subobjects) {
    ClosureEntry e{"strong subobjects"};
    for (std::size_t i = 0; i < models.size(); ++i) {
      for (auto const& s : enumerate_strong_subobjects(*models[i], 16, p.lim)) {
        check(e, [&] { return s.structure; },
              "strong substructure of model " + std::to_string(i));
      }
    }
    rep.entries.push_back(std::move(e));
  } else {
    rep.entries.push_back(skip("strong subobjects", "disabled"));
  }
  if (p.quotients) {
    ClosureEntry e{"split quotients"};
    for (std::size_t i = 0; i < models.size(); ++i) {
      for (auto const& q :
           find_split_quotients(*models[i], p.quotient_candidates, p.lim)) {
        check(e, [&] { return q.structure; }, "split quotient of model " + std::to_string(i));
      }
    }
    rep.entries.push_back(std::move(e));
  } else {
    rep.entries.push_back(skip("split quotients", "disabled"));
  }
  rep.entries.push_back(skip("filtered colimits", "not finitely testable"));
  return rep;
}

}  // namespace enrich
