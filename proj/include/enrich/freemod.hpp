#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "enrich/catsem.hpp"
#include "enrich/corpus.hpp"
#include "enrich/error.hpp"
#include "enrich/fincat.hpp"
#include "enrich/functor.hpp"
#include "enrich/isbell.hpp"
#include "enrich/term.hpp"

namespace enrich {

/// Probe structures standing in for "every structure" when comparing terms.
struct ProbeSet {
  LangPtr lang;
  std::vector<CatStructure> structures;
};

/// Calls `emit` for every structure of the language on `carrier`, in
/// lexicographic order of the symbol tables.
inline void for_each_structure(LangPtr const& lang, CatPtr const& carrier,
                               std::function<bool(CatStructure const&)> const& emit,
                               Limits const& lim = {}) {
  auto const& ops = lang->ops();
  auto const& ops2 = lang->ops2();
  std::vector<std::vector<FinFunctor>> choices;
  for (auto const& op : ops) {
    auto p = power(op.arity, carrier, lim);
    auto pc = make_cat(p->to_fincat());
    choices.push_back(enumerate_functors(pc, carrier, lim));
  }
  CatStructure s{"A", lang, carrier, {}, {}, {}};
  bool stop = false;
  std::function<void(std::size_t)> rec2 = [&](std::size_t k) {
    if (stop) {
      return;
    }
    if (k == ops2.size()) {
      stop = !emit(s);
      return;
    }
    auto const& op = ops2[k];
    auto p = power(op.arity, carrier, lim);
    Evaluator ev(s, lim);
    auto const& dom = ev.eval(op.dom);
    auto const& cod = ev.eval(op.cod);
    if (!dom.ok() || !cod.ok()) {
      return;
    }
    auto pc = p->to_fincat();
    for_each_nat_trans(pc, *carrier, dom.value->obj, dom.value->arr,
                       cod.value->obj, cod.value->arr, [&](auto const& c) {
                         s.op2_comp[op.name] = c;
                         rec2(k + 1);
                         return !stop;
                       });
    s.op2_comp.erase(op.name);
  };
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (stop) {
      return;
    }
    if (k == ops.size()) {
      rec2(0);
      return;
    }
    for (auto const& f : choices[k]) {
      s.op_obj[ops[k].name] = f.obj;
      s.op_arr[ops[k].name] = f.arr;
      rec(k + 1);
      if (stop) {
        return;
      }
    }
  };
  rec(0);
}

/// All structures of the language on corpus carriers with at most
/// `max_objects` objects.
inline ProbeSet default_probes(LangPtr const& lang, int max_objects = 2,
                               std::size_t budget = 5000,
                               Limits const& lim = {}) {
  ProbeSet p{lang, {}};
  CorpusParams cp;
  cp.max_objects = max_objects;
  for (auto& c : generate_corpus(cp)) {
    auto carrier = make_cat(std::move(c));
    for_each_structure(lang, carrier, [&](CatStructure const& s) {
      if (p.structures.size() >= budget) {
        throw Error(ErrorKind::budget_exceeded,
                    "more than " + std::to_string(budget) + " probe structures");
      }
      p.structures.push_back(s);
      p.structures.back().name =
          "P" + std::to_string(p.structures.size() - 1);
      return true;
    }, lim);
  }
  return p;
}

namespace detail {

// Every family over `gens` drawn from `pool`, members of the right dimension.
inline void for_each_family(std::vector<Generator> const& gens,
                            std::vector<TermPtr> const& pool,
                            std::function<void(std::vector<TermPtr> const&)> const& emit) {
  std::vector<TermPtr> fam(gens.size());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == gens.size()) {
      emit(fam);
      return;
    }
    int want = gens[k].is_object ? 1 : 2;
    for (auto const& t : pool) {
      if (t->dim == want) {
        fam[k] = t;
        rec(k + 1);
      }
    }
  };
  rec(0);
}

}  // namespace detail

/// All X-ary terms of depth at most `depth`: the variables of rule 1, then
/// level by level symbol applications along the canonical generating family
/// of their arity, identities, endpoints, inverses and composites. No two
/// are structurally equal.
inline std::vector<TermPtr> enumerate_terms(LangPtr const& lang, CatPtr const& x,
                                            int depth,
                                            std::size_t max_terms = 20000) {
  std::vector<TermPtr> out;
  std::unordered_set<TermPtr, TermPtrHash, TermPtrEq> seen;
  int level = 1;
  auto add = [&](TermPtr t) {
    if (t->depth != level || !seen.insert(t).second) {
      return;
    }
    if (out.size() >= max_terms) {
      throw Error(ErrorKind::budget_exceeded,
                  "more than " + std::to_string(max_terms) + " terms");
    }
    out.push_back(std::move(t));
  };
  if (depth < 1) {
    return out;
  }
  for (ObjId o = 0; o < static_cast<ObjId>(x->num_objects()); ++o) {
    add(var_obj(x, o));
  }
  for (ArrId a = 0; a < static_cast<ArrId>(x->num_arrows()); ++a) {
    add(var_arr(x, a));
  }
  for (level = 2; level <= depth; ++level) {
    std::vector<TermPtr> pool = out;
    for (auto const& op : lang->ops()) {
      auto gens = canonical_generators(*op.arity);
      auto gamma = make_gamma(op.arity, gens);
      auto s = sym(*lang, op.name);
      detail::for_each_family(gens, pool, [&](auto const& fam) {
        add(glue(s, gamma, fam, x));
      });
    }
    for (auto const& op : lang->ops2()) {
      auto gens = canonical_generators(*op.arity);
      auto gamma = make_gamma(op.arity, gens);
      auto s = sym2(*lang, op.name);
      detail::for_each_family(gens, pool, [&](auto const& fam) {
        add(glue(s, gamma, fam, x));
      });
    }
    for (auto const& t : pool) {
      if (t->dim == 1) {
        add(identity2(t));
      }
    }
    for (auto const& t : pool) {
      if (t->dim == 2) {
        add(endpoint(t, 0));
        add(endpoint(t, 1));
        add(invert2(t));
      }
    }
    for (auto const& s : pool) {
      for (auto const& t : pool) {
        if (s->dim == 2 && t->dim == 2) {
          add(compose2(s, t));
        }
      }
    }
  }
  return out;
}

/// Same interpretability status on every probe and equal tables wherever
/// both interpret.
inline bool probe_equivalent(TermPtr const& s, TermPtr const& t,
                             ProbeSet const& p, Limits const& lim = {}) {
  if (s->dim != t->dim || !(*s->arity == *t->arity)) {
    return false;
  }
  for (auto const& a : p.structures) {
    Evaluator ev(a, lim);
    auto const& l = ev.eval(s);
    auto const& r = ev.eval(t);
    if (l.ok() != r.ok()) {
      return false;
    }
    if (l.ok() && !(*l.value == *r.value)) {
      return false;
    }
  }
  return true;
}

/// A finite approximation of the free structure on X: classes of terms
/// interpretable on every probe, identified when their interpretations
/// agree on every probe.
struct FreeStructure {
  LangPtr lang;
  CatPtr x;
  int depth = 0;
  std::size_t probes = 0;
  std::size_t terms = 0;
  CatPtr carrier;
  CatStructure structure;
  FinFunctor eta;
  std::vector<TermPtr> object_terms;
  std::vector<TermPtr> arrow_terms;
};

struct FreeParams {
  int depth = 2;
  std::size_t max_terms = 20000;
  std::size_t max_classes = 5000;
  Limits lim;
};

namespace detail {

// Term classes keyed by their interpretations on every probe. A 2-term
// class is keyed by its boundary classes and its object table alone: the
// boundaries fix the components of every square.
class ClassTable {
 public:
  ClassTable(ProbeSet const& p, Limits const& lim, std::size_t bound)
      : bound_(bound) {
    for (auto const& a : p.structures) {
      evs_.push_back(std::make_unique<Evaluator>(a, lim));
    }
  }

  std::size_t probes() const { return evs_.size(); }
  Evaluator& ev(std::size_t i) { return *evs_[i]; }

  /// Interpretations on every probe, or nullopt.
  std::optional<std::vector<Interp>> signature(TermPtr const& t) {
    // the probe that rejected the previous term is tried first
    if (!evs_[killer_]->eval(t).ok()) {
      return std::nullopt;
    }
    std::vector<Interp> sig;
    for (std::size_t p = 0; p < evs_.size(); ++p) {
      auto const& r = evs_[p]->eval(t);
      if (!r.ok()) {
        killer_ = p;
        return std::nullopt;
      }
      sig.push_back(*r.value);
    }
    return sig;
  }

  static std::vector<int> object_key(std::vector<Interp> const& sig) {
    std::vector<int> k;
    for (auto const& v : sig) {
      k.insert(k.end(), v.obj.begin(), v.obj.end());
      k.push_back(-1);
      k.insert(k.end(), v.arr.begin(), v.arr.end());
      k.push_back(-2);
    }
    return k;
  }

  static std::vector<int> arrow_key(int s, int t,
                                    std::vector<std::vector<int>> const& objs) {
    std::vector<int> k{s, t};
    for (auto const& v : objs) {
      k.insert(k.end(), v.begin(), v.end());
      k.push_back(-1);
    }
    return k;
  }

  int find_object(std::vector<Interp> const& sig) const {
    auto it = obj_index_.find(object_key(sig));
    return it == obj_index_.end() ? -1 : it->second;
  }

  int find_arrow(int s, int t, std::vector<std::vector<int>> const& objs) const {
    auto it = arr_index_.find(arrow_key(s, t, objs));
    return it == arr_index_.end() ? -1 : it->second;
  }

  /// The class of an interpretation that is a 2-cell, or -1 if a boundary
  /// has no class.
  int find_arrow(std::vector<Interp> const& sig, int& s, int& t) {
    s = boundary_class(sig, 0);
    t = boundary_class(sig, 1);
    if (s < 0 || t < 0) {
      return -1;
    }
    return find_arrow(s, t, object_tables(sig));
  }

  int boundary_class(std::vector<Interp> const& sig, int i) {
    std::vector<Interp> b;
    for (std::size_t p = 0; p < sig.size(); ++p) {
      b.push_back(evs_[p]->boundary(sig[p], i));
    }
    return find_object(b);
  }

  static std::vector<std::vector<int>> object_tables(
      std::vector<Interp> const& sig) {
    std::vector<std::vector<int>> objs;
    for (auto const& v : sig) {
      objs.push_back(v.obj);
    }
    return objs;
  }

  int add_object(TermPtr const& t, std::vector<Interp> sig) {
    auto k = object_key(sig);
    auto it = obj_index_.find(k);
    if (it != obj_index_.end()) {
      return it->second;
    }
    check_bound();
    int id = static_cast<int>(obj_reps.size());
    obj_index_.emplace(std::move(k), id);
    obj_reps.push_back(t);
    return id;
  }

  int add_arrow(TermPtr const& t, int s, int u,
                std::vector<std::vector<int>> objs) {
    auto k = arrow_key(s, u, objs);
    auto it = arr_index_.find(k);
    if (it != arr_index_.end()) {
      return it->second;
    }
    check_bound();
    int id = static_cast<int>(arr_reps.size());
    arr_index_.emplace(std::move(k), id);
    arr_reps.push_back(t);
    arr_src.push_back(s);
    arr_tgt.push_back(u);
    arr_objs.push_back(std::move(objs));
    return id;
  }

  std::vector<TermPtr> obj_reps, arr_reps;
  std::vector<int> arr_src, arr_tgt;
  std::vector<std::vector<std::vector<int>>> arr_objs;

 private:
  void check_bound() const {
    if (obj_reps.size() + arr_reps.size() >= bound_) {
      throw Error(ErrorKind::budget_exceeded,
                  "more than " + std::to_string(bound_) + " term classes");
    }
  }

  std::size_t bound_;
  std::size_t killer_ = 0;
  std::vector<std::unique_ptr<Evaluator>> evs_;
  std::map<std::vector<int>, int> obj_index_, arr_index_;
};

}  // namespace detail

/// Builds the approximate free structure on X from the terms of depth at
/// most `depth`. Classes are closed under composition and identities; a
/// symbol application whose class was not enumerated raises
/// NonClosedUnderStructure.
inline FreeStructure build_free(LangPtr const& lang, CatPtr const& x,
                                ProbeSet const& probes,
                                FreeParams const& params = {}) {
  if (probes.structures.empty()) {
    throw Error(ErrorKind::invalid_argument, "empty probe set");
  }
  auto terms = enumerate_terms(lang, x, params.depth, params.max_terms);
  detail::ClassTable ct(probes, params.lim, params.max_classes);
  auto np = ct.probes();
  std::vector<std::pair<TermPtr, std::vector<Interp>>> two_cells;
  for (auto const& t : terms) {
    if (auto sig = ct.signature(t)) {
      if (t->dim == 1) {
        ct.add_object(t, std::move(*sig));
      } else {
        two_cells.emplace_back(t, std::move(*sig));
      }
    }
  }
  auto missing = [](TermPtr const& t, std::string why) {
    return Error(ErrorKind::non_closed_under_structure,
                 "the class of " + render(t) + " " + why);
  };
  for (auto& [t, sig] : two_cells) {
    int s = ct.boundary_class(sig, 0);
    int u = ct.boundary_class(sig, 1);
    if (s < 0 || u < 0) {
      throw missing(endpoint(t, s < 0 ? 0 : 1), "was not enumerated");
    }
    ct.add_arrow(t, s, u, ct.object_tables(sig));
  }

  auto identity_objs = [&](std::vector<Interp> const& sig) {
    std::vector<std::vector<int>> objs;
    for (std::size_t p = 0; p < np; ++p) {
      auto const& ac = ct.ev(p).arrow_cat();
      auto const& a = *ct.ev(p).structure().carrier;
      std::vector<int> w;
      for (int q : sig[p].obj) {
        w.push_back(ac.object_of_arrow[a.identity(q)]);
      }
      objs.push_back(std::move(w));
    }
    return objs;
  };
  auto compose_objs = [&](int g, int f) {
    std::vector<std::vector<int>> objs;
    for (std::size_t p = 0; p < np; ++p) {
      auto const& ac = ct.ev(p).arrow_cat();
      auto const& a = *ct.ev(p).structure().carrier;
      auto const& vg = ct.arr_objs[g][p];
      auto const& vf = ct.arr_objs[f][p];
      std::vector<int> w(vg.size());
      for (std::size_t h = 0; h < vg.size(); ++h) {
        w[h] = ac.object_of_arrow[a.comp(ac.arrow_of_object[vg[h]],
                                         ac.arrow_of_object[vf[h]])];
      }
      objs.push_back(std::move(w));
    }
    return objs;
  };

  // close under identities and composites
  std::map<std::pair<int, int>, int> comp;
  std::vector<int> ident;
  std::size_t done = 0;
  while (ident.size() < ct.obj_reps.size() || done < ct.arr_reps.size()) {
    for (auto o = ident.size(); o < ct.obj_reps.size(); ++o) {
      auto rep = ct.obj_reps[o];
      auto sig = *ct.signature(rep);
      auto oi = static_cast<int>(o);
      ident.push_back(ct.add_arrow(identity2(rep), oi, oi, identity_objs(sig)));
    }
    done = ct.arr_reps.size();
    for (int f = 0; f < static_cast<int>(done); ++f) {
      for (int g = 0; g < static_cast<int>(done); ++g) {
        if (ct.arr_tgt[f] != ct.arr_src[g] || comp.count({g, f})) {
          continue;
        }
        comp[{g, f}] = ct.add_arrow(compose2(ct.arr_reps[g], ct.arr_reps[f]),
                                    ct.arr_src[f], ct.arr_tgt[g],
                                    compose_objs(g, f));
      }
    }
  }

  CatBuilder b;
  for (auto const& t : ct.obj_reps) {
    b.add_object("[" + render(t) + "]");
  }
  for (std::size_t a = 0; a < ct.arr_reps.size(); ++a) {
    b.add_arrow("[" + render(ct.arr_reps[a]) + "]", ct.arr_src[a],
                ct.arr_tgt[a]);
  }
  for (std::size_t o = 0; o < ident.size(); ++o) {
    b.set_identity(static_cast<ObjId>(o), ident[o]);
  }
  for (auto const& [gf, c] : comp) {
    b.set_compose(gf.first, gf.second, c);
  }
  auto carrier = make_cat(b.build(true));

  auto lookup = [&](TermPtr const& t) {
    auto sig = ct.signature(t);
    if (!sig) {
      throw missing(t, "is not interpretable on every probe");
    }
    int c;
    if (t->dim == 1) {
      c = ct.find_object(*sig);
    } else {
      int s, u;
      c = ct.find_arrow(*sig, s, u);
    }
    if (c < 0) {
      throw missing(t, "was not enumerated");
    }
    return c;
  };

  FreeStructure fs;
  fs.lang = lang;
  fs.x = x;
  fs.depth = params.depth;
  fs.probes = np;
  fs.terms = terms.size();
  fs.carrier = carrier;
  fs.object_terms = ct.obj_reps;
  fs.arrow_terms = ct.arr_reps;
  fs.eta = FinFunctor{x, carrier, {}, {}};
  for (ObjId o = 0; o < static_cast<ObjId>(x->num_objects()); ++o) {
    fs.eta.obj.push_back(lookup(var_obj(x, o)));
  }
  for (ArrId a = 0; a < static_cast<ArrId>(x->num_arrows()); ++a) {
    fs.eta.arr.push_back(lookup(var_arr(x, a)));
  }

  auto family_at = [&](std::vector<Generator> const& gens,
                       std::span<ObjId const> om, std::span<ArrId const> am) {
    std::vector<TermPtr> fam;
    for (auto const& g : gens) {
      fam.push_back(g.is_object ? ct.obj_reps[om[g.id]] : ct.arr_reps[am[g.id]]);
    }
    return fam;
  };

  CatStructure s{"F", lang, carrier, {}, {}, {}};
  for (auto const& op : lang->ops()) {
    auto p = power(op.arity, carrier, params.lim);
    auto gens = canonical_generators(*op.arity);
    auto gamma = make_gamma(op.arity, gens);
    auto f = sym(*lang, op.name);
    auto& om = s.op_obj[op.name];
    auto& am = s.op_arr[op.name];
    for (int h = 0; h < static_cast<int>(p->num_objects()); ++h) {
      om.push_back(lookup(glue(f, gamma, family_at(gens, p->objects_of(h),
                                                   p->arrows_of(h)),
                               x)));
    }
    // an arrow θ : h => h' as the functor 𝟚×Y -> F
    auto y2 = power_arity(op.arity);
    auto gens2 = canonical_generators(*y2);
    auto gamma2 = make_gamma(y2, gens2);
    auto f2 = power2(f);
    auto const& y = *op.arity;
    auto ny = static_cast<int>(y.num_objects());
    auto my = static_cast<int>(y.num_arrows());
    std::vector<ObjId> o2(2 * ny);
    std::vector<ArrId> a2(3 * my);
    for (int e = 0; e < static_cast<int>(p->num_arrows()); ++e) {
      auto ho = p->objects_of(p->source(e));
      auto ha = p->arrows_of(p->source(e));
      auto ko = p->objects_of(p->target(e));
      auto ka = p->arrows_of(p->target(e));
      auto c = p->components(e);
      for (int i = 0; i < ny; ++i) {
        o2[i] = ho[i];
        o2[ny + i] = ko[i];
      }
      for (int g = 0; g < my; ++g) {
        a2[kTwoId0 * my + g] = ha[g];
        a2[kTwoId1 * my + g] = ka[g];
        a2[kTwoU * my + g] = carrier->comp(ka[g], c[y.source(g)]);
      }
      am.push_back(lookup(glue(f2, gamma2, family_at(gens2, o2, a2), x)));
    }
  }
  for (auto const& op : lang->ops2()) {
    auto p = power(op.arity, carrier, params.lim);
    auto gens = canonical_generators(*op.arity);
    auto gamma = make_gamma(op.arity, gens);
    auto f = sym2(*lang, op.name);
    auto& cm = s.op2_comp[op.name];
    for (int h = 0; h < static_cast<int>(p->num_objects()); ++h) {
      cm.push_back(lookup(glue(f, gamma, family_at(gens, p->objects_of(h),
                                                   p->arrows_of(h)),
                               x)));
    }
  }
  fs.structure = std::move(s);
  return fs;
}

/// Outcome of checking the universal property of F against (A, k).
struct UniversalReport {
  bool interpretable = true;  // every representative interprets on A
  bool functor = true;        // the induced map is a functor
  bool morphism = true;       // and a structure morphism
  bool equation = true;       // U(k̂) ∘ η = k
  std::size_t solutions = 0;  // structure morphisms m with U(m) ∘ η = k
  std::string failure;
  std::optional<FinFunctor> induced;

  bool ok() const {
    return interpretable && functor && morphism && equation && solutions == 1;
  }
};

/// k̂([s]) := s_A(k), then checks it is a structure morphism with
/// U(k̂) ∘ η = k and that no other structure morphism satisfies the equation.
inline UniversalReport universal_property_check(FreeStructure const& f,
                                                CatStructure const& a,
                                                FinFunctor const& k,
                                                Limits const& lim = {}) {
  UniversalReport r;
  Evaluator ev(a, lim);
  auto px = ev.power_of(f.x);
  int kx = px->find_object(k.obj, k.arr);
  if (kx < 0) {
    throw Error(ErrorKind::not_functor, "k is not a functor X -> A");
  }
  FinFunctor h{f.carrier, a.carrier, {}, {}};
  for (auto const& t : f.object_terms) {
    auto const& v = ev.eval(t);
    if (!v.ok()) {
      r.interpretable = false;
      r.failure = render(t) + " is not interpretable on " + a.name;
      return r;
    }
    h.obj.push_back(v.value->obj[kx]);
  }
  for (auto const& t : f.arrow_terms) {
    auto const& v = ev.eval(t);
    if (!v.ok()) {
      r.interpretable = false;
      r.failure = render(t) + " is not interpretable on " + a.name;
      return r;
    }
    h.arr.push_back(ev.arrow_cat().arrow_of_object[v.value->obj[kx]]);
  }
  auto viol = h.violation();
  if (!viol.empty()) {
    r.functor = false;
    r.failure = "induced map is not a functor: " + viol;
    return r;
  }
  r.induced = h;
  auto m = check_structure_morphism(h, f.structure, a, lim);
  if (!m.ok) {
    r.morphism = false;
    r.failure = "induced map does not commute with " + m.symbol + " at "
                + m.witness;
  }
  if (!(compose(h, f.eta) == k)) {
    r.equation = false;
    if (r.failure.empty()) {
      r.failure = "U(k^) . eta differs from k";
    }
  }
  for_each_functor(*f.carrier, *a.carrier, [&](auto const& om, auto const& am) {
    FinFunctor g{f.carrier, a.carrier, om, am};
    if (compose(g, f.eta) == k && check_structure_morphism(g, f.structure, a, lim).ok) {
      ++r.solutions;
    }
    return true;
  });
  if (r.solutions != 1 && r.failure.empty()) {
    r.failure = std::to_string(r.solutions)
                + " structure morphisms satisfy the equation";
  }
  return r;
}

/// Number of structure morphisms F -> A.
inline std::size_t count_structure_morphisms(CatStructure const& f,
                                             CatStructure const& a,
                                             Limits const& lim = {}) {
  std::size_t n = 0;
  for_each_functor(*f.carrier, *a.carrier, [&](auto const& om, auto const& am) {
    FinFunctor g{f.carrier, a.carrier, om, am};
    if (check_structure_morphism(g, f, a, lim).ok) {
      ++n;
    }
    return true;
  });
  return n;
}

}  // namespace enrich
