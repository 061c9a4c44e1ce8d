#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "enrich/error.hpp"
#include "enrich/fincat.hpp"
#include "enrich/functor.hpp"
#include "enrich/isbell.hpp"
#include "enrich/term.hpp"

namespace enrich {

/// Process-wide cache of materialized powers A^X.
class PowerCache {
 public:
  static PowerCache& instance() {
    static PowerCache c;
    return c;
  }

  std::shared_ptr<FunctorCat const> get(CatPtr const& x, CatPtr const& a,
                                        Limits const& lim) {
    std::string key = x->key() + "#" + a->key();
    auto it = cache_.find(key);
    if (it != cache_.end()) {
      return it->second;
    }
    if (cache_.size() >= max_entries_) {
      cache_.clear();
    }
    auto fc = std::make_shared<FunctorCat const>(x, a, lim);
    cache_.emplace(std::move(key), fc);
    return fc;
  }

  void clear() { cache_.clear(); }

 private:
  std::unordered_map<std::string, std::shared_ptr<FunctorCat const>> cache_;
  std::size_t max_entries_ = 4096;
};

inline std::shared_ptr<FunctorCat const> power(CatPtr const& x,
                                               CatPtr const& a,
                                               Limits const& lim = {}) {
  return PowerCache::instance().get(x, a, lim);
}

/// A^𝟚 together with the bijection between its objects and arrows of A.
struct ArrowCat {
  std::shared_ptr<FunctorCat const> fc;
  std::vector<int> object_of_arrow;
  std::vector<ArrId> arrow_of_object;

  explicit ArrowCat(CatPtr const& a, Limits const& lim = {})
      : fc(power(std_shapes::two(), a, lim)) {
    object_of_arrow.assign(a->num_arrows(), -1);
    arrow_of_object.assign(fc->num_objects(), -1);
    for (int o = 0; o < static_cast<int>(fc->num_objects()); ++o) {
      ArrId x = fc->arrows_of(o)[kTwoU];
      arrow_of_object[o] = x;
      object_of_arrow[x] = o;
    }
  }

  /// The commutative square from arrow object `s` to `t` with the given
  /// components at 0 and 1, or -1.
  int square(int s, int t, ArrId c0, ArrId c1) const {
    ArrId c[2] = {c0, c1};
    return fc->find_arrow(s, t, c);
  }
};

/// Interpretation of a term over a structure A: a functor A^X -> A (dim 1)
/// or A^X -> A^𝟚 (dim 2), as tables over the materialized powers. For
/// dim 2 the entries are ids in A^𝟚.
struct Interp {
  int dim = 1;
  std::vector<int> obj;
  std::vector<int> arr;

  bool operator==(Interp const&) const = default;
};

/// Why a glue node failed to interpret.
struct Obstruction {
  std::string kind;    // EndpointClash, IdentityViolated, NotInvertible, ...
  std::string node;    // rendering of the innermost failing glue node
  std::string detail;  // where in A^X and which obligation
};

struct EvalResult {
  std::optional<Interp> value;
  std::optional<Obstruction> obstruction;

  bool ok() const { return value.has_value(); }
};

/// A structure: a carrier category with a functor A^X -> A for every
/// function symbol and a natural transformation for every 2-function
/// symbol. Tables are indexed by the ids of the materialized powers.
struct CatStructure {
  std::string name;
  LangPtr lang;
  CatPtr carrier;
  std::map<std::string, std::vector<ObjId>> op_obj;
  std::map<std::string, std::vector<ArrId>> op_arr;
  std::map<std::string, std::vector<ArrId>> op2_comp;
};

using StructPtr = std::shared_ptr<CatStructure const>;

class Evaluator;

/// Empty when the structure is well formed, else a description of the
/// first problem.
std::string structure_violation(CatStructure const& s, Limits const& lim = {});

/// Interprets terms over one structure, memoizing by structural equality.
class Evaluator {
 public:
  explicit Evaluator(CatStructure const& s, Limits lim = {})
      : s_(s), lim_(lim), arrows_(s.carrier, lim) {}

  CatStructure const& structure() const { return s_; }
  ArrowCat const& arrow_cat() const { return arrows_; }
  std::shared_ptr<FunctorCat const> power_of(CatPtr const& x) const {
    return power(x, s_.carrier, lim_);
  }

  EvalResult const& eval(TermPtr const& t) {
    auto it = memo_.find(t);
    if (it != memo_.end()) {
      return it->second;
    }
    EvalResult r = compute(*t);
    return memo_.emplace(t, std::move(r)).first->second;
  }

  /// The source (i = 0) or target (i = 1) functor of a dim-2 interpretation.
  Interp boundary(Interp const& v, int i) const {
    auto const& ac = *arrows_.fc;
    Interp out;
    out.dim = 1;
    auto const& a = *s_.carrier;
    for (int o : v.obj) {
      ArrId x = arrows_.arrow_of_object[o];
      out.obj.push_back(i == 0 ? a.source(x) : a.target(x));
    }
    for (int q : v.arr) {
      out.arr.push_back(ac.components(q)[i]);
    }
    return out;
  }

 private:
  static EvalResult fail(Term const& node, std::string kind,
                         std::string detail) {
    return {std::nullopt,
            Obstruction{std::move(kind), render(node), std::move(detail)}};
  }

  EvalResult compute(Term const& t) {
    auto const& a = *s_.carrier;
    switch (t.kind) {
      case TermKind::var_obj: {
        auto p = power_of(t.arity);
        Interp v;
        for (int h = 0; h < static_cast<int>(p->num_objects()); ++h) {
          v.obj.push_back(p->objects_of(h)[t.index]);
        }
        for (int e = 0; e < static_cast<int>(p->num_arrows()); ++e) {
          v.arr.push_back(p->components(e)[t.index]);
        }
        return {std::move(v), std::nullopt};
      }
      case TermKind::var_arr: {
        auto p = power_of(t.arity);
        Interp v;
        v.dim = 2;
        ObjId s = t.arity->source(t.index);
        ObjId g = t.arity->target(t.index);
        for (int h = 0; h < static_cast<int>(p->num_objects()); ++h) {
          v.obj.push_back(arrows_.object_of_arrow[p->arrows_of(h)[t.index]]);
        }
        for (int e = 0; e < static_cast<int>(p->num_arrows()); ++e) {
          auto c = p->components(e);
          v.arr.push_back(arrows_.square(v.obj[p->source(e)],
                                         v.obj[p->target(e)], c[s], c[g]));
        }
        return {std::move(v), std::nullopt};
      }
      case TermKind::sym: {
        Interp v;
        v.obj = s_.op_obj.at(t.name);
        v.arr = s_.op_arr.at(t.name);
        return {std::move(v), std::nullopt};
      }
      case TermKind::sym2: {
        auto const* op = s_.lang->find_op2(t.name);
        auto const& dom = eval(op->dom);
        auto const& cod = eval(op->cod);
        if (!dom.ok() || !cod.ok()) {
          return fail(t, "BoundaryUndefined",
                      "a boundary of " + t.name + " is not interpretable");
        }
        auto p = power_of(t.arity);
        Interp v;
        v.dim = 2;
        for (ArrId c : s_.op2_comp.at(t.name)) {
          v.obj.push_back(arrows_.object_of_arrow[c]);
        }
        for (int e = 0; e < static_cast<int>(p->num_arrows()); ++e) {
          v.arr.push_back(arrows_.square(v.obj[p->source(e)],
                                         v.obj[p->target(e)],
                                         dom.value->arr[e], cod.value->arr[e]));
        }
        return {std::move(v), std::nullopt};
      }
      case TermKind::power2:
        return power_rule(t);
      case TermKind::glue:
        return glue_rule(t);
    }
    (void)a;
    return fail(t, "Unknown", "unknown node");
  }

  // t^𝟚 : A^{𝟚×X} ≅ (A^X)^𝟚 -> A^𝟚
  EvalResult power_rule(Term const& t) {
    auto const& inner = eval(t.inner);
    if (!inner.ok()) {
      return inner;
    }
    auto const& iv = *inner.value;
    auto const& x = *t.inner->arity;
    auto px = power_of(t.inner->arity);
    auto p2 = power_of(t.arity);
    auto nx = static_cast<int>(x.num_objects());
    auto mx = static_cast<int>(x.num_arrows());
    std::vector<int> h0(p2->num_objects());
    std::vector<int> h1(p2->num_objects());
    Interp v;
    v.dim = 2;
    std::vector<ObjId> om(nx);
    std::vector<ArrId> am(mx);
    std::vector<ArrId> comps(nx);
    for (int h = 0; h < static_cast<int>(p2->num_objects()); ++h) {
      auto ho = p2->objects_of(h);
      auto ha = p2->arrows_of(h);
      for (int side = 0; side < 2; ++side) {
        ArrId id_side = side == 0 ? kTwoId0 : kTwoId1;
        for (ObjId o = 0; o < nx; ++o) {
          om[o] = ho[side * nx + o];
        }
        for (ArrId r = 0; r < mx; ++r) {
          am[r] = ha[id_side * mx + r];
        }
        (side == 0 ? h0 : h1)[h] = px->find_object(om, am);
      }
      for (ObjId o = 0; o < nx; ++o) {
        comps[o] = ha[kTwoU * mx + x.identity(o)];
      }
      int theta = px->find_arrow(h0[h], h1[h], comps);
      v.obj.push_back(arrows_.object_of_arrow[iv.arr[theta]]);
    }
    for (int e = 0; e < static_cast<int>(p2->num_arrows()); ++e) {
      auto c = p2->components(e);
      int s = p2->source(e);
      int g = p2->target(e);
      ArrId k[2];
      for (int side = 0; side < 2; ++side) {
        for (ObjId o = 0; o < nx; ++o) {
          comps[o] = c[side * nx + o];
        }
        int kappa = px->find_arrow(side == 0 ? h0[s] : h1[s],
                                   side == 0 ? h0[g] : h1[g], comps);
        k[side] = iv.arr[kappa];
      }
      v.arr.push_back(arrows_.square(v.obj[s], v.obj[g], k[0], k[1]));
    }
    return {std::move(v), std::nullopt};
  }

  EvalResult glue_rule(Term const& t) {
    auto const& outer = eval(t.inner);
    if (!outer.ok()) {
      return outer;
    }
    std::vector<Interp const*> fam;
    for (auto const& m : t.family) {
      auto const& r = eval(m);
      if (!r.ok()) {
        return r;
      }
      fam.push_back(&*r.value);
    }
    auto const& gamma = *t.gamma;
    auto const& y = *gamma.y;
    auto const& a = *s_.carrier;
    auto const& ac = *arrows_.fc;
    auto px = power_of(t.arity);
    auto py = power_of(gamma.y);
    auto ny = static_cast<int>(y.num_objects());
    auto my = static_cast<int>(y.num_arrows());
    std::vector<int> assembled(px->num_objects());
    std::vector<ObjId> fo(ny);
    std::vector<ArrId> fa(my);
    for (int h = 0; h < static_cast<int>(px->num_objects()); ++h) {
      auto where = [&] { return "at object " + px->object_label(h) + " of A^X"; };
      std::fill(fo.begin(), fo.end(), -1);
      std::fill(fa.begin(), fa.end(), -1);
      auto put = [&](ObjId yo, ObjId v) {
        if (fo[yo] >= 0 && fo[yo] != v) {
          return false;
        }
        fo[yo] = v;
        return true;
      };
      for (std::size_t k = 0; k < gamma.gens.size(); ++k) {
        auto const& g = gamma.gens[k];
        if (g.is_object) {
          if (!put(g.id, fam[k]->obj[h])) {
            return fail(t, "EndpointClash",
                        where() + ": object " + y.object_name(g.id)
                            + " receives two values");
          }
        } else {
          ArrId v = arrows_.arrow_of_object[fam[k]->obj[h]];
          if (!put(y.source(g.id), a.source(v))
              || !put(y.target(g.id), a.target(v))) {
            return fail(t, "EndpointClash",
                        where() + ": endpoints of generator "
                            + y.arrow_name(g.id) + " disagree");
          }
        }
      }
      std::vector<std::optional<ArrId>> memo;
      for (ArrId r = 0; r < my; ++r) {
        auto val = replay(
            gamma.closure, a, r,
            [&](int k) -> std::optional<ArrId> {
              return arrows_.arrow_of_object[fam[k]->obj[h]];
            },
            [&](ObjId o) { return fo[o]; }, memo);
        if (!val) {
          return fail(t, "NotInvertible",
                      where() + ": arrow " + y.arrow_name(r)
                          + " needs an inverse that does not exist");
        }
        fa[r] = *val;
      }
      for (std::size_t k = 0; k < gamma.gens.size(); ++k) {
        auto const& g = gamma.gens[k];
        if (!g.is_object
            && fa[g.id] != arrows_.arrow_of_object[fam[k]->obj[h]]) {
          return fail(t, y.is_identity(g.id) ? "IdentityViolated"
                                             : "RelationViolated",
                      where() + ": generator " + y.arrow_name(g.id)
                          + " receives a conflicting value");
        }
      }
      for (ObjId o = 0; o < ny; ++o) {
        if (fa[y.identity(o)] != a.identity(fo[o])) {
          return fail(t, "IdentityViolated",
                      where() + ": identity of " + y.object_name(o)
                          + " is not sent to an identity");
        }
      }
      for (ArrId f = 0; f < my; ++f) {
        if (a.source(fa[f]) != fo[y.source(f)]
            || a.target(fa[f]) != fo[y.target(f)]) {
          return fail(t, "EndpointClash",
                      where() + ": arrow " + y.arrow_name(f)
                          + " has the wrong endpoints");
        }
      }
      for (ArrId f = 0; f < my; ++f) {
        for (ArrId g : y.out(y.target(f))) {
          if (a.comp(fa[g], fa[f]) != fa[y.comp(g, f)]) {
            return fail(t, "RelationViolated",
                        where() + ": relation " + y.arrow_name(g) + " . "
                            + y.arrow_name(f) + " = "
                            + y.arrow_name(y.comp(g, f)) + " fails");
          }
        }
      }
      assembled[h] = py->find_object(fo, fa);
    }
    std::vector<int> assembled_arr(px->num_arrows());
    std::vector<ArrId> comps(ny);
    for (int e = 0; e < static_cast<int>(px->num_arrows()); ++e) {
      auto where = [&] { return "at arrow " + px->arrow_label(e) + " of A^X"; };
      std::fill(comps.begin(), comps.end(), -1);
      auto put = [&](ObjId yo, ArrId v) {
        if (comps[yo] >= 0 && comps[yo] != v) {
          return false;
        }
        comps[yo] = v;
        return true;
      };
      for (std::size_t k = 0; k < gamma.gens.size(); ++k) {
        auto const& g = gamma.gens[k];
        bool ok;
        if (g.is_object) {
          ok = put(g.id, fam[k]->arr[e]);
        } else {
          auto c = ac.components(fam[k]->arr[e]);
          ok = put(y.source(g.id), c[0]) && put(y.target(g.id), c[1]);
        }
        if (!ok) {
          return fail(t, "ComponentClash",
                      where() + ": two components at one object of Y");
        }
      }
      int q = py->find_arrow(assembled[px->source(e)], assembled[px->target(e)],
                             comps);
      if (q < 0) {
        return fail(t, "NaturalityBroken",
                    where() + ": the components are not natural");
      }
      assembled_arr[e] = q;
    }
    auto const& ov = *outer.value;
    Interp v;
    v.dim = ov.dim;
    for (int h : assembled) {
      v.obj.push_back(ov.obj[h]);
    }
    for (int q : assembled_arr) {
      v.arr.push_back(ov.arr[q]);
    }
    return {std::move(v), std::nullopt};
  }

  CatStructure const& s_;
  Limits lim_;
  ArrowCat arrows_;
  std::unordered_map<TermPtr, EvalResult, TermPtrHash, TermPtrEq> memo_;
};

inline std::string structure_violation(CatStructure const& s,
                                       Limits const& lim) {
  auto const& a = *s.carrier;
  for (auto const& op : s.lang->ops()) {
    auto p = power(op.arity, s.carrier, lim);
    auto io = s.op_obj.find(op.name);
    auto ia = s.op_arr.find(op.name);
    if (io == s.op_obj.end() || ia == s.op_arr.end()) {
      return "no interpretation for " + op.name;
    }
    auto const& om = io->second;
    auto const& am = ia->second;
    if (om.size() != p->num_objects() || am.size() != p->num_arrows()) {
      return "interpretation of " + op.name + " has the wrong size";
    }
    for (int e = 0; e < static_cast<int>(p->num_arrows()); ++e) {
      if (am[e] < 0 || am[e] >= static_cast<int>(a.num_arrows())
          || a.source(am[e]) != om[p->source(e)]
          || a.target(am[e]) != om[p->target(e)]) {
        return op.name + " does not respect endpoints at "
               + p->arrow_label(e);
      }
    }
    for (int h = 0; h < static_cast<int>(p->num_objects()); ++h) {
      if (am[p->identity(h)] != a.identity(om[h])) {
        return op.name + " does not preserve the identity at "
               + p->object_label(h);
      }
    }
    for (int e = 0; e < static_cast<int>(p->num_arrows()); ++e) {
      for (int f = 0; f < static_cast<int>(p->num_arrows()); ++f) {
        if (p->target(e) != p->source(f)) {
          continue;
        }
        if (am[p->compose(f, e)] != a.comp(am[f], am[e])) {
          return op.name + " does not preserve composition";
        }
      }
    }
  }
  Evaluator ev(s, lim);
  for (auto const& op : s.lang->ops2()) {
    auto p = power(op.arity, s.carrier, lim);
    auto it = s.op2_comp.find(op.name);
    if (it == s.op2_comp.end()) {
      return "no interpretation for " + op.name;
    }
    auto const& c = it->second;
    if (c.size() != p->num_objects()) {
      return "interpretation of " + op.name + " has the wrong size";
    }
    auto const& dom = ev.eval(op.dom);
    auto const& cod = ev.eval(op.cod);
    if (!dom.ok() || !cod.ok()) {
      return "a boundary of " + op.name + " is not interpretable";
    }
    for (int h = 0; h < static_cast<int>(p->num_objects()); ++h) {
      if (c[h] < 0 || c[h] >= static_cast<int>(a.num_arrows())
          || a.source(c[h]) != dom.value->obj[h]
          || a.target(c[h]) != cod.value->obj[h]) {
        return op.name + " has a component with wrong endpoints at "
               + p->object_label(h);
      }
    }
    for (int e = 0; e < static_cast<int>(p->num_arrows()); ++e) {
      if (a.comp(cod.value->arr[e], c[p->source(e)])
          != a.comp(c[p->target(e)], dom.value->arr[e])) {
        return op.name + " is not natural at " + p->arrow_label(e);
      }
    }
  }
  return {};
}

inline void validate_structure(CatStructure const& s, Limits const& lim = {}) {
  auto v = structure_violation(s, lim);
  if (!v.empty()) {
    throw Error(ErrorKind::invalid_structure, v);
  }
}

enum class Status { holds, fails, not_interpretable };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::holds: return "Holds";
    case Status::fails: return "Fails";
    case Status::not_interpretable: return "NotInterpretable";
  }
  return "?";
}

struct Verdict {
  Status status = Status::holds;
  std::string witness;
  std::optional<Obstruction> obstruction;
  std::string judgement;

  bool holds() const { return status == Status::holds; }
};

/// Empty if equal, else a point of A^X where the tables differ.
inline std::string interp_difference(Interp const& l, Interp const& r,
                                     FunctorCat const& px) {
  if (l.dim != r.dim) {
    return "dimensions differ";
  }
  for (std::size_t h = 0; h < l.obj.size(); ++h) {
    if (l.obj[h] != r.obj[h]) {
      return "object " + px.object_label(static_cast<int>(h)) + " of A^X";
    }
  }
  for (std::size_t e = 0; e < l.arr.size(); ++e) {
    if (l.arr[e] != r.arr[e]) {
      return "arrow " + px.arrow_label(static_cast<int>(e)) + " of A^X";
    }
  }
  return {};
}

inline Verdict check_judgement(Judgement const& j, Evaluator& ev) {
  Verdict v;
  v.judgement = j.label.empty()
                    ? (j.kind == Judgement::Kind::defined
                           ? "defined " + render(j.lhs)
                           : render(j.lhs) + " = " + render(j.rhs))
                    : j.label;
  auto const& l = ev.eval(j.lhs);
  if (!l.ok()) {
    v.status = Status::not_interpretable;
    v.obstruction = l.obstruction;
    v.witness = l.obstruction->kind + " in " + l.obstruction->node + " "
                + l.obstruction->detail;
    return v;
  }
  if (j.kind == Judgement::Kind::defined) {
    return v;
  }
  auto const& r = ev.eval(j.rhs);
  if (!r.ok()) {
    v.status = Status::not_interpretable;
    v.obstruction = r.obstruction;
    v.witness = r.obstruction->kind + " in " + r.obstruction->node + " "
                + r.obstruction->detail;
    return v;
  }
  auto px = ev.power_of(j.lhs->arity);
  auto d = interp_difference(*l.value, *r.value, *px);
  if (!d.empty()) {
    v.status = Status::fails;
    v.witness = "sides differ at " + d;
  }
  return v;
}

inline Verdict check_judgement(Judgement const& j, CatStructure const& a) {
  Evaluator ev(a);
  return check_judgement(j, ev);
}

struct ModelReport {
  bool holds = true;
  std::vector<Verdict> verdicts;

  Verdict const* first_failure() const {
    for (auto const& v : verdicts) {
      if (!v.holds()) {
        return &v;
      }
    }
    return nullptr;
  }
};

inline ModelReport is_model(CatStructure const& a, Theory2 const& th,
                            Limits const& lim = {}) {
  Evaluator ev(a, lim);
  ModelReport r;
  for (auto const& j : th.judgements) {
    r.verdicts.push_back(check_judgement(j, ev));
    r.holds = r.holds && r.verdicts.back().holds();
  }
  return r;
}

struct MorphismCheck {
  bool ok = true;
  std::string symbol;
  std::string witness;
};

/// Whether h : A -> B commutes with every symbol interpretation.
inline MorphismCheck check_structure_morphism(FinFunctor const& h,
                                              CatStructure const& a,
                                              CatStructure const& b,
                                              Limits const& lim = {}) {
  auto transport = [&](FunctorCat const& pa, FunctorCat const& pb,
                       std::vector<int>& obj, std::vector<int>& arr) {
    obj.resize(pa.num_objects());
    arr.resize(pa.num_arrows());
    std::vector<ObjId> om;
    std::vector<ArrId> am;
    for (int x = 0; x < static_cast<int>(pa.num_objects()); ++x) {
      om.clear();
      am.clear();
      for (ObjId o : pa.objects_of(x)) {
        om.push_back(h.obj[o]);
      }
      for (ArrId r : pa.arrows_of(x)) {
        am.push_back(h.arr[r]);
      }
      obj[x] = pb.find_object(om, am);
    }
    for (int e = 0; e < static_cast<int>(pa.num_arrows()); ++e) {
      am.clear();
      for (ArrId r : pa.components(e)) {
        am.push_back(h.arr[r]);
      }
      arr[e] = pb.find_arrow(obj[pa.source(e)], obj[pa.target(e)], am);
    }
  };
  auto bad = [](std::string s, std::string w) {
    return MorphismCheck{false, std::move(s), std::move(w)};
  };
  for (auto const& op : a.lang->ops()) {
    auto pa = power(op.arity, a.carrier, lim);
    auto pb = power(op.arity, b.carrier, lim);
    std::vector<int> to, ta;
    transport(*pa, *pb, to, ta);
    auto const& fa_o = a.op_obj.at(op.name);
    auto const& fa_a = a.op_arr.at(op.name);
    auto const& fb_o = b.op_obj.at(op.name);
    auto const& fb_a = b.op_arr.at(op.name);
    for (int x = 0; x < static_cast<int>(pa->num_objects()); ++x) {
      if (h.obj[fa_o[x]] != fb_o[to[x]]) {
        return bad(op.name, "object " + pa->object_label(x));
      }
    }
    for (int e = 0; e < static_cast<int>(pa->num_arrows()); ++e) {
      if (h.arr[fa_a[e]] != fb_a[ta[e]]) {
        return bad(op.name, "arrow " + pa->arrow_label(e));
      }
    }
  }
  for (auto const& op : a.lang->ops2()) {
    auto pa = power(op.arity, a.carrier, lim);
    auto pb = power(op.arity, b.carrier, lim);
    std::vector<int> to, ta;
    transport(*pa, *pb, to, ta);
    auto const& ca = a.op2_comp.at(op.name);
    auto const& cb = b.op2_comp.at(op.name);
    for (int x = 0; x < static_cast<int>(pa->num_objects()); ++x) {
      if (h.arr[ca[x]] != cb[to[x]]) {
        return bad(op.name, "object " + pa->object_label(x));
      }
    }
  }
  return {};
}

/// The power of a 2-term τ along h : 𝟚 -> 𝟚×𝟚 computed directly from the
/// interpretation of τ, without rewriting: a (𝟚×X)-ary interpretation.
inline EvalResult direct_power2_oracle(TermPtr const& tau, ArrId h,
                                       Evaluator& ev) {
  auto const& r = ev.eval(tau);
  if (!r.ok()) {
    return r;
  }
  auto const& iv = *r.value;
  auto const& a = *ev.structure().carrier;
  auto const& arrows = ev.arrow_cat();
  auto const& ac = *arrows.fc;
  auto const& x = *tau->arity;
  auto px = ev.power_of(tau->arity);
  auto p2 = ev.power_of(power_arity(tau->arity));
  auto nx = static_cast<int>(x.num_objects());
  auto mx = static_cast<int>(x.num_arrows());
  auto const& sq = *std_shapes::two_by_two();
  ObjId hs = sq.source(h);
  ObjId ht = sq.target(h);
  // objects of 𝟚×𝟚 are (g, p) = 2g + p
  std::vector<int> h0(p2->num_objects()), h1(p2->num_objects());
  std::vector<ObjId> om(nx);
  std::vector<ArrId> am(mx);
  std::vector<ArrId> comps(nx);
  Interp v;
  v.dim = 2;
  for (int k = 0; k < static_cast<int>(p2->num_objects()); ++k) {
    auto ho = p2->objects_of(k);
    auto ha = p2->arrows_of(k);
    for (int side = 0; side < 2; ++side) {
      for (ObjId o = 0; o < nx; ++o) {
        om[o] = ho[side * nx + o];
      }
      for (ArrId q = 0; q < mx; ++q) {
        am[q] = ha[(side == 0 ? kTwoId0 : kTwoId1) * mx + q];
      }
      (side == 0 ? h0 : h1)[k] = px->find_object(om, am);
    }
    for (ObjId o = 0; o < nx; ++o) {
      comps[o] = ha[kTwoU * mx + x.identity(o)];
    }
    int theta = px->find_arrow(h0[k], h1[k], comps);
    // the square τ(θ): from τ(H0) to τ(H1)
    auto c = ac.components(iv.arr[theta]);
    ArrId a0 = arrows.arrow_of_object[iv.obj[h0[k]]];
    ArrId a1 = arrows.arrow_of_object[iv.obj[h1[k]]];
    ArrId pick;
    switch (h) {
      case 0 * 3 + kTwoU: pick = c[0]; break;          // (0,0) -> (0,1)
      case 1 * 3 + kTwoU: pick = c[1]; break;          // (1,0) -> (1,1)
      case kTwoU * 3 + 0: pick = a0; break;            // (0,0) -> (1,0)
      case kTwoU * 3 + 1: pick = a1; break;            // (0,1) -> (1,1)
      default: pick = a.comp(a1, c[0]); break;         // (0,0) -> (1,1)
    }
    v.obj.push_back(arrows.object_of_arrow[pick]);
  }
  auto corner = [&](std::span<ArrId const> d0, std::span<ArrId const> d1,
                    ObjId gp) {
    int g = gp / 2;
    int p = gp % 2;
    return (p == 0 ? d0 : d1)[g];
  };
  for (int e = 0; e < static_cast<int>(p2->num_arrows()); ++e) {
    auto c = p2->components(e);
    int s = p2->source(e);
    int t = p2->target(e);
    int kap[2];
    for (int side = 0; side < 2; ++side) {
      for (ObjId o = 0; o < nx; ++o) {
        comps[o] = c[side * nx + o];
      }
      kap[side] = px->find_arrow(side == 0 ? h0[s] : h1[s],
                                 side == 0 ? h0[t] : h1[t], comps);
    }
    auto d0 = ac.components(iv.arr[kap[0]]);
    auto d1 = ac.components(iv.arr[kap[1]]);
    v.arr.push_back(arrows.square(v.obj[s], v.obj[t], corner(d0, d1, hs),
                                  corner(d0, d1, ht)));
  }
  return {std::move(v), std::nullopt};
}

}  // namespace enrich
