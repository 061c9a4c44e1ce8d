#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "enrich/error.hpp"
#include "enrich/fincat.hpp"
#include "enrich/functor.hpp"
#include "enrich/isbell.hpp"

namespace enrich {

/// Shared instances of the small shapes the calculus refers to.
namespace std_shapes {
inline CatPtr const& empty() {
  static CatPtr c = make_cat(shapes::empty());
  return c;
}
inline CatPtr const& one() {
  static CatPtr c = make_cat(shapes::terminal());
  return c;
}
inline CatPtr const& two() {
  static CatPtr c = make_cat(shapes::arrow());
  return c;
}
inline CatPtr const& three() {
  static CatPtr c = make_cat(shapes::chain(3));
  return c;
}
inline CatPtr const& iso() {
  static CatPtr c = make_cat(shapes::iso());
  return c;
}
inline CatPtr const& two_by_two() {
  static CatPtr c = make_cat(product(shapes::arrow(), shapes::arrow()));
  return c;
}
}  // namespace std_shapes

// arrows of 𝟚
inline constexpr ArrId kTwoId0 = 0;
inline constexpr ArrId kTwoId1 = 1;
inline constexpr ArrId kTwoU = 2;

enum class TermKind { var_obj, var_arr, sym, sym2, power2, glue };

struct Term;
using TermPtr = std::shared_ptr<Term const>;

/// A node of a 2-categorical term. Nodes are immutable and shared; `hash`
/// is computed once at construction.
struct Term {
  TermKind kind;
  CatPtr arity;
  int dim = 1;
  int index = -1;    // object or arrow of the arity for variables
  std::string name;  // symbol name
  TermPtr inner;     // power2 operand, glue outer term
  std::shared_ptr<GammaEpi const> gamma;
  std::vector<TermPtr> family;
  std::size_t hash = 0;
  int depth = 1;
};

inline bool same_gamma(GammaEpi const& a, GammaEpi const& b) {
  return a.gens == b.gens && *a.y == *b.y;
}

/// Structural equality.
inline bool term_equal(Term const& a, Term const& b) {
  if (&a == &b) {
    return true;
  }
  if (a.hash != b.hash || a.kind != b.kind || a.dim != b.dim
      || a.index != b.index || a.name != b.name
      || a.family.size() != b.family.size() || !(*a.arity == *b.arity)) {
    return false;
  }
  if (static_cast<bool>(a.inner) != static_cast<bool>(b.inner)
      || (a.inner && !term_equal(*a.inner, *b.inner))) {
    return false;
  }
  if (static_cast<bool>(a.gamma) != static_cast<bool>(b.gamma)
      || (a.gamma && !same_gamma(*a.gamma, *b.gamma))) {
    return false;
  }
  for (std::size_t i = 0; i < a.family.size(); ++i) {
    if (!term_equal(*a.family[i], *b.family[i])) {
      return false;
    }
  }
  return true;
}

struct TermPtrHash {
  std::size_t operator()(TermPtr const& t) const noexcept { return t->hash; }
};
struct TermPtrEq {
  bool operator()(TermPtr const& a, TermPtr const& b) const {
    return term_equal(*a, *b);
  }
};

namespace detail {

inline std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

inline TermPtr finish(Term t) {
  std::size_t h = static_cast<std::size_t>(t.kind) * 31 + t.dim;
  h = mix(h, std::hash<std::string>{}(t.arity->key()));
  h = mix(h, static_cast<std::size_t>(t.index + 1));
  h = mix(h, std::hash<std::string>{}(t.name));
  if (t.inner) {
    h = mix(h, t.inner->hash);
    t.depth = std::max(t.depth, t.inner->depth + 1);
  }
  if (t.gamma) {
    for (auto const& g : t.gamma->gens) {
      h = mix(h, static_cast<std::size_t>(g.id * 2 + (g.is_object ? 1 : 0)));
    }
  }
  for (auto const& f : t.family) {
    h = mix(h, f->hash);
    t.depth = std::max(t.depth, f->depth + 1);
  }
  if (t.kind == TermKind::glue) {
    t.depth = std::max(t.depth, 2);
  }
  t.hash = h;
  return std::make_shared<Term const>(std::move(t));
}

}  // namespace detail

struct Op1 {
  std::string name;
  CatPtr arity;
};

/// A 2-function symbol σ : dom => cod. The boundaries are 1-terms of the
/// symbol's arity; plain symbols are the usual case.
struct Op2 {
  std::string name;
  CatPtr arity;
  TermPtr dom;
  TermPtr cod;
};

/// A language: function symbols and 2-function symbols, each with an
/// input arity.
class Language2 {
 public:
  explicit Language2(std::string name = "L") : name_(std::move(name)) {}

  std::string const& name() const { return name_; }
  std::vector<Op1> const& ops() const { return ops_; }
  std::vector<Op2> const& ops2() const { return ops2_; }

  void add_op(std::string name, CatPtr arity) {
    check_fresh(name);
    ops_.push_back({std::move(name), std::move(arity)});
  }

  void add_op2(std::string name, TermPtr dom, TermPtr cod) {
    check_fresh(name);
    if (dom->dim != 1 || cod->dim != 1) {
      throw Error(ErrorKind::dimension_mismatch,
                  "boundaries of " + name + " must be 1-terms");
    }
    if (!(*dom->arity == *cod->arity)) {
      throw Error(ErrorKind::arity_mismatch,
                  "boundaries of " + name + " have different arities");
    }
    auto arity = dom->arity;
    ops2_.push_back({std::move(name), arity, std::move(dom), std::move(cod)});
  }

  Op1 const* find_op(std::string const& n) const {
    for (auto const& o : ops_) {
      if (o.name == n) {
        return &o;
      }
    }
    return nullptr;
  }

  Op2 const* find_op2(std::string const& n) const {
    for (auto const& o : ops2_) {
      if (o.name == n) {
        return &o;
      }
    }
    return nullptr;
  }

 private:
  void check_fresh(std::string const& n) const {
    if (find_op(n) || find_op2(n)) {
      throw Error(ErrorKind::invalid_argument, "symbol " + n + " declared twice");
    }
  }

  std::string name_;
  std::vector<Op1> ops_;
  std::vector<Op2> ops2_;
};

using LangPtr = std::shared_ptr<Language2 const>;

/// Rule 1: the object x of X as an X-ary term.
inline TermPtr var_obj(CatPtr x, ObjId o) {
  if (o < 0 || o >= static_cast<ObjId>(x->num_objects())) {
    throw Error(ErrorKind::unknown_object, std::to_string(o));
  }
  Term t{TermKind::var_obj, std::move(x)};
  t.index = o;
  return detail::finish(std::move(t));
}

/// Rule 1: the arrow ρ of X as an X-ary 2-term.
inline TermPtr var_arr(CatPtr x, ArrId a) {
  if (a < 0 || a >= static_cast<ArrId>(x->num_arrows())) {
    throw Error(ErrorKind::unknown_arrow, std::to_string(a));
  }
  Term t{TermKind::var_arr, std::move(x)};
  t.dim = 2;
  t.index = a;
  return detail::finish(std::move(t));
}

inline TermPtr var_obj(CatPtr x, std::string const& name) {
  auto o = x->find_object(name);
  if (!o) {
    throw Error(ErrorKind::unknown_object, name);
  }
  return var_obj(std::move(x), *o);
}

inline TermPtr var_arr(CatPtr x, std::string const& name) {
  auto a = x->find_arrow(name);
  if (!a) {
    throw Error(ErrorKind::unknown_arrow, name);
  }
  return var_arr(std::move(x), *a);
}

/// Rule 2 for a function symbol.
inline TermPtr sym(Language2 const& l, std::string const& name) {
  auto const* op = l.find_op(name);
  if (!op) {
    throw Error(ErrorKind::unknown_symbol, name);
  }
  Term t{TermKind::sym, op->arity};
  t.name = name;
  return detail::finish(std::move(t));
}

/// Rule 2 for a 2-function symbol.
inline TermPtr sym2(Language2 const& l, std::string const& name) {
  auto const* op = l.find_op2(name);
  if (!op) {
    throw Error(ErrorKind::unknown_symbol, name);
  }
  Term t{TermKind::sym2, op->arity};
  t.dim = 2;
  t.name = name;
  return detail::finish(std::move(t));
}

/// The arity 𝟚×X of a power term; cached per X.
inline CatPtr power_arity(CatPtr const& x) {
  static std::vector<std::pair<CatPtr, CatPtr>> cache;
  for (auto const& [k, v] : cache) {
    if (*k == *x) {
      return v;
    }
  }
  auto p = make_cat(product(shapes::arrow(), *x));
  cache.push_back({x, p});
  return p;
}

/// Rule 3: t^𝟚 for a 1-term t, a (𝟚×X)-ary 2-term.
inline TermPtr power2(TermPtr t) {
  if (t->dim != 1) {
    throw Error(ErrorKind::dimension_mismatch,
                "the power rule applies to 1-terms only");
  }
  Term p{TermKind::power2, power_arity(t->arity)};
  p.dim = 2;
  p.inner = std::move(t);
  return detail::finish(std::move(p));
}

inline std::shared_ptr<GammaEpi const> make_gamma(CatPtr y,
                                                  std::vector<Generator> gens) {
  return std::make_shared<GammaEpi const>(
      validate_generating_family(std::move(y), std::move(gens)));
}

/// Rule 4: outer(family) along the generating family `gamma` of the arity of
/// `outer`. Arrow generators take X-ary 2-terms, object generators X-ary
/// 1-terms. `x` is the resulting arity; it is required when the family is
/// empty and checked otherwise.
inline TermPtr glue(TermPtr outer, std::shared_ptr<GammaEpi const> gamma,
                    std::vector<TermPtr> family, CatPtr x = nullptr) {
  if (!(*gamma->y == *outer->arity)) {
    throw Error(ErrorKind::arity_mismatch,
                "generating family is not over the arity of the outer term");
  }
  if (family.size() != gamma->gens.size()) {
    throw Error(ErrorKind::family_index_mismatch,
                "family has " + std::to_string(family.size())
                    + " members for " + std::to_string(gamma->gens.size())
                    + " generators");
  }
  for (std::size_t k = 0; k < family.size(); ++k) {
    int want = gamma->gens[k].is_object ? 1 : 2;
    if (family[k]->dim != want) {
      throw Error(ErrorKind::dimension_mismatch,
                  "member for generator " + gamma->generator_name(k)
                      + " must have dimension " + std::to_string(want));
    }
    if (!x) {
      x = family[k]->arity;
    } else if (!(*x == *family[k]->arity)) {
      throw Error(ErrorKind::arity_mismatch,
                  "family members have different arities");
    }
  }
  if (!x) {
    throw Error(ErrorKind::arity_mismatch,
                "an empty family needs an explicit arity");
  }
  Term t{TermKind::glue, std::move(x)};
  t.dim = outer->dim;
  t.inner = std::move(outer);
  t.gamma = std::move(gamma);
  t.family = std::move(family);
  return detail::finish(std::move(t));
}

/// σ_i: the domain (i = 0) or codomain (i = 1) of a 2-term.
inline TermPtr endpoint(TermPtr sigma, int i) {
  if (sigma->dim != 2) {
    throw Error(ErrorKind::dimension_mismatch, "endpoint of a 1-term");
  }
  static auto g = make_gamma(std_shapes::two(), {{false, kTwoU}});
  return glue(var_obj(std_shapes::two(), i), g, {std::move(sigma)});
}

/// 1_t.
inline TermPtr identity2(TermPtr t) {
  if (t->dim != 1) {
    throw Error(ErrorKind::dimension_mismatch, "identity of a 2-term");
  }
  static auto g = make_gamma(std_shapes::one(), {{true, 0}});
  return glue(var_arr(std_shapes::one(), 0), g, {std::move(t)});
}

/// σ∘τ, with τ applied first.
inline TermPtr compose2(TermPtr sigma, TermPtr tau) {
  if (sigma->dim != 2 || tau->dim != 2) {
    throw Error(ErrorKind::dimension_mismatch, "composite of 1-terms");
  }
  if (!(*sigma->arity == *tau->arity)) {
    throw Error(ErrorKind::arity_mismatch, "composite of different arities");
  }
  auto const& c3 = std_shapes::three();
  static auto g = make_gamma(c3, {{false, *c3->find_arrow("u01")},
                                  {false, *c3->find_arrow("u12")}});
  return glue(var_arr(c3, "u02"), g, {std::move(tau), std::move(sigma)});
}

/// σ⁻¹.
inline TermPtr invert2(TermPtr sigma) {
  if (sigma->dim != 2) {
    throw Error(ErrorKind::dimension_mismatch, "inverse of a 1-term");
  }
  auto const& ci = std_shapes::iso();
  static auto g = make_gamma(ci, {{false, *ci->find_arrow("u")}});
  return glue(var_arr(ci, "v"), g, {std::move(sigma)});
}

/// The 𝟚-ary 2-term 1_𝟚 glued along the identity of 1; interpretable
/// exactly over discrete categories.
inline TermPtr discreteness_term() {
  static auto g = make_gamma(std_shapes::one(), {{false, 0}});
  return glue(var_arr(std_shapes::one(), 0), g,
              {var_arr(std_shapes::two(), kTwoU)});
}

/// s(h) for s of arity X and h : X -> Y; a Y-ary term of the same dimension.
inline TermPtr precompose(TermPtr s, FinFunctor const& h) {
  if (!(*h.dom == *s->arity)) {
    throw Error(ErrorKind::arity_mismatch,
                "functor domain differs from the arity of the term");
  }
  auto gens = canonical_generators(*s->arity);
  std::vector<TermPtr> family;
  for (auto const& g : gens) {
    family.push_back(g.is_object ? var_obj(h.cod, h.obj[g.id])
                                 : var_arr(h.cod, h.arr[g.id]));
  }
  auto gamma = make_gamma(s->arity, std::move(gens));
  return glue(std::move(s), std::move(gamma), std::move(family), h.cod);
}

/// Injection of the k-th summand into coproduct(parts).
inline FinFunctor coproduct_injection(std::vector<CatPtr> const& parts,
                                      CatPtr const& sum, std::size_t k) {
  int ob = 0;
  int ab = 0;
  for (std::size_t i = 0; i < k; ++i) {
    ob += static_cast<int>(parts[i]->num_objects());
    ab += static_cast<int>(parts[i]->num_arrows());
  }
  FinFunctor f{parts[k], sum, {}, {}};
  for (ObjId o = 0; o < static_cast<ObjId>(parts[k]->num_objects()); ++o) {
    f.obj.push_back(ob + o);
  }
  for (ArrId a = 0; a < static_cast<ArrId>(parts[k]->num_arrows()); ++a) {
    f.arr.push_back(ab + a);
  }
  return f;
}

/// Glue members of different arities X_j, producing a term of arity ΣX_j.
inline TermPtr sum_superpose(TermPtr outer,
                             std::shared_ptr<GammaEpi const> gamma,
                             std::vector<TermPtr> const& family) {
  if (family.size() != gamma->gens.size()) {
    throw Error(ErrorKind::family_index_mismatch,
                "family does not match the generators");
  }
  std::vector<CatPtr> parts;
  std::vector<FinCat> cats;
  for (auto const& t : family) {
    parts.push_back(t->arity);
    cats.push_back(*t->arity);
  }
  auto sum = make_cat(coproduct(cats));
  if (family.size() == 1) {
    sum = family[0]->arity;
  }
  std::vector<TermPtr> moved;
  for (std::size_t k = 0; k < family.size(); ++k) {
    moved.push_back(
        precompose(family[k], coproduct_injection(parts, sum, k)));
  }
  return glue(std::move(outer), std::move(gamma), std::move(moved), sum);
}

/// The projection π_i : X -> 𝟚×X, x ↦ (i, x).
inline FinFunctor power_section(CatPtr const& x, int i) {
  auto px = power_arity(x);
  FinFunctor f{x, px, {}, {}};
  auto nx = static_cast<int>(x->num_objects());
  auto mx = static_cast<int>(x->num_arrows());
  for (ObjId o = 0; o < nx; ++o) {
    f.obj.push_back(i * nx + o);
  }
  ArrId id_i = i == 0 ? kTwoId0 : kTwoId1;
  for (ArrId a = 0; a < mx; ++a) {
    f.arr.push_back(id_i * mx + a);
  }
  return f;
}

/// The would-be power of a 2-term τ along a non-identity arrow h of 𝟚×𝟚,
/// rewritten without applying the power rule to a 2-term. Object (g, p) of
/// 𝟚×𝟚 has g indexing the boundary of τ and p the power coordinate.
inline TermPtr eliminate_power2(TermPtr tau, ArrId h) {
  if (tau->dim != 2) {
    throw Error(ErrorKind::dimension_mismatch, "expected a 2-term");
  }
  auto const& sq = *std_shapes::two_by_two();
  if (h < 0 || h >= static_cast<ArrId>(sq.num_arrows()) || sq.is_identity(h)) {
    throw Error(ErrorKind::invalid_argument,
                "expected a non-identity arrow of 2x2");
  }
  ArrId g = h / 3;
  ArrId p = h % 3;
  auto case3 = [&] { return precompose(tau, power_section(tau->arity, 0)); };
  auto case4 = [&] { return precompose(tau, power_section(tau->arity, 1)); };
  if (g != kTwoU) {
    return power2(endpoint(tau, g == kTwoId0 ? 0 : 1));
  }
  if (p == kTwoId0) {
    return case3();
  }
  if (p == kTwoId1) {
    return case4();
  }
  return compose2(case4(), power2(endpoint(tau, 0)));
}

/// Replays the closure recipe of `f` under the epimorphism `e` with
/// compose2 and invert2 applied to the labels of the domain.
inline TermPtr epi_trace_term(FinFunctor const& e,
                              std::vector<TermPtr> const& arrow_labels,
                              std::vector<TermPtr> const& object_labels,
                              ArrId f) {
  Closure cl = isbell_closure(e);
  if (!cl.full()) {
    throw Error(ErrorKind::not_epi, "functor is not an epimorphism");
  }
  std::vector<TermPtr> memo(e.cod->num_arrows());
  std::function<TermPtr(ArrId)> go = [&](ArrId a) -> TermPtr {
    if (memo[a]) {
      return memo[a];
    }
    auto const& r = *cl.recipe[a];
    TermPtr out;
    switch (r.kind) {
      case Recipe::Kind::seed:
        out = arrow_labels.at(r.a);
        break;
      case Recipe::Kind::identity: {
        for (std::size_t o = 0; o < e.obj.size(); ++o) {
          if (e.obj[o] == r.a) {
            out = identity2(object_labels.at(o));
            break;
          }
        }
        break;
      }
      case Recipe::Kind::compose:
        out = compose2(go(r.a), go(r.b));
        break;
      case Recipe::Kind::invert:
        out = invert2(go(r.a));
        break;
    }
    memo[a] = out;
    return out;
  };
  return go(f);
}

/// Readable rendering in the surface syntax.
inline std::string render(Term const& t) {
  switch (t.kind) {
    case TermKind::var_obj:
      return "obj(" + t.arity->object_name(t.index) + ")";
    case TermKind::var_arr:
      return "arr(" + t.arity->arrow_name(t.index) + ")";
    case TermKind::sym:
    case TermKind::sym2:
      return t.name;
    case TermKind::power2:
      return "pow2(" + render(*t.inner) + ")";
    case TermKind::glue: {
      std::string s = "glue(" + render(*t.inner) + "; {";
      for (std::size_t k = 0; k < t.gamma->gens.size(); ++k) {
        s += (k ? ", " : "") + t.gamma->generator_name(k);
      }
      s += "}";
      for (std::size_t k = 0; k < t.family.size(); ++k) {
        s += (k ? ", " : "; ") + t.gamma->generator_name(k) + " -> "
             + render(*t.family[k]);
      }
      return s + ")";
    }
  }
  return "?";
}

inline std::string render(TermPtr const& t) { return render(*t); }

struct Judgement {
  enum class Kind { defined, equal };
  Kind kind = Kind::defined;
  TermPtr lhs;
  TermPtr rhs;
  std::string label;
};

/// An equational theory: definedness judgements and equations.
struct Theory2 {
  std::string name;
  LangPtr lang;
  std::vector<Judgement> judgements;

  void add_defined(TermPtr t, std::string label = {}) {
    judgements.push_back({Judgement::Kind::defined, std::move(t), nullptr,
                          std::move(label)});
  }

  void add_equal(TermPtr s, TermPtr t, std::string label = {}) {
    if (s->dim != t->dim) {
      throw Error(ErrorKind::dimension_mismatch,
                  "equation between terms of different dimension");
    }
    if (!(*s->arity == *t->arity)) {
      throw Error(ErrorKind::arity_mismatch,
                  "equation between terms of different arity");
    }
    judgements.push_back(
        {Judgement::Kind::equal, std::move(s), std::move(t), std::move(label)});
  }
};

}  // namespace enrich
