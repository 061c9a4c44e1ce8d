#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "enrich/catsem.hpp"
#include "enrich/concrete.hpp"
#include "enrich/dsl.hpp"
#include "enrich/error.hpp"
#include "enrich/fincat.hpp"
#include "enrich/freemod.hpp"
#include "enrich/functor.hpp"
#include "enrich/isbell.hpp"
#include "enrich/presentation.hpp"
#include "enrich/term.hpp"
#include "enrich/theories.hpp"

namespace enrich::dsl {

using OrdLangPtr = std::shared_ptr<OrdLanguage const>;

/// Everything a source file declares, lowered to engine objects. The
/// standard shapes empty, one, two, three, iso, square and the empty
/// language are predeclared.
struct Workspace {
  std::map<std::string, CatPtr> cats;
  std::map<std::string, FinFunctor> functors;
  std::map<std::string, SpacePtr> spaces;
  std::map<std::string, LangPtr> langs;
  std::map<std::string, OrdLangPtr> ord_langs;
  std::map<std::string, Theory2> theories;
  std::map<std::string, OrdTheory> ord_theories;
  std::map<std::string, CatStructure> structures;
  std::map<std::string, OrdStructure> ord_structures;
  std::map<std::string, ProbeSet> probes;
  Limits lim;

  Workspace() {
    cats["empty"] = std_shapes::empty();
    cats["one"] = std_shapes::one();
    cats["two"] = std_shapes::two();
    cats["three"] = std_shapes::three();
    cats["iso"] = std_shapes::iso();
    cats["square"] = std_shapes::two_by_two();
    langs["empty"] = empty_language();
  }

  /// Name under which `c` is declared, comparing by value.
  std::optional<std::string> name_of(FinCat const& c) const {
    for (auto const& [n, p] : cats) {
      if (*p == c) {
        return n;
      }
    }
    return std::nullopt;
  }
};

inline std::optional<Rational> parse_rational(std::string const& s) {
  try {
    auto slash = s.find('/');
    std::size_t used = 0;
    long long num = std::stoll(s.substr(0, slash), &used);
    if (used != s.substr(0, slash).size() || num < 0) {
      return std::nullopt;
    }
    long long den = 1;
    if (slash != std::string::npos) {
      auto d = s.substr(slash + 1);
      den = std::stoll(d, &used);
      if (used != d.size() || den <= 0) {
        return std::nullopt;
      }
    }
    return Rational(num, den);
  } catch (std::exception const&) {
    return std::nullopt;
  }
}

namespace detail {

struct LowerError {
  Diagnostic diag;
};

[[noreturn]] inline void lower_fail(Span at, std::string msg,
                                    std::string witness = {}) {
  throw LowerError{{Diagnostic::Severity::error, at, std::move(msg),
                    std::move(witness)}};
}

/// Runs `f`, turning library errors into a diagnostic at `at`. Budget
/// errors propagate.
template <class F>
auto at_span(Span at, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (Error const& e) {
    if (e.is_budget()) {
      throw;
    }
    lower_fail(at, e.what());
  }
}

inline std::vector<std::string> arg_names(Expr const& e) {
  std::vector<std::string> v;
  for (auto const& a : e.args) {
    v.push_back(a.kind == Expr::Kind::name ? a.head : print(a));
  }
  return v;
}

}  // namespace detail

/// Lowers term syntax over a category language. `ctx` is the arity that
/// variables refer to; it may be null where no variable occurs.
inline TermPtr lower_term(Workspace const& ws, Language2 const& lang,
                          Expr const& e, CatPtr ctx) {
  using detail::at_span;
  using detail::lower_fail;
  auto need_ctx = [&]() -> CatPtr const& {
    if (!ctx) {
      lower_fail(e.span, "'" + print(e) + "' needs an arity annotation [X]");
    }
    return ctx;
  };
  auto nargs = [&](std::size_t n) {
    if (e.args.size() != n) {
      lower_fail(e.span, e.head + " takes " + std::to_string(n)
                             + " argument" + (n == 1 ? "" : "s"));
    }
  };
  auto sub = [&](std::size_t i, CatPtr c) {
    return lower_term(ws, lang, e.args.at(i), std::move(c));
  };
  auto cat = [&](std::string const& n) {
    auto it = ws.cats.find(n);
    if (it == ws.cats.end()) {
      lower_fail(e.span, "unknown category '" + n + "'");
    }
    return it->second;
  };
  switch (e.kind) {
    case Expr::Kind::bang:
      return discreteness_term();
    case Expr::Kind::annot:
      return sub(0, cat(e.head));
    case Expr::Kind::name:
      if (lang.find_op(e.head)) {
        return sym(lang, e.head);
      }
      if (lang.find_op2(e.head)) {
        return sym2(lang, e.head);
      }
      lower_fail(e.span, "unknown symbol '" + e.head + "'");
    case Expr::Kind::glue: {
      auto y = cat(e.head);
      auto outer = sub(0, y);
      std::vector<Generator> gens;
      for (auto const& g : e.gens) {
        if (auto o = y->find_object(g)) {
          gens.push_back({true, *o});
        } else if (auto a = y->find_arrow(g)) {
          gens.push_back({false, *a});
        } else {
          lower_fail(e.span, "'" + g + "' is not an object or arrow of " + e.head);
        }
      }
      std::vector<TermPtr> family;
      for (auto const& g : e.gens) {
        std::size_t k = 0;
        while (k < e.keys.size() && e.keys[k] != g) {
          ++k;
        }
        if (k == e.keys.size()) {
          lower_fail(e.span, "no family member for generator '" + g + "'");
        }
        family.push_back(sub(k + 1, ctx));
      }
      if (e.keys.size() != e.gens.size()) {
        lower_fail(e.span, "family members do not match the generators");
      }
      return at_span(e.span, [&] {
        return glue(outer, make_gamma(y, std::move(gens)), std::move(family),
                    ctx);
      });
    }
    case Expr::Kind::call:
      break;
  }
  auto const& h = e.head;
  if (h == "obj" || h == "arr") {
    nargs(1);
    auto x = need_ctx();
    auto n = detail::arg_names(e)[0];
    return at_span(e.span, [&] {
      return h == "obj" ? var_obj(x, n) : var_arr(x, n);
    });
  }
  if (h == "pow2") {
    nargs(1);
    auto t = sub(0, nullptr);
    return at_span(e.span, [&] { return power2(t); });
  }
  if (h == "comp") {
    nargs(2);
    auto s = sub(0, ctx);
    auto t = sub(1, ctx);
    return at_span(e.span, [&] { return compose2(s, t); });
  }
  if (h == "inv" || h == "id" || h == "src" || h == "tgt") {
    nargs(1);
    auto s = sub(0, ctx);
    return at_span(e.span, [&] {
      if (h == "inv") {
        return invert2(s);
      }
      if (h == "id") {
        return identity2(s);
      }
      return endpoint(s, h == "src" ? 0 : 1);
    });
  }
  if (h == "pre") {
    nargs(2);
    auto const& fn = e.args[1];
    auto it = ws.functors.find(fn.head);
    if (fn.kind != Expr::Kind::name || it == ws.functors.end()) {
      lower_fail(fn.span, "unknown functor '" + print(fn) + "'");
    }
    auto s = sub(0, it->second.dom);
    return at_span(e.span, [&] { return precompose(s, it->second); });
  }
  TermPtr f;
  if (lang.find_op(h)) {
    f = sym(lang, h);
  } else if (lang.find_op2(h)) {
    f = sym2(lang, h);
  } else {
    lower_fail(e.span, "unknown symbol '" + h + "'");
  }
  auto gens = canonical_generators(*f->arity);
  if (gens.size() != e.args.size()) {
    lower_fail(e.span, h + " takes " + std::to_string(gens.size())
                           + " arguments");
  }
  std::vector<TermPtr> family;
  for (std::size_t i = 0; i < e.args.size(); ++i) {
    family.push_back(sub(i, ctx));
  }
  return at_span(e.span, [&] {
    return glue(f, make_gamma(f->arity, std::move(gens)), std::move(family),
                ctx);
  });
}

/// Lowers term syntax over a concrete base: `obj(x)` or a bare point name
/// is a variable, `f(t, ...)` applies a symbol to one term per point of its
/// arity.
inline OrdTermPtr lower_ord_term(Workspace const& ws, OrdLanguage const& lang,
                                 Expr const& e, SpacePtr ctx) {
  using detail::at_span;
  using detail::lower_fail;
  auto space = [&](std::string const& n) {
    auto it = ws.spaces.find(n);
    if (it == ws.spaces.end()) {
      lower_fail(e.span, "unknown space '" + n + "'");
    }
    return it->second;
  };
  auto var = [&](std::string const& n) {
    if (!ctx) {
      lower_fail(e.span, "'" + print(e) + "' needs an arity annotation [X]");
    }
    auto i = ctx->find(n);
    if (!i) {
      lower_fail(e.span, "'" + n + "' is not a point of the arity");
    }
    return ord_var(ctx, *i);
  };
  switch (e.kind) {
    case Expr::Kind::bang:
      lower_fail(e.span, "'!' is only available over categories");
    case Expr::Kind::annot:
      return lower_ord_term(ws, lang, e.args.at(0), space(e.head));
    case Expr::Kind::name:
      if (lang.find(e.head)) {
        return at_span(e.span, [&] { return ord_app(lang, e.head, ctx, {}); });
      }
      return var(e.head);
    case Expr::Kind::glue: {
      auto y = space(e.head);
      auto outer = lower_ord_term(ws, lang, e.args.at(0), y);
      if (e.gens.size() != y->size() || e.keys.size() != y->size()) {
        lower_fail(e.span, "a glue over a space lists every point once");
      }
      std::vector<OrdTermPtr> family;
      for (auto const& pt : y->names) {
        std::size_t k = 0;
        while (k < e.keys.size() && e.keys[k] != pt) {
          ++k;
        }
        if (k == e.keys.size()) {
          lower_fail(e.span, "no family member for point '" + pt + "'");
        }
        family.push_back(lower_ord_term(ws, lang, e.args[k + 1], ctx));
      }
      if (!ctx) {
        lower_fail(e.span, "'" + print(e) + "' needs an arity annotation [X]");
      }
      return at_span(e.span, [&] {
        return ord_glue(outer, ctx, std::move(family));
      });
    }
    case Expr::Kind::call:
      break;
  }
  if (e.head == "obj") {
    if (e.args.size() != 1) {
      lower_fail(e.span, "obj takes 1 argument");
    }
    return var(detail::arg_names(e)[0]);
  }
  if (!lang.find(e.head)) {
    lower_fail(e.span, "unknown symbol '" + e.head + "'");
  }
  if (!ctx) {
    lower_fail(e.span, "'" + print(e) + "' needs an arity annotation [X]");
  }
  std::vector<OrdTermPtr> args;
  for (auto const& a : e.args) {
    args.push_back(lower_ord_term(ws, lang, a, ctx));
  }
  return at_span(e.span, [&] { return ord_app(lang, e.head, ctx, std::move(args)); });
}

namespace detail {

class Lowerer {
 public:
  Lowerer(Workspace& ws, std::vector<Diagnostic>& diags)
      : ws_(ws), diags_(diags) {}

  void run(Ast const& ast) {
    for (auto const& d : ast.decls) {
      try {
        std::visit([&](auto const& x) { lower(x); }, d);
      } catch (LowerError const& e) {
        diags_.push_back(e.diag);
      }
    }
  }

 private:
  template <class M>
  void fresh(M const& m, Name const& n, char const* kind) {
    if (m.count(n.text)) {
      lower_fail(n.span, std::string(kind) + " '" + n.text
                             + "' is already declared");
    }
  }

  CatPtr cat(Name const& n) const {
    auto it = ws_.cats.find(n.text);
    if (it == ws_.cats.end()) {
      lower_fail(n.span, "unknown category '" + n.text + "'");
    }
    return it->second;
  }

  SpacePtr space(Name const& n) const {
    auto it = ws_.spaces.find(n.text);
    if (it == ws_.spaces.end()) {
      lower_fail(n.span, "unknown space '" + n.text + "'");
    }
    return it->second;
  }

  FinCat shape(Expr const& e) {
    auto arg_cat = [&](std::size_t i) {
      auto const& a = e.args.at(i);
      if (a.kind == Expr::Kind::name) {
        return *cat({a.head, a.span});
      }
      return shape(a);
    };
    auto arg_int = [&]() {
      if (e.args.size() != 1 || e.args[0].kind != Expr::Kind::name) {
        lower_fail(e.span, e.head + " takes one number");
      }
      auto r = parse_rational(e.args[0].head);
      if (!r || r->denominator() != 1) {
        lower_fail(e.args[0].span, "expected a number");
      }
      return static_cast<int>(r->numerator());
    };
    if (e.kind == Expr::Kind::name) {
      return *cat({e.head, e.span});
    }
    auto const& h = e.head;
    if (h == "discrete") {
      return shapes::discrete(arg_int());
    }
    if (h == "chain") {
      return shapes::chain(arg_int());
    }
    if ((h == "cone" || h == "cone2") && e.args.size() == 1) {
      auto d = arg_cat(0);
      return h == "cone" ? shapes::cone(d) : shapes::cone2(d);
    }
    if (h == "product" && e.args.size() == 2) {
      return product(arg_cat(0), arg_cat(1));
    }
    if (h == "coproduct") {
      std::vector<FinCat> parts;
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        parts.push_back(arg_cat(i));
      }
      return coproduct(parts);
    }
    lower_fail(e.span, "unknown shape '" + print(e) + "'");
  }

  void lower(CategoryDecl const& c) {
    fresh(ws_.cats, c.name, "category");
    FinCat result;
    if (c.builtin) {
      result = at_span(c.builtin->span, [&] { return shape(*c.builtin); });
    } else {
      CatPresentation p;
      for (auto const& o : c.objects) {
        p.objects.push_back(o.text);
      }
      for (auto const& a : c.arrows) {
        p.generators.push_back({a.name.text, a.source.text, a.target.text});
      }
      for (auto const& r : c.relations) {
        std::vector<std::string> l, q;
        for (auto const& n : r.lhs) {
          l.push_back(n.text);
        }
        for (auto const& n : r.rhs) {
          q.push_back(n.text);
        }
        p.relations.push_back({l, q});
      }
      result = at_span(c.name.span, [&] { return validate_category(p); });
    }
    ws_.cats[c.name.text] = make_cat(std::move(result));
  }

  void lower(FunctorDecl const& f) {
    fresh(ws_.functors, f.name, "functor");
    auto dom = cat(f.dom);
    auto cod = cat(f.cod);
    FinFunctor fn{dom, cod, std::vector<ObjId>(dom->num_objects(), -1),
                  std::vector<ArrId>(dom->num_arrows(), -1)};
    for (auto const& [a, b] : f.entries) {
      if (auto o = dom->find_object(a.text)) {
        auto t = cod->find_object(b.text);
        if (!t) {
          lower_fail(b.span, "unknown object '" + b.text + "' of " + f.cod.text);
        }
        fn.obj[*o] = *t;
      } else if (auto x = dom->find_arrow(a.text)) {
        auto t = cod->find_arrow(b.text);
        if (!t) {
          lower_fail(b.span, "unknown arrow '" + b.text + "' of " + f.cod.text);
        }
        fn.arr[*x] = *t;
      } else {
        lower_fail(a.span, "'" + a.text + "' is not in " + f.dom.text);
      }
    }
    for (ObjId o = 0; o < static_cast<ObjId>(dom->num_objects()); ++o) {
      if (fn.obj[o] < 0) {
        if (cod->num_objects() != 1) {
          lower_fail(f.name.span, "no image for object " + dom->object_name(o));
        }
        fn.obj[o] = 0;
      }
    }
    for (ArrId x = 0; x < static_cast<ArrId>(dom->num_arrows()); ++x) {
      if (fn.arr[x] >= 0) {
        continue;
      }
      auto h = cod->hom(fn.obj[dom->source(x)], fn.obj[dom->target(x)]);
      if (dom->is_identity(x)) {
        fn.arr[x] = cod->identity(fn.obj[dom->source(x)]);
      } else if (h.size() == 1) {
        fn.arr[x] = h[0];
      } else {
        lower_fail(f.name.span, "no image for arrow " + dom->arrow_name(x));
      }
    }
    auto v = fn.violation();
    if (!v.empty()) {
      lower_fail(f.name.span, "not a functor: " + v);
    }
    ws_.functors[f.name.text] = std::move(fn);
  }

  void lower(SpaceDecl const& s) {
    fresh(ws_.spaces, s.name, "space");
    auto n = static_cast<int>(s.elements.size());
    std::map<std::string, int> idx;
    for (int i = 0; i < n; ++i) {
      if (!idx.emplace(s.elements[i].text, i).second) {
        lower_fail(s.elements[i].span, "duplicate point '" + s.elements[i].text + "'");
      }
    }
    auto point = [&](Name const& p) {
      auto it = idx.find(p.text);
      if (it == idx.end()) {
        lower_fail(p.span, "unknown point '" + p.text + "'");
      }
      return it->second;
    };
    Space sp;
    if (s.kind == SpaceDecl::Kind::set) {
      sp = make_set(n);
    } else if (s.kind == SpaceDecl::Kind::poset) {
      std::vector<std::pair<int, int>> le;
      for (auto const& [a, b] : s.order) {
        le.push_back({point(a), point(b)});
      }
      sp = at_span(s.name.span, [&] { return make_poset(n, le); });
    } else {
      std::vector<std::vector<Dist>> d(n, std::vector<Dist>(n, Dist::infinity()));
      for (int i = 0; i < n; ++i) {
        d[i][i] = Dist{};
      }
      for (auto const& x : s.distances) {
        Dist v = Dist::infinity();
        if (x.value != "inf") {
          auto r = parse_rational(x.value);
          if (!r) {
            lower_fail(x.a.span, "bad distance '" + x.value + "'");
          }
          v = Dist{false, *r};
        }
        d[point(x.a)][point(x.b)] = v;
        d[point(x.b)][point(x.a)] = v;
      }
      sp = at_span(s.name.span, [&] { return make_metric(std::move(d)); });
    }
    for (int i = 0; i < n; ++i) {
      sp.names[i] = s.elements[i].text;
    }
    ws_.spaces[s.name.text] = std::make_shared<Space const>(std::move(sp));
  }

  void lower(LanguageDecl const& l) {
    fresh(ws_.langs, l.name, "language");
    fresh(ws_.ord_langs, l.name, "language");
    std::string base = l.base ? l.base->text : "cat";
    if (base == "cat") {
      auto lang = std::make_shared<Language2>(l.name.text);
      for (auto const& o : l.ops) {
        auto a = cat(o.arity);
        at_span(o.name.span, [&] { lang->add_op(o.name.text, a); });
      }
      for (auto const& o : l.ops2) {
        auto a = cat(o.arity);
        auto dom = lower_term(ws_, *lang, o.dom, a);
        auto cod = lower_term(ws_, *lang, o.cod, a);
        at_span(o.name.span, [&] { lang->add_op2(o.name.text, dom, cod); });
      }
      ws_.langs[l.name.text] = lang;
      return;
    }
    Base b;
    if (base == "set") {
      b = Base::set;
    } else if (base == "pos") {
      b = Base::pos;
    } else if (base == "met") {
      b = Base::met;
    } else {
      lower_fail(l.base->span, "unknown base '" + base + "' (cat, set, pos, met)");
    }
    if (!l.ops2.empty()) {
      lower_fail(l.ops2[0].name.span, "2-function symbols need base cat");
    }
    auto lang = std::make_shared<OrdLanguage>();
    lang->name = l.name.text;
    lang->base = b;
    for (auto const& o : l.ops) {
      auto a = space(o.arity);
      if (a->base != b) {
        lower_fail(o.arity.span, "arity " + o.arity.text + " is not over "
                                     + to_string(b));
      }
      if (lang->find(o.name.text)) {
        lower_fail(o.name.span, "symbol " + o.name.text + " declared twice");
      }
      lang->ops.push_back({o.name.text, a});
    }
    ws_.ord_langs[l.name.text] = lang;
  }

  static std::string label(JudgementDecl const& j) {
    static char const* const kw[] = {"defined", "eq", "le", "near"};
    std::string s = std::string(kw[static_cast<int>(j.kind)]) + " ";
    if (j.arity) {
      s += "[" + j.arity->text + "] ";
    }
    s += print(j.lhs);
    if (j.rhs) {
      s += (j.kind == JudgementDecl::Kind::le ? " <= " : " = ") + print(*j.rhs);
    }
    if (j.kind == JudgementDecl::Kind::near) {
      s += " within " + j.eps;
    }
    return s;
  }

  void lower(TheoryDecl const& t) {
    fresh(ws_.theories, t.name, "theory");
    fresh(ws_.ord_theories, t.name, "theory");
    std::string ln = t.lang ? t.lang->text : "empty";
    Span ls = t.lang ? t.lang->span : t.name.span;
    if (auto it = ws_.langs.find(ln); it != ws_.langs.end()) {
      Theory2 th{t.name.text, it->second, {}};
      for (auto const& j : t.judgements) {
        CatPtr ctx = j.arity ? cat(*j.arity) : nullptr;
        auto lhs = lower_term(ws_, *it->second, j.lhs, ctx);
        if (j.kind == JudgementDecl::Kind::defined) {
          th.add_defined(lhs, label(j));
        } else if (j.kind == JudgementDecl::Kind::eq) {
          auto rhs = lower_term(ws_, *it->second, *j.rhs, ctx);
          at_span(j.span, [&] { th.add_equal(lhs, rhs, label(j)); });
        } else {
          lower_fail(j.span, "'le' and 'near' need a Pos or Met language");
        }
      }
      ws_.theories[t.name.text] = std::move(th);
      return;
    }
    auto it = ws_.ord_langs.find(ln);
    if (it == ws_.ord_langs.end()) {
      lower_fail(ls, "unknown language '" + ln + "'");
    }
    auto const& lang = *it->second;
    OrdTheory th{t.name.text, it->second, {}};
    for (auto const& j : t.judgements) {
      SpacePtr ctx = j.arity ? space(*j.arity) : nullptr;
      OrdJudgement oj;
      oj.label = label(j);
      oj.lhs = lower_ord_term(ws_, lang, j.lhs, ctx);
      if (j.rhs) {
        oj.rhs = lower_ord_term(ws_, lang, *j.rhs, ctx);
        if (oj.rhs->arity->names != oj.lhs->arity->names) {
          lower_fail(j.span, "the two sides have different arities");
        }
      }
      switch (j.kind) {
        case JudgementDecl::Kind::defined:
          oj.kind = OrdJudgement::Kind::defined;
          break;
        case JudgementDecl::Kind::eq:
          oj.kind = OrdJudgement::Kind::equal;
          break;
        case JudgementDecl::Kind::le:
          if (lang.base != Base::pos) {
            lower_fail(j.span, "'le' needs a Pos language");
          }
          oj.kind = OrdJudgement::Kind::less;
          break;
        case JudgementDecl::Kind::near: {
          if (lang.base != Base::met) {
            lower_fail(j.span, "'near' needs a Met language");
          }
          auto r = parse_rational(j.eps);
          if (!r) {
            lower_fail(j.span, "bad tolerance '" + j.eps + "'");
          }
          oj.kind = OrdJudgement::Kind::near;
          oj.eps = *r;
          break;
        }
      }
      th.judgements.push_back(std::move(oj));
    }
    ws_.ord_theories[t.name.text] = std::move(th);
  }

  // Resolves a point key to an object of A^Y. Arrow images may be left out
  // when the carrier forces them.
  static int point(FunctorCat const& p, FinCat const& y, FinCat const& a,
                   PointKey const& k, Span at) {
    if (k.objects.size() != y.num_objects()) {
      lower_fail(at, "expected " + std::to_string(y.num_objects())
                         + " objects in a point of the power");
    }
    std::vector<ObjId> om;
    for (auto const& n : k.objects) {
      auto o = a.find_object(n.text);
      if (!o) {
        lower_fail(n.span, "unknown object '" + n.text + "' of the carrier");
      }
      om.push_back(*o);
    }
    std::vector<ArrId> am(y.num_arrows(), -1);
    std::size_t next = 0;
    for (ArrId x = 0; x < static_cast<ArrId>(y.num_arrows()); ++x) {
      auto s = om[y.source(x)];
      auto t = om[y.target(x)];
      if (y.is_identity(x)) {
        am[x] = a.identity(s);
        continue;
      }
      if (!k.arrows.empty()) {
        if (next >= k.arrows.size()) {
          lower_fail(at, "too few arrow images in a point of the power");
        }
        auto const& n = k.arrows[next++];
        auto f = a.find_arrow(n.text);
        if (!f) {
          lower_fail(n.span, "unknown arrow '" + n.text + "' of the carrier");
        }
        am[x] = *f;
        continue;
      }
      auto h = a.hom(s, t);
      if (h.size() != 1) {
        lower_fail(at, "give the arrow images of this point explicitly");
      }
      am[x] = h[0];
    }
    if (next != k.arrows.size()) {
      lower_fail(at, "too many arrow images in a point of the power");
    }
    int f = p.find_object(om, am);
    if (f < 0) {
      lower_fail(at, "not a functor into the carrier");
    }
    return f;
  }

  static int arrow_point(FunctorCat const& p, FinCat const& y, FinCat const& a,
                         TableEntry const& e, Span at) {
    std::vector<ArrId> c;
    for (auto const& n : e.key.objects) {
      auto f = a.find_arrow(n.text);
      if (!f) {
        lower_fail(n.span, "unknown arrow '" + n.text + "' of the carrier");
      }
      c.push_back(*f);
    }
    if (c.size() != y.num_objects()) {
      lower_fail(at, "expected one component per object of the arity");
    }
    if (e.source) {
      int t = p.find_arrow(point(p, y, a, *e.source, at),
                           point(p, y, a, *e.target, at), c);
      if (t < 0) {
        lower_fail(at, "not a natural transformation");
      }
      return t;
    }
    int found = -1;
    for (int t = 0; t < static_cast<int>(p.num_arrows()); ++t) {
      auto ct = p.components(t);
      if (std::equal(ct.begin(), ct.end(), c.begin(), c.end())) {
        if (found >= 0) {
          lower_fail(at, "components are ambiguous; give the endpoints");
        }
        found = t;
      }
    }
    if (found < 0) {
      lower_fail(at, "not a natural transformation");
    }
    return found;
  }

  void cat_structure(StructureDecl const& d, LangPtr const& lang) {
    auto carrier = cat(d.carrier);
    auto const& a = *carrier;
    CatStructure s{d.name.text, lang, carrier, {}, {}, {}};
    std::map<std::string, SymbolDef const*> defs;
    for (auto const& def : d.defs) {
      bool one = def.kind == SymbolDef::Kind::functor
                     ? lang->find_op(def.symbol.text) != nullptr
                     : lang->find_op2(def.symbol.text) != nullptr;
      if (!one) {
        lower_fail(def.symbol.span, "'" + def.symbol.text + "' is not a "
                                        + (def.kind == SymbolDef::Kind::functor
                                               ? "function"
                                               : "2-function")
                                        + " symbol of " + lang->name());
      }
      if (!defs.emplace(def.symbol.text, &def).second) {
        lower_fail(def.symbol.span, "'" + def.symbol.text + "' defined twice");
      }
    }
    auto table_of = [&](std::string const& n) -> std::vector<TableEntry> const& {
      static std::vector<TableEntry> const none;
      auto it = defs.find(n);
      return it == defs.end() ? none : it->second->entries;
    };
    auto where = [&](std::string const& n) {
      auto it = defs.find(n);
      return it == defs.end() ? d.name.span : it->second->symbol.span;
    };
    for (auto const& op : lang->ops()) {
      auto p = at_span(where(op.name), [&] { return power(op.arity, carrier, ws_.lim); });
      auto const& y = *op.arity;
      std::vector<ObjId> om(p->num_objects(), -1);
      std::vector<ArrId> am(p->num_arrows(), -1);
      for (auto const& e : table_of(op.name)) {
        Span at = e.value.span;
        if (!e.is_arrow) {
          auto v = a.find_object(e.value.text);
          if (!v) {
            lower_fail(at, "unknown object '" + e.value.text + "' of the carrier");
          }
          om[point(*p, y, a, e.key, at)] = *v;
        } else {
          auto v = a.find_arrow(e.value.text);
          if (!v) {
            lower_fail(at, "unknown arrow '" + e.value.text + "' of the carrier");
          }
          am[arrow_point(*p, y, a, e, at)] = *v;
        }
      }
      for (int h = 0; h < static_cast<int>(om.size()); ++h) {
        if (om[h] < 0) {
          if (a.num_objects() != 1) {
            lower_fail(where(op.name), "no value of " + op.name + " at "
                                           + p->object_label(h));
          }
          om[h] = 0;
        }
      }
      for (int t = 0; t < static_cast<int>(am.size()); ++t) {
        if (am[t] >= 0) {
          continue;
        }
        auto hs = a.hom(om[p->source(t)], om[p->target(t)]);
        if (p->source(t) == p->target(t) && p->identity(p->source(t)) == t) {
          am[t] = a.identity(om[p->source(t)]);
        } else if (hs.size() == 1) {
          am[t] = hs[0];
        } else {
          lower_fail(where(op.name), "no value of " + op.name + " at arrow "
                                         + p->arrow_label(t));
        }
      }
      s.op_obj[op.name] = std::move(om);
      s.op_arr[op.name] = std::move(am);
    }
    Evaluator ev(s, ws_.lim);
    for (auto const& op : lang->ops2()) {
      auto p = at_span(where(op.name), [&] { return power(op.arity, carrier, ws_.lim); });
      auto const& y = *op.arity;
      auto const& dom = ev.eval(op.dom);
      auto const& cod = ev.eval(op.cod);
      if (!dom.ok() || !cod.ok()) {
        lower_fail(where(op.name), "the boundary of " + op.name
                                       + " is not interpretable here");
      }
      std::vector<ArrId> c(p->num_objects(), -1);
      for (auto const& e : table_of(op.name)) {
        Span at = e.value.span;
        if (e.is_arrow) {
          lower_fail(at, "a natural transformation has one component per point");
        }
        auto v = a.find_arrow(e.value.text);
        if (!v) {
          lower_fail(at, "unknown arrow '" + e.value.text + "' of the carrier");
        }
        c[point(*p, y, a, e.key, at)] = *v;
      }
      for (int h = 0; h < static_cast<int>(c.size()); ++h) {
        if (c[h] >= 0) {
          continue;
        }
        auto hs = a.hom(dom.value->obj[h], cod.value->obj[h]);
        if (hs.size() != 1) {
          lower_fail(where(op.name), "no component of " + op.name + " at "
                                         + p->object_label(h));
        }
        c[h] = hs[0];
      }
      s.op2_comp[op.name] = std::move(c);
    }
    auto v = at_span(d.name.span, [&] { return structure_violation(s, ws_.lim); });
    if (!v.empty()) {
      lower_fail(d.name.span, "not a structure: " + v);
    }
    ws_.structures[d.name.text] = std::move(s);
  }

  void ord_structure(StructureDecl const& d, OrdLangPtr const& lang) {
    auto carrier = space(d.carrier);
    if (carrier->base != lang->base) {
      lower_fail(d.carrier.span, "carrier " + d.carrier.text + " is not over "
                                     + to_string(lang->base));
    }
    OrdStructure s{d.name.text, lang, carrier, {}};
    for (auto const& def : d.defs) {
      auto const* op = lang->find(def.symbol.text);
      if (!op || def.kind != SymbolDef::Kind::functor) {
        lower_fail(def.symbol.span, "'" + def.symbol.text
                                        + "' is not a symbol of " + lang->name);
      }
      if (s.table.count(op->name)) {
        lower_fail(def.symbol.span, "'" + def.symbol.text + "' defined twice");
      }
      auto h = hom_space(*op->arity, *carrier);
      std::vector<int> t(h.maps.size(), -1);
      for (auto const& e : def.entries) {
        if (e.is_arrow || !e.key.arrows.empty()
            || e.key.objects.size() != op->arity->size()) {
          lower_fail(e.value.span, "expected one point per point of the arity");
        }
        std::vector<int> m;
        for (auto const& n : e.key.objects) {
          auto i = carrier->find(n.text);
          if (!i) {
            lower_fail(n.span, "unknown point '" + n.text + "'");
          }
          m.push_back(*i);
        }
        int k = h.find(m);
        if (k < 0) {
          lower_fail(e.value.span, "not a morphism from the arity");
        }
        auto v = carrier->find(e.value.text);
        if (!v) {
          lower_fail(e.value.span, "unknown point '" + e.value.text + "'");
        }
        t[k] = *v;
      }
      s.table[op->name] = std::move(t);
    }
    for (auto const& op : lang->ops) {
      auto& t = s.table[op.name];
      if (t.empty()) {
        t.assign(hom_space(*op.arity, *carrier).maps.size(), -1);
      }
      for (auto& v : t) {
        if (v < 0) {
          if (carrier->size() != 1) {
            lower_fail(d.name.span, "the table of " + op.name + " is incomplete");
          }
          v = 0;
        }
      }
    }
    auto v = ord_structure_violation(s);
    if (!v.empty()) {
      lower_fail(d.name.span, "not a structure: " + v);
    }
    ws_.ord_structures[d.name.text] = std::move(s);
  }

  void lower(StructureDecl const& d) {
    fresh(ws_.structures, d.name, "structure");
    fresh(ws_.ord_structures, d.name, "structure");
    std::string ln = d.lang ? d.lang->text : "empty";
    if (auto it = ws_.langs.find(ln); it != ws_.langs.end()) {
      cat_structure(d, it->second);
    } else if (auto jt = ws_.ord_langs.find(ln); jt != ws_.ord_langs.end()) {
      ord_structure(d, jt->second);
    } else {
      lower_fail(d.lang->span, "unknown language '" + ln + "'");
    }
  }

  void lower(ProbesDecl const& p) {
    fresh(ws_.probes, p.name, "probe set");
    auto it = ws_.langs.find(p.lang.text);
    if (it == ws_.langs.end()) {
      lower_fail(p.lang.span, "unknown category language '" + p.lang.text + "'");
    }
    ProbeSet ps{it->second, {}};
    if (p.default_size) {
      ps = at_span(p.name.span, [&] {
        return default_probes(it->second, *p.default_size, 5000, ws_.lim);
      });
    }
    for (auto const& m : p.members) {
      auto s = ws_.structures.find(m.text);
      if (s == ws_.structures.end()) {
        lower_fail(m.span, "unknown structure '" + m.text + "'");
      }
      if (s->second.lang != it->second) {
        lower_fail(m.span, m.text + " is not over " + p.lang.text);
      }
      ps.structures.push_back(s->second);
    }
    ws_.probes[p.name.text] = std::move(ps);
  }

  Workspace& ws_;
  std::vector<Diagnostic>& diags_;
};

}  // namespace detail

struct LoadResult {
  Ast ast;
  Workspace ws;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
};

/// Parses and lowers a source file. A declaration that fails to lower
/// contributes one diagnostic and is skipped. Budget errors are thrown.
inline LoadResult load(std::string const& src, Limits lim = {}) {
  LoadResult r;
  auto pr = parse(src);
  r.ast = std::move(pr.ast);
  r.diagnostics = std::move(pr.diagnostics);
  r.ws.lim = lim;
  if (!r.diagnostics.empty()) {
    return r;
  }
  detail::Lowerer(r.ws, r.diagnostics).run(r.ast);
  return r;
}

}  // namespace enrich::dsl
