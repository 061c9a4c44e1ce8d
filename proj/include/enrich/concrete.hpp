#pragma once

#include <boost/rational.hpp>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "enrich/catsem.hpp"
#include "enrich/error.hpp"

namespace enrich {

using Rational = boost::rational<long long>;

/// A nonnegative rational distance or ∞.
struct Dist {
  bool inf = false;
  Rational v{0};

  static Dist infinity() { return {true, Rational{0}}; }

  friend bool operator==(Dist const& a, Dist const& b) {
    return a.inf == b.inf && (a.inf || a.v == b.v);
  }
  friend bool operator<(Dist const& a, Dist const& b) {
    if (a.inf) {
      return false;
    }
    return b.inf || a.v < b.v;
  }
  friend bool operator<=(Dist const& a, Dist const& b) { return !(b < a); }
  friend Dist operator+(Dist const& a, Dist const& b) {
    if (a.inf || b.inf) {
      return infinity();
    }
    return {false, a.v + b.v};
  }
};

inline std::string to_string(Dist const& d) {
  if (d.inf) {
    return "inf";
  }
  if (d.v.denominator() == 1) {
    return std::to_string(d.v.numerator());
  }
  return std::to_string(d.v.numerator()) + "/"
         + std::to_string(d.v.denominator());
}

enum class Base { set, pos, met };

inline std::string to_string(Base b) {
  switch (b) {
    case Base::set: return "Set";
    case Base::pos: return "Pos";
    case Base::met: return "Met";
  }
  return "?";
}

/// A finite object of one of the concrete bases: a set, a poset (order
/// relation `le`), or a metric space (distance table `d`).
struct Space {
  Base base = Base::set;
  std::vector<std::string> names;
  std::vector<std::vector<bool>> le;
  std::vector<std::vector<Dist>> d;

  std::size_t size() const { return names.size(); }

  bool leq(int x, int y) const {
    return base == Base::pos ? static_cast<bool>(le[x][y]) : x == y;
  }

  Dist dist(int x, int y) const {
    if (base == Base::met) {
      return d[x][y];
    }
    return x == y ? Dist{} : Dist::infinity();
  }

  std::optional<int> find(std::string const& n) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == n) {
        return static_cast<int>(i);
      }
    }
    return std::nullopt;
  }
};

using SpacePtr = std::shared_ptr<Space const>;

inline std::vector<std::string> default_names(int n) {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) {
    v.push_back(std::to_string(i));
  }
  return v;
}

/// Empty when the poset laws hold.
inline std::string poset_violation(Space const& p) {
  auto n = static_cast<int>(p.size());
  for (int x = 0; x < n; ++x) {
    if (!p.le[x][x]) {
      return "not reflexive at " + p.names[x];
    }
    for (int y = 0; y < n; ++y) {
      if (x != y && p.le[x][y] && p.le[y][x]) {
        return "not antisymmetric at " + p.names[x] + ", " + p.names[y];
      }
      for (int z = 0; z < n; ++z) {
        if (p.le[x][y] && p.le[y][z] && !p.le[x][z]) {
          return "not transitive at " + p.names[x] + ", " + p.names[y] + ", "
                 + p.names[z];
        }
      }
    }
  }
  return {};
}

/// Empty when the metric laws hold (distinct points at positive distance).
inline std::string metric_violation(Space const& m) {
  auto n = static_cast<int>(m.size());
  for (int x = 0; x < n; ++x) {
    if (!(m.d[x][x] == Dist{})) {
      return "d(x,x) != 0 at " + m.names[x];
    }
    for (int y = 0; y < n; ++y) {
      if (m.d[x][y].v < Rational(0)) {
        return "negative distance";
      }
      if (x != y && m.d[x][y] == Dist{}) {
        return "distinct points at distance 0: " + m.names[x] + ", "
               + m.names[y];
      }
      if (!(m.d[x][y] == m.d[y][x])) {
        return "not symmetric at " + m.names[x] + ", " + m.names[y];
      }
      for (int z = 0; z < n; ++z) {
        if (!(m.d[x][z] <= m.d[x][y] + m.d[y][z])) {
          return "triangle inequality fails at " + m.names[x] + ", "
                 + m.names[y] + ", " + m.names[z];
        }
      }
    }
  }
  return {};
}

inline Space make_set(int n) {
  return {Base::set, default_names(n), {}, {}};
}

inline Space make_poset(int n, std::vector<std::pair<int, int>> const& leq) {
  Space p{Base::pos, default_names(n), {}, {}};
  p.le.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    p.le[i][i] = true;
  }
  for (auto [a, b] : leq) {
    p.le[a][b] = true;
  }
  // transitive closure
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (p.le[i][k] && p.le[k][j]) {
          p.le[i][j] = true;
        }
      }
    }
  }
  auto v = poset_violation(p);
  if (!v.empty()) {
    throw Error(ErrorKind::invalid_argument, v);
  }
  return p;
}

inline Space make_metric(std::vector<std::vector<Dist>> d) {
  Space m{Base::met, default_names(static_cast<int>(d.size())), {}, std::move(d)};
  auto v = metric_violation(m);
  if (!v.empty()) {
    throw Error(ErrorKind::invalid_argument, v);
  }
  return m;
}

/// The chain 0 <= 1 <= ... <= n-1.
inline Space chain_poset(int n) {
  std::vector<std::pair<int, int>> r;
  for (int i = 0; i + 1 < n; ++i) {
    r.push_back({i, i + 1});
  }
  return make_poset(n, r);
}

/// Two points at distance ε.
inline Space two_points(Rational eps) {
  return make_metric({{Dist{}, Dist{false, eps}}, {Dist{false, eps}, Dist{}}});
}

/// Whether a map x -> a (given by point indices) is a morphism of the base:
/// any map for Set, monotone for Pos, nonexpansive for Met.
inline bool admissible(Space const& x, Space const& a,
                       std::vector<int> const& f) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      switch (a.base) {
        case Base::set:
          break;
        case Base::pos:
          if (x.leq(i, j) && !a.leq(f[i], f[j])) {
            return false;
          }
          break;
        case Base::met:
          if (!(a.dist(f[i], f[j]) <= x.dist(i, j))) {
            return false;
          }
          break;
      }
    }
  }
  return true;
}

/// The internal hom A^X: all admissible maps X -> A in lexicographic order,
/// with the pointwise order or the sup metric.
struct HomSpace {
  Space space;
  std::vector<std::vector<int>> maps;
  std::map<std::vector<int>, int> index;

  int find(std::vector<int> const& f) const {
    auto it = index.find(f);
    return it == index.end() ? -1 : it->second;
  }
};

inline HomSpace hom_space(Space const& x, Space const& a,
                          std::size_t max_points = 200000) {
  HomSpace h;
  h.space.base = a.base;
  auto n = x.size();
  std::vector<int> f(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      if (admissible(x, a, f)) {
        if (h.maps.size() >= max_points) {
          throw Error(ErrorKind::size_bound_exceeded,
                      "power has more than " + std::to_string(max_points)
                          + " points");
        }
        h.index[f] = static_cast<int>(h.maps.size());
        h.maps.push_back(f);
      }
      return;
    }
    for (std::size_t v = 0; v < a.size(); ++v) {
      f[i] = static_cast<int>(v);
      rec(i + 1);
    }
  };
  rec(0);
  auto m = h.maps.size();
  for (std::size_t i = 0; i < m; ++i) {
    std::string nm = "(";
    for (std::size_t k = 0; k < n; ++k) {
      nm += (k ? "," : "") + a.names[h.maps[i][k]];
    }
    h.space.names.push_back(nm + ")");
  }
  if (a.base == Base::pos) {
    h.space.le.assign(m, std::vector<bool>(m, true));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          if (!a.leq(h.maps[i][k], h.maps[j][k])) {
            h.space.le[i][j] = false;
            break;
          }
        }
      }
    }
  }
  if (a.base == Base::met) {
    h.space.d.assign(m, std::vector<Dist>(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        Dist best;
        for (std::size_t k = 0; k < n; ++k) {
          Dist dk = a.dist(h.maps[i][k], h.maps[j][k]);
          if (best < dk) {
            best = dk;
          }
        }
        h.space.d[i][j] = best;
      }
    }
  }
  return h;
}

struct OrdOp {
  std::string name;
  SpacePtr arity;
};

/// A language over a concrete base: symbols with finite input arities.
struct OrdLanguage {
  std::string name;
  Base base = Base::set;
  std::vector<OrdOp> ops;

  OrdOp const* find(std::string const& n) const {
    for (auto const& o : ops) {
      if (o.name == n) {
        return &o;
      }
    }
    return nullptr;
  }
};

enum class OrdKind { var, app, glue };

struct OrdTerm;
using OrdTermPtr = std::shared_ptr<OrdTerm const>;

/// A term of arity X over a concrete base. `app` applies a symbol to a
/// family indexed by the points of its arity; `glue` substitutes a family
/// indexed by the points of Y into an outer Y-ary term.
struct OrdTerm {
  OrdKind kind = OrdKind::var;
  SpacePtr arity;
  int var = -1;
  std::string op;
  OrdTermPtr outer;
  SpacePtr target;
  std::vector<OrdTermPtr> family;
};

inline OrdTermPtr ord_var(SpacePtr x, int i) {
  if (i < 0 || i >= static_cast<int>(x->size())) {
    throw Error(ErrorKind::unknown_object, std::to_string(i));
  }
  return std::make_shared<OrdTerm const>(
      OrdTerm{OrdKind::var, std::move(x), i, {}, nullptr, nullptr, {}});
}

inline void check_family(SpacePtr const& x, std::vector<OrdTermPtr> const& f,
                         std::size_t want) {
  if (f.size() != want) {
    throw Error(ErrorKind::family_index_mismatch,
                "expected " + std::to_string(want) + " arguments");
  }
  for (auto const& t : f) {
    if (t->arity != x && !(t->arity->names == x->names
                           && t->arity->le == x->le && t->arity->d == x->d)) {
      throw Error(ErrorKind::arity_mismatch, "arguments of different arities");
    }
  }
}

inline OrdTermPtr ord_app(OrdLanguage const& l, std::string const& op,
                          SpacePtr x, std::vector<OrdTermPtr> args) {
  auto const* o = l.find(op);
  if (!o) {
    throw Error(ErrorKind::unknown_symbol, op);
  }
  check_family(x, args, o->arity->size());
  return std::make_shared<OrdTerm const>(OrdTerm{
      OrdKind::app, std::move(x), -1, op, nullptr, nullptr, std::move(args)});
}

inline OrdTermPtr ord_glue(OrdTermPtr outer, SpacePtr x,
                           std::vector<OrdTermPtr> family) {
  check_family(x, family, outer->arity->size());
  auto y = outer->arity;
  return std::make_shared<OrdTerm const>(OrdTerm{OrdKind::glue, std::move(x),
                                                 -1, {}, std::move(outer),
                                                 std::move(y),
                                                 std::move(family)});
}

inline std::string render(OrdTerm const& t) {
  switch (t.kind) {
    case OrdKind::var:
      return t.arity->names[t.var];
    case OrdKind::app:
    case OrdKind::glue: {
      std::string s = t.kind == OrdKind::app ? t.op : "[" + render(*t.outer) + "]";
      s += "(";
      for (std::size_t i = 0; i < t.family.size(); ++i) {
        s += (i ? ", " : "") + render(*t.family[i]);
      }
      return s + ")";
    }
  }
  return "?";
}

/// A structure: a carrier and, for every symbol f : Y, a table over the
/// points of A^Y (in hom_space order).
struct OrdStructure {
  std::string name;
  std::shared_ptr<OrdLanguage const> lang;
  SpacePtr carrier;
  std::map<std::string, std::vector<int>> table;
};

/// Checks that every symbol interpretation is a morphism A^Y -> A. Empty
/// when valid, else the symbol and a witness pair.
inline std::string ord_structure_violation(OrdStructure const& s) {
  auto const& a = *s.carrier;
  for (auto const& op : s.lang->ops) {
    auto h = hom_space(*op.arity, a);
    auto it = s.table.find(op.name);
    if (it == s.table.end() || it->second.size() != h.maps.size()) {
      return "no complete interpretation for " + op.name;
    }
    auto const& f = it->second;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] < 0 || f[i] >= static_cast<int>(a.size())) {
        return op.name + " leaves the carrier";
      }
    }
    if (!admissible(h.space, a, f)) {
      for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = 0; j < f.size(); ++j) {
          bool bad = a.base == Base::pos
                         ? h.space.leq(i, j) && !a.leq(f[i], f[j])
                         : !(a.dist(f[i], f[j]) <= h.space.dist(i, j));
          if (bad) {
            return op.name + " at " + h.space.names[i] + ", "
                   + h.space.names[j];
          }
        }
      }
    }
  }
  return {};
}

struct OrdResult {
  std::optional<std::vector<int>> value;  // a point of A per point of A^X
  std::string witness;
};

/// Interprets an X-ary term as a function A^X -> A, or reports the first
/// valuation at which a substituted family leaves A^Y.
class OrdEvaluator {
 public:
  explicit OrdEvaluator(OrdStructure const& s) : s_(s) {}

  HomSpace const& power_of(Space const& x) {
    std::string key = space_key(x);
    auto it = powers_.find(key);
    if (it == powers_.end()) {
      it = powers_.emplace(key, hom_space(x, *s_.carrier)).first;
    }
    return it->second;
  }

  OrdResult eval(OrdTerm const& t) {
    auto const& px = power_of(*t.arity);
    auto const& a = *s_.carrier;
    auto np = px.maps.size();
    if (t.kind == OrdKind::var) {
      std::vector<int> v(np);
      for (std::size_t i = 0; i < np; ++i) {
        v[i] = px.maps[i][t.var];
      }
      return {v, {}};
    }
    std::vector<std::vector<int>> args;
    for (auto const& m : t.family) {
      auto r = eval(*m);
      if (!r.value) {
        return r;
      }
      args.push_back(std::move(*r.value));
    }
    Space const& y = t.kind == OrdKind::app ? *s_.lang->find(t.op)->arity
                                            : *t.target;
    auto const& py = power_of(y);
    std::vector<int> outer;
    if (t.kind == OrdKind::app) {
      outer = s_.table.at(t.op);
    } else {
      auto r = eval(*t.outer);
      if (!r.value) {
        return r;
      }
      outer = std::move(*r.value);
    }
    std::vector<int> v(np);
    std::vector<int> tuple(y.size());
    std::vector<int> at(np);
    for (std::size_t i = 0; i < np; ++i) {
      for (std::size_t k = 0; k < y.size(); ++k) {
        tuple[k] = args[k][i];
      }
      int q = py.find(tuple);
      if (q < 0) {
        std::string w = "valuation " + px.space.names[i] + " gives "
                        + render_tuple(tuple) + ", which is not in A^Y";
        return {std::nullopt, w};
      }
      at[i] = q;
      v[i] = outer[q];
    }
    // the substituted family must be a morphism A^X -> A^Y
    for (std::size_t i = 0; i < np; ++i) {
      for (std::size_t j = 0; j < np; ++j) {
        bool bad = a.base == Base::pos
                       ? px.space.leq(i, j) && !py.space.leq(at[i], at[j])
                       : a.base == Base::met
                             && !(py.space.dist(at[i], at[j])
                                  <= px.space.dist(i, j));
        if (bad) {
          return {std::nullopt, "valuations " + px.space.names[i] + ", "
                                    + px.space.names[j]
                                    + " are not respected"};
        }
      }
    }
    return {v, {}};
  }

 private:
  std::string render_tuple(std::vector<int> const& t) const {
    std::string s = "(";
    for (std::size_t k = 0; k < t.size(); ++k) {
      s += (k ? "," : "") + s_.carrier->names[t[k]];
    }
    return s + ")";
  }

  static std::string space_key(Space const& x) {
    std::string k = std::to_string(static_cast<int>(x.base)) + ":"
                    + std::to_string(x.size()) + ":";
    for (auto const& r : x.le) {
      for (bool b : r) {
        k += b ? '1' : '0';
      }
    }
    for (auto const& r : x.d) {
      for (auto const& dd : r) {
        k += to_string(dd) + ",";
      }
    }
    return k;
  }

  OrdStructure const& s_;
  std::map<std::string, HomSpace> powers_;
};

struct OrdVerdict {
  Status status = Status::holds;
  std::string witness;

  bool holds() const { return status == Status::holds; }
};

inline OrdVerdict check_defined(OrdTermPtr const& t, OrdStructure const& a) {
  OrdEvaluator ev(a);
  auto r = ev.eval(*t);
  if (!r.value) {
    return {Status::not_interpretable, r.witness};
  }
  return {};
}

/// Both terms glued along the map 1+1 -> Y, with Y the poset 𝟚 or the
/// metric space 𝟚_ε.
inline OrdTermPtr glue_pair(OrdTermPtr const& t, OrdTermPtr const& s,
                            SpacePtr y) {
  return ord_glue(ord_var(y, 0), t->arity, {t, s});
}

/// Pointwise equality of two terms: t_A(ā) = s_A(ā) for every ā.
inline OrdVerdict check_equation(OrdTermPtr const& t, OrdTermPtr const& s,
                                 OrdStructure const& a) {
  OrdEvaluator ev(a);
  auto l = ev.eval(*t);
  if (!l.value) {
    return {Status::not_interpretable, l.witness};
  }
  auto r = ev.eval(*s);
  if (!r.value) {
    return {Status::not_interpretable, r.witness};
  }
  auto const& px = ev.power_of(*t->arity);
  for (std::size_t i = 0; i < l.value->size(); ++i) {
    if ((*l.value)[i] != (*r.value)[i]) {
      return {Status::fails, "valuation " + px.space.names[i]};
    }
  }
  return {};
}

/// t ≤ s: defined when t_A(ā) ≤ s_A(ā) for every ā.
inline OrdVerdict check_inequality(OrdTermPtr const& t, OrdTermPtr const& s,
                                   OrdStructure const& a) {
  static auto y = std::make_shared<Space const>(chain_poset(2));
  auto v = check_defined(glue_pair(t, s, y), a);
  if (v.status == Status::not_interpretable) {
    v.status = Status::fails;
  }
  return v;
}

/// t =_ε s: defined when d(t_A(ā), s_A(ā)) ≤ ε for every ā. At ε = 0 the
/// two-point space degenerates, so this is plain equality.
inline OrdVerdict check_quantitative(OrdTermPtr const& t, OrdTermPtr const& s,
                                     Rational eps, OrdStructure const& a) {
  if (eps == Rational(0)) {
    auto v = check_equation(t, s, a);
    if (v.status == Status::not_interpretable) {
      v.status = Status::fails;
    }
    return v;
  }
  auto y = std::make_shared<Space const>(two_points(eps));
  auto v = check_defined(glue_pair(t, s, y), a);
  if (v.status == Status::not_interpretable) {
    v.status = Status::fails;
  }
  return v;
}

/// A judgement over a concrete base.
struct OrdJudgement {
  enum class Kind { defined, equal, less, near };
  Kind kind = Kind::defined;
  OrdTermPtr lhs;
  OrdTermPtr rhs;
  Rational eps{0};
  std::string label;
};

struct OrdTheory {
  std::string name;
  std::shared_ptr<OrdLanguage const> lang;
  std::vector<OrdJudgement> judgements;
};

inline OrdVerdict check_judgement(OrdJudgement const& j, OrdStructure const& a) {
  switch (j.kind) {
    case OrdJudgement::Kind::defined: return check_defined(j.lhs, a);
    case OrdJudgement::Kind::equal: return check_equation(j.lhs, j.rhs, a);
    case OrdJudgement::Kind::less: return check_inequality(j.lhs, j.rhs, a);
    case OrdJudgement::Kind::near:
      return check_quantitative(j.lhs, j.rhs, j.eps, a);
  }
  return {};
}

/// Injective and order reflecting.
inline bool strong_subobject_check_pos(Space const& a, Space const& b,
                                       std::vector<int> const& m) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (i != j && m[i] == m[j]) {
        return false;
      }
      if (a.leq(i, j) != b.leq(m[i], m[j])) {
        return false;
      }
    }
  }
  return true;
}

/// Distance preserving.
inline bool isometry_check_met(Space const& a, Space const& b,
                               std::vector<int> const& m) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (!(a.dist(i, j) == b.dist(m[i], m[j]))) {
        return false;
      }
    }
  }
  return true;
}

/// Product of two spaces of the same base; point (i, j) is i*|B| + j.
inline Space product_space(Space const& a, Space const& b) {
  Space p{a.base, {}, {}, {}};
  auto na = a.size();
  auto nb = b.size();
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      p.names.push_back("(" + a.names[i] + "," + b.names[j] + ")");
    }
  }
  auto n = na * nb;
  if (a.base == Base::pos) {
    p.le.assign(n, std::vector<bool>(n));
  }
  if (a.base == Base::met) {
    p.d.assign(n, std::vector<Dist>(n));
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      auto [i, j] = std::pair{x / nb, x % nb};
      auto [k, l] = std::pair{y / nb, y % nb};
      if (a.base == Base::pos) {
        p.le[x][y] = a.leq(i, k) && b.leq(j, l);
      }
      if (a.base == Base::met) {
        Dist d1 = a.dist(i, k);
        Dist d2 = b.dist(j, l);
        p.d[x][y] = d1 < d2 ? d2 : d1;
      }
    }
  }
  return p;
}

/// The product structure, with interpretations computed componentwise.
inline OrdStructure ord_product_structure(OrdStructure const& a,
                                          OrdStructure const& b) {
  auto p = std::make_shared<Space const>(product_space(*a.carrier, *b.carrier));
  OrdStructure s{a.name + "x" + b.name, a.lang, p, {}};
  auto nb = static_cast<int>(b.carrier->size());
  for (auto const& op : a.lang->ops) {
    auto ha = hom_space(*op.arity, *a.carrier);
    auto hb = hom_space(*op.arity, *b.carrier);
    auto hp = hom_space(*op.arity, *p);
    auto& t = s.table[op.name];
    std::vector<int> fa(op.arity->size()), fb(op.arity->size());
    for (auto const& f : hp.maps) {
      for (std::size_t k = 0; k < f.size(); ++k) {
        fa[k] = f[k] / nb;
        fb[k] = f[k] % nb;
      }
      t.push_back(a.table.at(op.name)[ha.find(fa)] * nb
                  + b.table.at(op.name)[hb.find(fb)]);
    }
  }
  return s;
}

/// The power structure A^Z with pointwise interpretations.
inline OrdStructure ord_power_structure(OrdStructure const& a, Space const& z) {
  auto hz = hom_space(z, *a.carrier);
  auto pz = std::make_shared<Space const>(hz.space);
  OrdStructure s{a.name + "^Z", a.lang, pz, {}};
  for (auto const& op : a.lang->ops) {
    auto ha = hom_space(*op.arity, *a.carrier);
    auto hp = hom_space(*op.arity, *pz);
    auto& t = s.table[op.name];
    std::vector<int> fa(op.arity->size());
    std::vector<int> out(z.size());
    for (auto const& f : hp.maps) {
      for (std::size_t w = 0; w < z.size(); ++w) {
        for (std::size_t k = 0; k < f.size(); ++k) {
          fa[k] = hz.maps[f[k]][w];
        }
        out[w] = a.table.at(op.name)[ha.find(fa)];
      }
      t.push_back(hz.find(out));
    }
  }
  return s;
}

}  // namespace enrich
