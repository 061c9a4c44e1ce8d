#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "enrich/error.hpp"

namespace enrich {

using ObjId = int;
using ArrId = int;

class CatBuilder;

/// A finite category stored as a total composition table. Objects and arrows
/// are dense integer ids; the id order is the canonical order used by every
/// enumeration in the library.
///
/// Values are immutable once built. Construct through CatBuilder (or the shape
/// helpers below); CatBuilder::build validates the category laws.
class FinCat {
 public:
  FinCat() = default;

  std::size_t num_objects() const noexcept { return obj_names_.size(); }
  std::size_t num_arrows() const noexcept { return src_.size(); }

  ObjId source(ArrId a) const { return src_.at(a); }
  ObjId target(ArrId a) const { return tgt_.at(a); }
  ArrId identity(ObjId o) const { return ident_.at(o); }
  bool is_identity(ArrId a) const { return ident_[src_[a]] == a; }

  /// g∘f, or nullopt when target(f) != source(g).
  std::optional<ArrId> compose(ArrId g, ArrId f) const {
    if (tgt_[f] != src_[g]) {
      return std::nullopt;
    }
    return comp_rows_[f][out_pos_[g]];
  }

  /// g∘f for arrows known to be composable.
  ArrId comp(ArrId g, ArrId f) const {
    if (tgt_[f] != src_[g]) {
      throw Error(ErrorKind::invalid_argument,
                  "arrows " + arrow_name(g) + " and " + arrow_name(f)
                      + " are not composable");
    }
    return comp_rows_[f][out_pos_[g]];
  }

  std::span<ArrId const> out(ObjId o) const { return out_[o]; }
  std::span<ArrId const> in(ObjId o) const { return in_[o]; }
  std::span<ArrId const> hom(ObjId a, ObjId b) const {
    return hom_[static_cast<std::size_t>(a) * num_objects() + b];
  }

  /// The inverse of `a`, if it is an isomorphism.
  std::optional<ArrId> inverse(ArrId a) const {
    for (ArrId b : hom(tgt_[a], src_[a])) {
      if (comp(b, a) == ident_[src_[a]] && comp(a, b) == ident_[tgt_[a]]) {
        return b;
      }
    }
    return std::nullopt;
  }

  std::string const& object_name(ObjId o) const { return obj_names_.at(o); }
  std::string const& arrow_name(ArrId a) const { return arr_names_.at(a); }

  std::optional<ObjId> find_object(std::string const& name) const {
    auto it = std::find(obj_names_.begin(), obj_names_.end(), name);
    if (it == obj_names_.end()) {
      return std::nullopt;
    }
    return static_cast<ObjId>(it - obj_names_.begin());
  }

  std::optional<ArrId> find_arrow(std::string const& name) const {
    auto it = std::find(arr_names_.begin(), arr_names_.end(), name);
    if (it == arr_names_.end()) {
      return std::nullopt;
    }
    return static_cast<ArrId>(it - arr_names_.begin());
  }

  /// Serialization of the tables (names excluded). Two categories with equal
  /// keys are equal as tables; used for arity comparison and caching.
  std::string const& key() const { return key_; }

  bool same_tables(FinCat const& other) const { return key_ == other.key_; }

  /// True if every arrow is an identity.
  bool is_discrete() const {
    return num_arrows() == num_objects();
  }

  bool is_groupoid() const {
    for (ArrId a = 0; a < static_cast<ArrId>(num_arrows()); ++a) {
      if (!inverse(a)) {
        return false;
      }
    }
    return true;
  }

 private:
  friend class CatBuilder;

  void finish() {
    std::size_t n = num_objects();
    std::size_t m = num_arrows();
    out_.assign(n, {});
    in_.assign(n, {});
    hom_.assign(n * n, {});
    out_pos_.assign(m, 0);
    for (ArrId a = 0; a < static_cast<ArrId>(m); ++a) {
      out_pos_[a] = static_cast<int>(out_[src_[a]].size());
      out_[src_[a]].push_back(a);
      in_[tgt_[a]].push_back(a);
      hom_[static_cast<std::size_t>(src_[a]) * n + tgt_[a]].push_back(a);
    }
    key_.clear();
    key_ += std::to_string(n) + ';';
    for (ObjId o = 0; o < static_cast<ObjId>(n); ++o) {
      key_ += std::to_string(ident_[o]) + ',';
    }
    key_ += ';';
    for (ArrId a = 0; a < static_cast<ArrId>(m); ++a) {
      key_ += std::to_string(src_[a]) + '>' + std::to_string(tgt_[a]) + ',';
    }
    key_ += ';';
    for (ArrId f = 0; f < static_cast<ArrId>(m); ++f) {
      for (ArrId h : comp_rows_[f]) {
        key_ += std::to_string(h) + ',';
      }
      key_ += '|';
    }
  }

  std::vector<std::string> obj_names_;
  std::vector<std::string> arr_names_;
  std::vector<ObjId> src_;
  std::vector<ObjId> tgt_;
  std::vector<ArrId> ident_;
  std::vector<std::vector<ArrId>> out_;
  std::vector<std::vector<ArrId>> in_;
  std::vector<std::vector<ArrId>> hom_;
  std::vector<int> out_pos_;
  // comp_rows_[f][out_pos_[g]] == g∘f
  std::vector<std::vector<ArrId>> comp_rows_;
  std::string key_;
};

inline bool operator==(FinCat const& a, FinCat const& b) {
  return a.same_tables(b);
}

using CatPtr = std::shared_ptr<FinCat const>;

/// Incremental construction of a FinCat from an explicit table.
///
/// Compositions involving an identity are filled in automatically when not
/// given. Every other composable pair must be set.
class CatBuilder {
 public:
  ObjId add_object(std::string name) {
    obj_names_.push_back(std::move(name));
    ident_.push_back(-1);
    return static_cast<ObjId>(obj_names_.size() - 1);
  }

  ArrId add_arrow(std::string name, ObjId s, ObjId t) {
    if (s < 0 || t < 0 || s >= static_cast<ObjId>(obj_names_.size())
        || t >= static_cast<ObjId>(obj_names_.size())) {
      throw Error(ErrorKind::unknown_object,
                  "arrow " + name + " has an endpoint outside the category");
    }
    arr_names_.push_back(std::move(name));
    src_.push_back(s);
    tgt_.push_back(t);
    return static_cast<ArrId>(src_.size() - 1);
  }

  /// Adds an arrow o -> o and marks it as the identity of o.
  ArrId add_identity(ObjId o, std::string name) {
    ArrId a = add_arrow(std::move(name), o, o);
    ident_[o] = a;
    return a;
  }

  void set_identity(ObjId o, ArrId a) { ident_.at(o) = a; }

  void set_compose(ArrId g, ArrId f, ArrId h) { table_[{g, f}] = h; }

  std::size_t num_objects() const { return obj_names_.size(); }
  std::size_t num_arrows() const { return src_.size(); }

  /// Builds the category. With `validate`, checks identity laws,
  /// endpoint typing of the table, and associativity on every composable
  /// triple.
  FinCat build(bool validate = true) const {
    FinCat c;
    c.obj_names_ = obj_names_;
    c.arr_names_ = arr_names_;
    c.src_ = src_;
    c.tgt_ = tgt_;
    c.ident_ = ident_;
    std::size_t n = obj_names_.size();
    std::size_t m = src_.size();
    for (ObjId o = 0; o < static_cast<ObjId>(n); ++o) {
      ArrId i = ident_[o];
      if (i < 0) {
        throw Error(ErrorKind::missing_identity,
                    "object " + obj_names_[o] + " has no identity");
      }
      if (src_[i] != o || tgt_[i] != o) {
        throw Error(ErrorKind::missing_identity,
                    "identity of " + obj_names_[o] + " is not an endomorphism");
      }
    }
    std::vector<std::vector<ArrId>> out(n);
    std::vector<int> pos(m);
    for (ArrId a = 0; a < static_cast<ArrId>(m); ++a) {
      pos[a] = static_cast<int>(out[src_[a]].size());
      out[src_[a]].push_back(a);
    }
    c.comp_rows_.assign(m, {});
    for (ArrId f = 0; f < static_cast<ArrId>(m); ++f) {
      auto& row = c.comp_rows_[f];
      row.assign(out[tgt_[f]].size(), -1);
      for (ArrId g : out[tgt_[f]]) {
        auto it = table_.find({g, f});
        ArrId h = -1;
        bool gi = ident_[src_[g]] == g;
        bool fi = ident_[src_[f]] == f;
        if (it != table_.end()) {
          h = it->second;
          if (h < 0 || h >= static_cast<ArrId>(m)) {
            throw Error(ErrorKind::unknown_arrow,
                        "composite of " + arr_names_[g] + " and "
                            + arr_names_[f] + " is not an arrow");
          }
          if (validate && ((gi && h != f) || (fi && h != g))) {
            throw Error(ErrorKind::missing_identity,
                        "identity law fails at " + arr_names_[gi ? f : g]);
          }
        } else if (gi) {
          h = f;
        } else if (fi) {
          h = g;
        } else {
          throw Error(ErrorKind::incomplete_table,
                      "no composite given for " + arr_names_[g] + " . "
                          + arr_names_[f]);
        }
        if (src_[h] != src_[f] || tgt_[h] != tgt_[g]) {
          throw Error(ErrorKind::non_associative,
                      "composite " + arr_names_[g] + " . " + arr_names_[f]
                          + " has the wrong endpoints");
        }
        row[pos[g]] = h;
      }
    }
    for (auto const& [gf, h] : table_) {
      if (tgt_[gf.second] != src_[gf.first]) {
        throw Error(ErrorKind::incomplete_table,
                    "composite given for non-composable pair "
                        + arr_names_[gf.first] + " . " + arr_names_[gf.second]);
      }
    }
    c.finish();
    if (validate) {
      check_associative(c);
    }
    return c;
  }

  static void check_associative(FinCat const& c) {
    auto m = static_cast<ArrId>(c.num_arrows());
    for (ArrId f = 0; f < m; ++f) {
      for (ArrId g : c.out(c.target(f))) {
        ArrId gf = c.comp(g, f);
        for (ArrId h : c.out(c.target(g))) {
          if (c.comp(h, gf) != c.comp(c.comp(h, g), f)) {
            throw Error(ErrorKind::non_associative,
                        "(" + c.arrow_name(h) + " . " + c.arrow_name(g)
                            + ") . " + c.arrow_name(f) + " differs from "
                            + c.arrow_name(h) + " . (" + c.arrow_name(g)
                            + " . " + c.arrow_name(f) + ")");
          }
        }
      }
    }
  }

 private:
  std::vector<std::string> obj_names_;
  std::vector<std::string> arr_names_;
  std::vector<ObjId> src_;
  std::vector<ObjId> tgt_;
  std::vector<ArrId> ident_;
  std::map<std::pair<ArrId, ArrId>, ArrId> table_;
};

/// An explicit table; the input form of validate_category.
struct CatTable {
  struct Arrow {
    std::string name;
    std::string source;
    std::string target;
  };
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  /// object name -> identity arrow name; objects missing here get a fresh
  /// identity arrow named "id_<object>".
  std::map<std::string, std::string> identities;
  /// (g, f) -> g.f by arrow names
  std::map<std::pair<std::string, std::string>, std::string> compose;
};

inline FinCat validate_category(CatTable const& t) {
  CatBuilder b;
  std::map<std::string, ObjId> objs;
  for (auto const& o : t.objects) {
    if (objs.count(o)) {
      throw Error(ErrorKind::invalid_argument, "duplicate object " + o);
    }
    objs[o] = b.add_object(o);
  }
  std::map<std::string, ArrId> arrs;
  auto obj = [&](std::string const& n) {
    auto it = objs.find(n);
    if (it == objs.end()) {
      throw Error(ErrorKind::unknown_object, n);
    }
    return it->second;
  };
  for (auto const& a : t.arrows) {
    if (arrs.count(a.name)) {
      throw Error(ErrorKind::invalid_argument, "duplicate arrow " + a.name);
    }
    arrs[a.name] = b.add_arrow(a.name, obj(a.source), obj(a.target));
  }
  auto arr = [&](std::string const& n) {
    auto it = arrs.find(n);
    if (it == arrs.end()) {
      throw Error(ErrorKind::unknown_arrow, n);
    }
    return it->second;
  };
  for (auto const& o : t.objects) {
    auto it = t.identities.find(o);
    if (it != t.identities.end()) {
      b.set_identity(objs[o], arr(it->second));
    } else {
      std::string name = "id_" + o;
      if (arrs.count(name)) {
        throw Error(ErrorKind::missing_identity,
                    "no identity designated for " + o);
      }
      arrs[name] = b.add_identity(objs[o], name);
    }
  }
  for (auto const& [gf, h] : t.compose) {
    b.set_compose(arr(gf.first), arr(gf.second), arr(h));
  }
  return b.build(true);
}

/// A subcategory together with the inclusion maps back into the parent.
struct SubCat {
  FinCat cat;
  std::vector<ObjId> obj_to_parent;
  std::vector<ArrId> arr_to_parent;
};

/// The subcategory on the marked objects and arrows. The marks must be closed
/// under identities and composition.
inline SubCat subcategory(FinCat const& c, std::vector<bool> const& objs,
                          std::vector<bool> const& arrs) {
  SubCat s;
  CatBuilder b;
  std::vector<ObjId> obj_new(c.num_objects(), -1);
  std::vector<ArrId> arr_new(c.num_arrows(), -1);
  for (ObjId o = 0; o < static_cast<ObjId>(c.num_objects()); ++o) {
    if (objs[o]) {
      obj_new[o] = b.add_object(c.object_name(o));
      s.obj_to_parent.push_back(o);
    }
  }
  for (ArrId a = 0; a < static_cast<ArrId>(c.num_arrows()); ++a) {
    if (arrs[a]) {
      if (!objs[c.source(a)] || !objs[c.target(a)]) {
        throw Error(ErrorKind::invalid_argument,
                    "arrow " + c.arrow_name(a) + " leaves the subcategory");
      }
      arr_new[a] = b.add_arrow(c.arrow_name(a), obj_new[c.source(a)],
                               obj_new[c.target(a)]);
      s.arr_to_parent.push_back(a);
    }
  }
  for (ObjId o = 0; o < static_cast<ObjId>(c.num_objects()); ++o) {
    if (objs[o]) {
      if (!arrs[c.identity(o)]) {
        throw Error(ErrorKind::missing_identity,
                    "subcategory omits identity of " + c.object_name(o));
      }
      b.set_identity(obj_new[o], arr_new[c.identity(o)]);
    }
  }
  for (ArrId f : s.arr_to_parent) {
    for (ArrId g : c.out(c.target(f))) {
      if (!arrs[g]) {
        continue;
      }
      ArrId h = c.comp(g, f);
      if (!arrs[h]) {
        throw Error(ErrorKind::invalid_argument,
                    "subcategory not closed under composition");
      }
      b.set_compose(arr_new[g], arr_new[f], arr_new[h]);
    }
  }
  s.cat = b.build(false);
  return s;
}

/// Product category; objects (a,b) are numbered a * |B| + b and likewise for
/// arrows.
inline FinCat product(FinCat const& a, FinCat const& b) {
  CatBuilder cb;
  auto nb = static_cast<int>(b.num_objects());
  auto mb = static_cast<int>(b.num_arrows());
  for (ObjId x = 0; x < static_cast<ObjId>(a.num_objects()); ++x) {
    for (ObjId y = 0; y < nb; ++y) {
      cb.add_object("(" + a.object_name(x) + "," + b.object_name(y) + ")");
    }
  }
  for (ArrId f = 0; f < static_cast<ArrId>(a.num_arrows()); ++f) {
    for (ArrId g = 0; g < mb; ++g) {
      cb.add_arrow("(" + a.arrow_name(f) + "," + b.arrow_name(g) + ")",
                   a.source(f) * nb + b.source(g),
                   a.target(f) * nb + b.target(g));
    }
  }
  for (ObjId x = 0; x < static_cast<ObjId>(a.num_objects()); ++x) {
    for (ObjId y = 0; y < nb; ++y) {
      cb.set_identity(x * nb + y, a.identity(x) * mb + b.identity(y));
    }
  }
  for (ArrId f1 = 0; f1 < static_cast<ArrId>(a.num_arrows()); ++f1) {
    for (ArrId f2 : a.out(a.target(f1))) {
      for (ArrId g1 = 0; g1 < mb; ++g1) {
        for (ArrId g2 : b.out(b.target(g1))) {
          cb.set_compose(f2 * mb + g2, f1 * mb + g1,
                         a.comp(f2, f1) * mb + b.comp(g2, g1));
        }
      }
    }
  }
  return cb.build(false);
}

/// The component categories laid side by side. Object and arrow ids of the
/// i-th summand follow those of the earlier summands. Names are prefixed
/// with "<i>:" when more than one summand is present.
inline FinCat coproduct(std::vector<FinCat> const& parts) {
  CatBuilder cb;
  std::vector<int> obase;
  std::vector<int> abase;
  bool tag = parts.size() > 1;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto const& p = parts[i];
    std::string pre = tag ? std::to_string(i) + ":" : "";
    obase.push_back(static_cast<int>(cb.num_objects()));
    for (ObjId o = 0; o < static_cast<ObjId>(p.num_objects()); ++o) {
      cb.add_object(pre + p.object_name(o));
    }
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto const& p = parts[i];
    std::string pre = tag ? std::to_string(i) + ":" : "";
    abase.push_back(static_cast<int>(cb.num_arrows()));
    for (ArrId a = 0; a < static_cast<ArrId>(p.num_arrows()); ++a) {
      cb.add_arrow(pre + p.arrow_name(a), obase[i] + p.source(a),
                   obase[i] + p.target(a));
    }
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto const& p = parts[i];
    for (ObjId o = 0; o < static_cast<ObjId>(p.num_objects()); ++o) {
      cb.set_identity(obase[i] + o, abase[i] + p.identity(o));
    }
    for (ArrId f = 0; f < static_cast<ArrId>(p.num_arrows()); ++f) {
      for (ArrId g : p.out(p.target(f))) {
        cb.set_compose(abase[i] + g, abase[i] + f, abase[i] + p.comp(g, f));
      }
    }
  }
  return cb.build(false);
}

namespace shapes {

/// The empty category.
inline FinCat empty() { return CatBuilder().build(); }

/// The terminal category 1, object "*" and arrow "id".
inline FinCat terminal() {
  CatBuilder b;
  ObjId o = b.add_object("*");
  b.add_identity(o, "id");
  return b.build();
}

/// The discrete category on n objects named 0..n-1.
inline FinCat discrete(int n) {
  CatBuilder b;
  for (int i = 0; i < n; ++i) {
    b.add_object(std::to_string(i));
  }
  for (int i = 0; i < n; ++i) {
    b.add_identity(i, "id" + std::to_string(i));
  }
  return b.build();
}

/// The ordinal n = {0 -> 1 -> ... -> n-1}. Arrows: identities id<i> first,
/// then u<i><j> for i < j in lexicographic order.
inline FinCat chain(int n) {
  CatBuilder b;
  for (int i = 0; i < n; ++i) {
    b.add_object(std::to_string(i));
  }
  for (int i = 0; i < n; ++i) {
    b.add_identity(i, "id" + std::to_string(i));
  }
  std::map<std::pair<int, int>, ArrId> arr;
  for (int i = 0; i < n; ++i) {
    arr[{i, i}] = i;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      arr[{i, j}] = b.add_arrow("u" + std::to_string(i) + std::to_string(j),
                                i, j);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int k = j; k < n; ++k) {
        b.set_compose(arr[{j, k}], arr[{i, j}], arr[{i, k}]);
      }
    }
  }
  return b.build();
}

/// The arrow category 2 = {0 -> 1}: arrows id0, id1, u.
inline FinCat arrow() {
  CatBuilder b;
  b.add_object("0");
  b.add_object("1");
  b.add_identity(0, "id0");
  b.add_identity(1, "id1");
  b.add_arrow("u", 0, 1);
  return b.build();
}

/// The free-living isomorphism I = {0 ≅ 1}: arrows id0, id1, u: 0->1,
/// v: 1->0.
inline FinCat iso() {
  CatBuilder b;
  b.add_object("0");
  b.add_object("1");
  b.add_identity(0, "id0");
  b.add_identity(1, "id1");
  ArrId u = b.add_arrow("u", 0, 1);
  ArrId v = b.add_arrow("v", 1, 0);
  b.set_compose(v, u, 0);
  b.set_compose(u, v, 1);
  return b.build();
}

/// D with a freely added initial object "apex"; the new arrows are named
/// "to_<d>". This is the shape of cones over D.
inline FinCat cone(FinCat const& d) {
  CatBuilder b;
  auto n = static_cast<ObjId>(d.num_objects());
  for (ObjId o = 0; o < n; ++o) {
    b.add_object(d.object_name(o));
  }
  ObjId apex = b.add_object("apex");
  for (ArrId a = 0; a < static_cast<ArrId>(d.num_arrows()); ++a) {
    b.add_arrow(d.arrow_name(a), d.source(a), d.target(a));
  }
  for (ObjId o = 0; o < n; ++o) {
    b.set_identity(o, d.identity(o));
  }
  b.add_identity(apex, "id_apex");
  auto base = static_cast<ArrId>(d.num_arrows()) + 1;
  for (ObjId o = 0; o < n; ++o) {
    b.add_arrow("to_" + d.object_name(o), apex, o);
  }
  for (ArrId f = 0; f < static_cast<ArrId>(d.num_arrows()); ++f) {
    for (ArrId g : d.out(d.target(f))) {
      b.set_compose(g, f, d.comp(g, f));
    }
    b.set_compose(f, base + d.source(f), base + d.target(f));
  }
  return b.build();
}

/// cone(D) with a further object "pre" and an arrow "pre_apex": pre -> apex.
/// Composites pre -> d are named "pre_to_<d>".
inline FinCat cone2(FinCat const& d) {
  FinCat c = cone(d);
  CatBuilder b;
  auto n = static_cast<ObjId>(c.num_objects());
  for (ObjId o = 0; o < n; ++o) {
    b.add_object(c.object_name(o));
  }
  ObjId pre = b.add_object("pre");
  for (ArrId a = 0; a < static_cast<ArrId>(c.num_arrows()); ++a) {
    b.add_arrow(c.arrow_name(a), c.source(a), c.target(a));
  }
  for (ObjId o = 0; o < n; ++o) {
    b.set_identity(o, c.identity(o));
  }
  ObjId apex = n - 1;
  b.add_identity(pre, "id_pre");
  std::vector<ArrId> from_pre(n, -1);
  for (ObjId o = 0; o < n; ++o) {
    from_pre[o] = o == apex ? b.add_arrow("pre_apex", pre, apex)
                            : b.add_arrow("pre_to_" + c.object_name(o), pre, o);
  }
  for (ArrId f = 0; f < static_cast<ArrId>(c.num_arrows()); ++f) {
    for (ArrId g : c.out(c.target(f))) {
      b.set_compose(g, f, c.comp(g, f));
    }
    b.set_compose(f, from_pre[c.source(f)], from_pre[c.target(f)]);
  }
  return b.build();
}

}  // namespace shapes

inline CatPtr make_cat(FinCat c) {
  return std::make_shared<FinCat const>(std::move(c));
}

}  // namespace enrich
