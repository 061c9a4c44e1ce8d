#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "enrich/error.hpp"
#include "enrich/fincat.hpp"

namespace enrich {

/// Objects, generating arrows and relations between generator paths.
///
/// A path lists generator names in composition order: {"g", "f"} is g.f,
/// with f applied first. The name "id_<object>" denotes the empty path at
/// that object and may appear in a path of otherwise nothing.
struct CatPresentation {
  struct Gen {
    std::string name;
    std::string source;
    std::string target;
  };
  struct Relation {
    std::vector<std::string> lhs;
    std::vector<std::string> rhs;
  };
  std::vector<std::string> objects;
  std::vector<Gen> generators;
  std::vector<Relation> relations;
};

namespace detail {

// Coset enumeration of the hom-functor at one source object. Cosets are
// arrows out of the source; generators act by postcomposition.
class CosetTable {
 public:
  CosetTable(int source, std::vector<int> const& gsrc,
             std::vector<int> const& gtgt, std::size_t bound)
      : gsrc_(gsrc), gtgt_(gtgt), bound_(bound) {
    new_coset(source);
  }

  int find(int c) {
    while (parent_[c] != c) {
      parent_[c] = parent_[parent_[c]];
      c = parent_[c];
    }
    return c;
  }

  int act(int c, int g) {
    c = find(c);
    int& slot = table_[c][g];
    if (slot < 0) {
      slot = new_coset(gtgt_[g]);
    }
    return find(slot);
  }

  int trace(int c, std::vector<int> const& path) {
    for (int g : path) {
      c = act(c, g);
    }
    return find(c);
  }

  void merge(int a, int b) {
    std::deque<std::pair<int, int>> q{{a, b}};
    while (!q.empty()) {
      auto [x, y] = q.front();
      q.pop_front();
      x = find(x);
      y = find(y);
      if (x == y) {
        continue;
      }
      if (y < x) {
        std::swap(x, y);
      }
      parent_[y] = x;
      changed_ = true;
      for (std::size_t g = 0; g < gsrc_.size(); ++g) {
        int ty = table_[y][g];
        if (ty < 0) {
          continue;
        }
        int tx = table_[x][g];
        if (tx < 0) {
          table_[x][g] = ty;
        } else {
          q.push_back({tx, ty});
        }
      }
    }
  }

  std::size_t size() const { return parent_.size(); }
  int object(int c) const { return obj_[c]; }
  bool live(int c) const { return parent_[c] == c; }
  bool take_changed() {
    bool c = changed_;
    changed_ = false;
    return c;
  }
  int entry(int c, int g) { return table_[c][g] < 0 ? -1 : find(table_[c][g]); }

 private:
  int new_coset(int obj) {
    if (parent_.size() >= bound_) {
      throw Error(ErrorKind::closure_bound_exceeded,
                  "presentation did not close within "
                      + std::to_string(bound_) + " cosets");
    }
    int id = static_cast<int>(parent_.size());
    parent_.push_back(id);
    obj_.push_back(obj);
    table_.emplace_back(gsrc_.size(), -1);
    changed_ = true;
    return id;
  }

  std::vector<int> const& gsrc_;
  std::vector<int> const& gtgt_;
  std::size_t bound_;
  std::vector<int> parent_;
  std::vector<int> obj_;
  std::vector<std::vector<int>> table_;
  bool changed_ = false;
};

}  // namespace detail

/// The finite category presented by `p`. Throws ClosureBoundExceeded when
/// coset enumeration at some object defines more than `bound` cosets, which
/// includes every presentation of an infinite category.
inline FinCat validate_category(CatPresentation const& p,
                                std::size_t bound = 10000) {
  std::map<std::string, int> objs;
  for (std::size_t i = 0; i < p.objects.size(); ++i) {
    if (!objs.emplace(p.objects[i], static_cast<int>(i)).second) {
      throw Error(ErrorKind::invalid_argument,
                  "duplicate object " + p.objects[i]);
    }
  }
  auto obj = [&](std::string const& n) {
    auto it = objs.find(n);
    if (it == objs.end()) {
      throw Error(ErrorKind::unknown_object, n);
    }
    return it->second;
  };
  std::vector<int> gsrc, gtgt;
  std::map<std::string, int> gens;
  for (auto const& g : p.generators) {
    if (!gens.emplace(g.name, static_cast<int>(gsrc.size())).second) {
      throw Error(ErrorKind::invalid_argument, "duplicate generator " + g.name);
    }
    gsrc.push_back(obj(g.source));
    gtgt.push_back(obj(g.target));
  }

  struct Path {
    int source;
    int target;
    std::vector<int> gens;  // application order
  };
  auto parse_path = [&](std::vector<std::string> const& names) {
    Path path{-1, -1, {}};
    for (auto it = names.rbegin(); it != names.rend(); ++it) {
      auto const& n = *it;
      auto g = gens.find(n);
      int s, t;
      if (g != gens.end()) {
        s = gsrc[g->second];
        t = gtgt[g->second];
        path.gens.push_back(g->second);
      } else if (n.rfind("id_", 0) == 0 && objs.count(n.substr(3))) {
        s = t = objs[n.substr(3)];
      } else {
        throw Error(ErrorKind::unknown_arrow, n);
      }
      if (path.target >= 0 && path.target != s) {
        throw Error(ErrorKind::invalid_argument, "path is not composable");
      }
      if (path.source < 0) {
        path.source = s;
      }
      path.target = t;
    }
    if (path.source < 0) {
      throw Error(ErrorKind::invalid_argument, "empty path");
    }
    return path;
  };
  std::vector<std::pair<Path, Path>> rels;
  for (auto const& r : p.relations) {
    auto l = parse_path(r.lhs);
    auto q = parse_path(r.rhs);
    if (l.source != q.source || l.target != q.target) {
      throw Error(ErrorKind::invalid_argument,
                  "relation sides have different endpoints");
    }
    rels.push_back({std::move(l), std::move(q)});
  }

  auto n = static_cast<int>(p.objects.size());
  std::vector<detail::CosetTable> tables;
  for (int s = 0; s < n; ++s) {
    detail::CosetTable t(s, gsrc, gtgt, bound);
    bool again = true;
    while (again) {
      for (std::size_t c = 0; c < t.size(); ++c) {
        int ci = static_cast<int>(c);
        if (!t.live(ci)) {
          continue;
        }
        for (auto const& [l, r] : rels) {
          if (l.source != t.object(ci)) {
            continue;
          }
          int a = t.trace(ci, l.gens);
          int b = t.trace(t.find(ci), r.gens);
          t.merge(a, b);
          if (!t.live(ci)) {
            break;
          }
        }
        if (!t.live(ci)) {
          continue;
        }
        for (std::size_t g = 0; g < gsrc.size(); ++g) {
          if (gsrc[g] == t.object(ci)) {
            t.act(ci, static_cast<int>(g));
          }
        }
      }
      t.take_changed();
      // verification pass: complete table and every relation holds
      for (std::size_t c = 0; c < t.size(); ++c) {
        int ci = static_cast<int>(c);
        if (!t.live(ci)) {
          continue;
        }
        for (auto const& [l, r] : rels) {
          if (l.source == t.object(ci)) {
            t.merge(t.trace(ci, l.gens), t.trace(t.find(ci), r.gens));
          }
        }
        if (t.live(ci)) {
          for (std::size_t g = 0; g < gsrc.size(); ++g) {
            if (gsrc[g] == t.object(ci)) {
              t.act(ci, static_cast<int>(g));
            }
          }
        }
      }
      again = t.take_changed();
    }
    tables.push_back(std::move(t));
  }

  // shortest words per live coset, breadth first in generator order
  CatBuilder b;
  for (auto const& o : p.objects) {
    b.add_object(o);
  }
  std::vector<std::vector<int>> arrow_of(n);
  std::vector<std::vector<int>> live_order(n);
  std::vector<std::vector<std::vector<int>>> words(n);
  for (int s = 0; s < n; ++s) {
    auto& t = tables[s];
    auto& word = words[s];
    word.assign(t.size(), {});
    std::vector<bool> seen(t.size(), false);
    auto& order = live_order[s];
    order.push_back(0);
    seen[0] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
      int c = order[i];
      for (std::size_t g = 0; g < gsrc.size(); ++g) {
        if (gsrc[g] != t.object(c)) {
          continue;
        }
        int d = t.entry(c, static_cast<int>(g));
        if (d >= 0 && !seen[d]) {
          seen[d] = true;
          word[d] = word[c];
          word[d].push_back(static_cast<int>(g));
          order.push_back(d);
        }
      }
    }
    arrow_of[s].assign(t.size(), -1);
    for (int c : order) {
      std::string name;
      if (word[c].empty()) {
        name = "id_" + p.objects[s];
      } else {
        for (auto it = word[c].rbegin(); it != word[c].rend(); ++it) {
          name += (name.empty() ? "" : ".") + p.generators[*it].name;
        }
      }
      arrow_of[s][c] = b.add_arrow(name, s, t.object(c));
      if (c == 0) {
        b.set_identity(s, arrow_of[s][c]);
      }
    }
  }
  // g.f is f acted on by the word of g
  for (int s = 0; s < n; ++s) {
    for (int f : live_order[s]) {
      int u = tables[s].object(f);
      for (int g : live_order[u]) {
        int h = tables[s].trace(f, words[u][g]);
        b.set_compose(arrow_of[u][g], arrow_of[s][f], arrow_of[s][h]);
      }
    }
  }
  return b.build();
}

}  // namespace enrich
