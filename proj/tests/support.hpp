#pragma once

// Brute-force oracles shared by the test suite and the acceptance binary.
// None of them call into the library's decision procedures.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "enrich/concrete.hpp"
#include "enrich/fincat.hpp"
#include "enrich/functor.hpp"

namespace oracle {

using namespace enrich;

/// Some g with g.a = id and a.g = id, found by scanning every arrow.
inline bool invertible(FinCat const& c, ArrId a) {
  ObjId s = c.source(a);
  ObjId t = c.target(a);
  for (ArrId g = 0; g < static_cast<ArrId>(c.num_arrows()); ++g) {
    if (c.source(g) != t || c.target(g) != s) {
      continue;
    }
    if (c.compose(g, a) == c.identity(s) && c.compose(a, g) == c.identity(t)) {
      return true;
    }
  }
  return false;
}

inline bool groupoid(FinCat const& c) {
  for (ArrId a = 0; a < static_cast<ArrId>(c.num_arrows()); ++a) {
    if (!invertible(c, a)) {
      return false;
    }
  }
  return true;
}

/// Every arrow is the identity of its source.
inline bool discrete(FinCat const& c) {
  for (ArrId a = 0; a < static_cast<ArrId>(c.num_arrows()); ++a) {
    if (c.identity(c.source(a)) != a) {
      return false;
    }
  }
  return true;
}

/// Full subcategory of finite sets on the sets of size 0..max_size.
inline FinCat finite_sets(int max_size = 3) {
  CatBuilder b;
  for (int i = 0; i <= max_size; ++i) {
    b.add_object("s" + std::to_string(i));
  }
  std::vector<std::tuple<int, int, std::vector<int>>> arrs;
  for (int m = 0; m <= max_size; ++m) {
    for (int n = 0; n <= max_size; ++n) {
      int count = 1;
      for (int k = 0; k < m; ++k) {
        count *= n;
      }
      for (int c = 0; c < count; ++c) {
        std::vector<int> f(m);
        int x = c;
        for (int k = 0; k < m; ++k) {
          f[k] = x % n;
          x /= n;
        }
        bool id = m == n;
        for (int k = 0; k < m && id; ++k) {
          id = f[k] == k;
        }
        if (id) {
          b.add_identity(m, "id" + std::to_string(m));
        } else {
          b.add_arrow("f" + std::to_string(arrs.size()), m, n);
        }
        arrs.emplace_back(m, n, f);
      }
    }
  }
  for (std::size_t g = 0; g < arrs.size(); ++g) {
    for (std::size_t f = 0; f < arrs.size(); ++f) {
      auto const& [fm, fn, ff] = arrs[f];
      auto const& [gm, gn, gf] = arrs[g];
      if (fn != gm) {
        continue;
      }
      std::vector<int> h(fm);
      for (int k = 0; k < fm; ++k) {
        h[k] = gf[ff[k]];
      }
      for (std::size_t r = 0; r < arrs.size(); ++r) {
        auto const& [rm, rn, rf] = arrs[r];
        if (rm == fm && rn == gn && rf == h) {
          b.set_compose(static_cast<ArrId>(g), static_cast<ArrId>(f),
                        static_cast<ArrId>(r));
          break;
        }
      }
    }
  }
  return b.build();
}

/// Cancellation test: two functors B -> Z that agree after f but differ.
/// Returns true when such a pair exists for some probe Z.
inline bool cancellation_fails(FinFunctor const& f,
                               std::vector<CatPtr> const& probes) {
  for (auto const& z : probes) {
    std::map<std::vector<int>, std::vector<int>> seen;
    bool witness = false;
    for_each_functor(*f.cod, *z, [&](auto const& om, auto const& am) {
      std::vector<int> key;
      for (ObjId o : f.obj) {
        key.push_back(om[o]);
      }
      for (ArrId r : f.arr) {
        key.push_back(am[r]);
      }
      std::vector<int> full(om.begin(), om.end());
      full.insert(full.end(), am.begin(), am.end());
      auto [it, fresh] = seen.emplace(key, full);
      if (!fresh && it->second != full) {
        witness = true;
        return false;
      }
      return true;
    });
    if (witness) {
      return true;
    }
  }
  return false;
}

/// m.e = f, arrow by arrow.
inline bool composes_to(FinFunctor const& m, FinFunctor const& e,
                        FinFunctor const& f) {
  for (std::size_t o = 0; o < f.obj.size(); ++o) {
    if (m.obj[e.obj[o]] != f.obj[o]) {
      return false;
    }
  }
  for (std::size_t a = 0; a < f.arr.size(); ++a) {
    if (m.arr[e.arr[a]] != f.arr[a]) {
      return false;
    }
  }
  return true;
}

// ---- concrete bases ----

inline std::vector<std::vector<int>> permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// All partial orders on n points up to isomorphism, as leq matrices.
inline std::vector<std::vector<std::vector<bool>>> posets(int n) {
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) {
        cells.emplace_back(i, j);
      }
    }
  }
  auto perms = permutations(n);
  std::map<std::vector<bool>, bool> canon;
  std::vector<std::vector<std::vector<bool>>> out;
  for (unsigned long mask = 0; mask < (1ul << cells.size()); ++mask) {
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
      le[i][i] = true;
    }
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (mask & (1ul << k)) {
        le[cells[k].first][cells[k].second] = true;
      }
    }
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = 0; j < n && ok; ++j) {
        if (i != j && le[i][j] && le[j][i]) {
          ok = false;
        }
        for (int k = 0; k < n && ok; ++k) {
          if (le[i][j] && le[j][k] && !le[i][k]) {
            ok = false;
          }
        }
      }
    }
    if (!ok) {
      continue;
    }
    std::vector<bool> best;
    for (auto const& p : perms) {
      std::vector<bool> key;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          key.push_back(le[p[i]][p[j]]);
        }
      }
      if (best.empty() || key < best) {
        best = key;
      }
    }
    if (canon.emplace(best, true).second) {
      out.push_back(le);
    }
  }
  return out;
}

inline Space poset_space(std::vector<std::vector<bool>> const& le) {
  Space s;
  s.base = Base::pos;
  s.names = default_names(static_cast<int>(le.size()));
  s.le = le;
  return s;
}

/// Symmetric distance matrices on n points with off-diagonal values from
/// `values` satisfying the triangle inequality, up to isomorphism.
inline std::vector<Space> metrics(int n, std::vector<Dist> const& values) {
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      cells.emplace_back(i, j);
    }
  }
  auto perms = permutations(n);
  std::vector<Space> out;
  std::vector<std::vector<std::vector<Dist>>> kept;
  std::vector<std::size_t> pick(cells.size(), 0);
  auto same = [&](std::vector<std::vector<Dist>> const& a,
                  std::vector<std::vector<Dist>> const& b) {
    for (auto const& p : perms) {
      bool eq = true;
      for (int i = 0; i < n && eq; ++i) {
        for (int j = 0; j < n && eq; ++j) {
          eq = a[p[i]][p[j]] == b[i][j];
        }
      }
      if (eq) {
        return true;
      }
    }
    return false;
  };
  while (true) {
    std::vector<std::vector<Dist>> d(n, std::vector<Dist>(n, Dist{}));
    for (std::size_t k = 0; k < cells.size(); ++k) {
      d[cells[k].first][cells[k].second] = values[pick[k]];
      d[cells[k].second][cells[k].first] = values[pick[k]];
    }
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = 0; j < n && ok; ++j) {
        for (int k = 0; k < n && ok; ++k) {
          ok = d[i][k] <= d[i][j] + d[j][k];
        }
      }
    }
    if (ok && std::none_of(kept.begin(), kept.end(),
                           [&](auto const& e) { return same(e, d); })) {
      kept.push_back(d);
      Space s;
      s.base = Base::met;
      s.names = default_names(n);
      s.d = d;
      out.push_back(s);
    }
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == values.size()) {
      pick[k++] = 0;
    }
    if (k == pick.size()) {
      break;
    }
  }
  return out;
}

/// Maps x -> a respecting order or distance, checked pointwise.
inline std::vector<std::vector<int>> valuations(Space const& x, Space const& a) {
  std::vector<std::vector<int>> out;
  auto n = static_cast<int>(x.size());
  auto m = static_cast<int>(a.size());
  std::vector<int> f(n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
          if (a.base == Base::pos && x.le[p][q] && !a.le[f[p]][f[q]]) {
            return;
          }
          if (a.base == Base::met && x.d[p][q] < a.d[f[p]][f[q]]) {
            return;
          }
        }
      }
      out.push_back(f);
      return;
    }
    for (int v = 0; v < m; ++v) {
      f[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

/// Direct value of a variable/application term at a valuation. Symbol
/// tables are read by locating the argument tuple in `arg_lists[op]`.
inline int evaluate(OrdTerm const& t, std::vector<int> const& val,
                    std::map<std::string, std::vector<std::vector<int>>> const& arg_lists,
                    std::map<std::string, std::vector<int>> const& table) {
  if (t.kind == OrdKind::var) {
    return val[t.var];
  }
  std::vector<int> args;
  for (auto const& s : t.family) {
    args.push_back(evaluate(*s, val, arg_lists, table));
  }
  auto const& lists = arg_lists.at(t.op);
  auto it = std::find(lists.begin(), lists.end(), args);
  return table.at(t.op)[it - lists.begin()];
}

}  // namespace oracle
