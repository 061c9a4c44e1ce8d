#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "enrich/error.hpp"
#include "enrich/fincat.hpp"
#include "enrich/iso.hpp"

namespace enrich {

struct CorpusParams {
  int max_objects = 3;
  int max_arrows = 8;
  int max_hom = 2;
  std::size_t max_size = 100000;
};

/// Standard names: objects "0", "1", ..., identities "id<i>", and the other
/// arrows of hom(i,j) "f<i><j>", "g<i><j>", ... in id order.
inline FinCat with_standard_names(FinCat const& c) {
  CatBuilder b;
  for (ObjId o = 0; o < static_cast<ObjId>(c.num_objects()); ++o) {
    b.add_object(std::to_string(o));
  }
  std::vector<int> used(c.num_objects() * c.num_objects(), 0);
  for (ArrId a = 0; a < static_cast<ArrId>(c.num_arrows()); ++a) {
    ObjId s = c.source(a);
    ObjId t = c.target(a);
    std::string name;
    if (c.is_identity(a)) {
      name = "id" + std::to_string(s);
    } else {
      int& k = used[static_cast<std::size_t>(s) * c.num_objects() + t];
      name = std::string(1, static_cast<char>('f' + k)) + std::to_string(s)
             + std::to_string(t);
      ++k;
    }
    b.add_arrow(name, s, t);
  }
  for (ObjId o = 0; o < static_cast<ObjId>(c.num_objects()); ++o) {
    b.set_identity(o, c.identity(o));
  }
  for (ArrId f = 0; f < static_cast<ArrId>(c.num_arrows()); ++f) {
    for (ArrId g : c.out(c.target(f))) {
      b.set_compose(g, f, c.comp(g, f));
    }
  }
  return b.build(false);
}

namespace detail {

inline bool hom_matrix_is_minimal(std::vector<int> const& h, int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin(), perm.end())) {
    std::vector<int> q(h.size());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        q[i * n + j] = h[perm[i] * n + perm[j]];
      }
    }
    if (q < h) {
      return false;
    }
  }
  return true;
}

// All composition tables realizing a hom-size matrix.
inline void tables_for(std::vector<int> const& h, int n,
                       std::function<void(FinCat)> const& emit) {
  std::vector<int> src, tgt;
  std::vector<int> ident(n);
  std::vector<std::vector<int>> hom(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < h[i * n + j]; ++k) {
        int id = static_cast<int>(src.size());
        src.push_back(i);
        tgt.push_back(j);
        hom[i * n + j].push_back(id);
        if (i == j && k == 0) {
          ident[i] = id;
        }
      }
    }
  }
  auto m = static_cast<int>(src.size());
  auto is_id = [&](int a) { return ident[src[a]] == a; };
  std::vector<int> table(m * m, -1);  // table[g*m+f] = g.f
  std::vector<std::pair<int, int>> pairs;
  for (int f = 0; f < m; ++f) {
    for (int g = 0; g < m; ++g) {
      if (tgt[f] != src[g]) {
        continue;
      }
      if (is_id(g)) {
        table[g * m + f] = f;
      } else if (is_id(f)) {
        table[g * m + f] = g;
      } else {
        pairs.push_back({g, f});
      }
    }
  }
  auto val = [&](int g, int f) { return table[g * m + f]; };
  auto ok = [&](int h3, int g, int f) {
    int x = val(h3, g);
    int y = val(g, f);
    if (x < 0 || y < 0) {
      return true;
    }
    int l = val(x, f);
    int r = val(h3, y);
    return l < 0 || r < 0 || l == r;
  };
  auto check = [&](int p, int q) {
    for (int f = 0; f < m; ++f) {
      if (tgt[f] == src[q] && !ok(p, q, f)) {
        return false;
      }
    }
    for (int h3 = 0; h3 < m; ++h3) {
      if (src[h3] == tgt[p] && !ok(h3, p, q)) {
        return false;
      }
    }
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        if (tgt[b] == src[a] && val(a, b) == p && !ok(a, b, q)) {
          return false;
        }
        if (tgt[b] == src[a] && val(a, b) == q && !ok(p, a, b)) {
          return false;
        }
      }
    }
    return true;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == pairs.size()) {
      CatBuilder b;
      for (int i = 0; i < n; ++i) {
        b.add_object(std::to_string(i));
      }
      for (int a = 0; a < m; ++a) {
        b.add_arrow("a" + std::to_string(a), src[a], tgt[a]);
      }
      for (int i = 0; i < n; ++i) {
        b.set_identity(i, ident[i]);
      }
      for (auto [g, f] : pairs) {
        b.set_compose(g, f, val(g, f));
      }
      emit(b.build(true));
      return;
    }
    auto [g, f] = pairs[k];
    for (int v : hom[src[f] * n + tgt[g]]) {
      table[g * m + f] = v;
      if (check(g, f)) {
        rec(k + 1);
      }
    }
    table[g * m + f] = -1;
  };
  rec(0);
}

}  // namespace detail

/// All finite categories within the bounds, one per isomorphism class, in
/// canonical form with standard names. Ordered by object count, then arrow
/// count, then table key.
inline std::vector<FinCat> generate_corpus(CorpusParams const& p = {}) {
  std::vector<FinCat> out;
  for (int n = 0; n <= p.max_objects; ++n) {
    std::set<std::string> seen;
    std::vector<FinCat> level;
    std::vector<int> h(n * n, 0);
    std::function<void(int, int)> rec = [&](int k, int total) {
      if (k == n * n) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            for (int l = 0; l < n; ++l) {
              if (h[i * n + j] && h[j * n + l] && !h[i * n + l]) {
                return;
              }
            }
          }
        }
        if (!detail::hom_matrix_is_minimal(h, n)) {
          return;
        }
        detail::tables_for(h, n, [&](FinCat c) {
          FinCat canon = with_standard_names(canonical_form(c));
          if (seen.insert(canon.key()).second) {
            if (out.size() + level.size() >= p.max_size) {
              throw Error(ErrorKind::budget_exceeded,
                          "corpus exceeds " + std::to_string(p.max_size)
                              + " categories");
            }
            level.push_back(std::move(canon));
          }
        });
        return;
      }
      int i = k / n;
      int j = k % n;
      int lo = i == j ? 1 : 0;
      for (int v = lo; v <= p.max_hom; ++v) {
        // identities still to place
        int rest_diag = 0;
        for (int kk = k + 1; kk < n * n; ++kk) {
          rest_diag += (kk / n == kk % n) ? 1 : 0;
        }
        if (total + v + rest_diag > p.max_arrows) {
          break;
        }
        h[k] = v;
        rec(k + 1, total + v);
      }
      h[k] = 0;
    };
    rec(0, 0);
    std::sort(level.begin(), level.end(), [](auto const& a, auto const& b) {
      if (a.num_arrows() != b.num_arrows()) {
        return a.num_arrows() < b.num_arrows();
      }
      return a.key() < b.key();
    });
    for (auto& c : level) {
      out.push_back(std::move(c));
    }
  }
  return out;
}

/// Posets within the corpus (hom-sets of size at most one, no nontrivial
/// isomorphisms).
inline bool is_poset(FinCat const& c) {
  for (ObjId a = 0; a < static_cast<ObjId>(c.num_objects()); ++a) {
    for (ObjId b = 0; b < static_cast<ObjId>(c.num_objects()); ++b) {
      if (c.hom(a, b).size() > 1) {
        return false;
      }
      if (a != b && !c.hom(a, b).empty() && !c.hom(b, a).empty()) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace enrich
