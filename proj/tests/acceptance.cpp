// Acceptance run: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "enrich/catsem.hpp"
#include "enrich/concrete.hpp"
#include "enrich/corpus.hpp"
#include "enrich/freemod.hpp"
#include "enrich/isbell.hpp"
#include "enrich/iso.hpp"
#include "enrich/theories.hpp"
#include "enrich/variety.hpp"
#include "support.hpp"

using namespace enrich;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<CatPtr> const& corpus() {
  static std::vector<CatPtr> cats = [] {
    std::vector<CatPtr> v;
    for (auto& c : generate_corpus()) {
      v.push_back(make_cat(std::move(c)));
    }
    return v;
  }();
  return cats;
}

std::string describe(FinCat const& c) {
  return std::to_string(c.num_objects()) + " objects/"
         + std::to_string(c.num_arrows()) + " arrows";
}

Outcome groupoids() {
  auto th = groupoid_theory();
  std::size_t yes = 0;
  for (auto const& c : corpus()) {
    bool lib = is_model(bare_structure(c), th).holds;
    bool want = oracle::groupoid(*c);
    if (lib != want) {
      return {false, "disagreement on " + describe(*c)};
    }
    yes += want;
  }
  return {true, std::to_string(corpus().size()) + " categories, "
                    + std::to_string(yes) + " groupoids"};
}

Outcome discreteness() {
  auto th = discrete_theory();
  std::size_t yes = 0;
  for (auto const& c : corpus()) {
    bool lib = is_model(bare_structure(c), th).holds;
    bool want = oracle::discrete(*c);
    if (lib != want) {
      return {false, "disagreement on " + describe(*c)};
    }
    yes += want;
  }
  return {true, std::to_string(corpus().size()) + " categories, "
                    + std::to_string(yes) + " discrete"};
}

Outcome chosen_products() {
  auto cl = chosen_limits(make_cat(shapes::discrete(2)));
  std::size_t lattices = 0;
  std::vector<CatPtr> carriers;
  for (auto const& c : corpus()) {
    if (is_poset(*c)) {
      carriers.push_back(c);
    }
  }
  for (int n = 2; n <= 4; ++n) {
    carriers.push_back(make_cat(shapes::chain(n)));
  }
  for (auto const& c : carriers) {
    auto s = meet_structure(cl, c);
    if (!s) {
      continue;
    }
    ++lattices;
    auto r = is_model(*s, cl.theory);
    if (!r.holds) {
      return {false, "meet structure on " + describe(*c) + " fails "
                         + r.first_failure()->judgement};
    }
  }
  auto broken = broken_projection_structure(cl);
  auto r = is_model(broken, cl.theory);
  auto const* f = r.first_failure();
  if (r.holds || !f || f->witness.empty()) {
    return {false, "broken projection not rejected with a witness"};
  }
  return {true, std::to_string(lattices) + " meet structures hold all "
                    + std::to_string(cl.theory.judgements.size())
                    + " axioms; broken projection fails at " + f->witness};
}

struct OrdCase {
  SpacePtr x;
  std::vector<OrdTermPtr> terms;
};

Outcome ordered(Base base) {
  bool pos = base == Base::pos;
  auto one = std::make_shared<Space const>(
      pos ? oracle::poset_space({{true}})
          : make_metric({{Dist{}}}));
  auto d2 = std::make_shared<Space const>(
      pos ? oracle::poset_space({{true, false}, {false, true}})
          : make_metric({{Dist{}, Dist::infinity()}, {Dist::infinity(), Dist{}}}));
  auto lang = std::make_shared<OrdLanguage const>(
      OrdLanguage{"L", base, {{"f", one}, {"m", d2}}});

  std::vector<SpacePtr> arities{d2, std::make_shared<Space const>(
                                        pos ? chain_poset(2)
                                            : two_points(Rational(1)))};
  std::vector<OrdCase> cases;
  for (auto const& x : arities) {
    auto v0 = ord_var(x, 0);
    auto v1 = ord_var(x, 1);
    auto f = [&](OrdTermPtr a) { return ord_app(*lang, "f", x, {a}); };
    auto m = [&](OrdTermPtr a, OrdTermPtr b) {
      return ord_app(*lang, "m", x, {a, b});
    };
    cases.push_back({x, {v0, v1, f(v0), f(v1), m(v0, v1), m(v1, v0), f(f(v0)),
                         m(f(v0), v1), f(m(v0, v1)), m(v0, f(v1)),
                         m(m(v0, v1), v0), m(v1, v1)}});
  }

  std::vector<Space> carriers;
  if (pos) {
    for (int n = 1; n <= 4; ++n) {
      for (auto const& le : oracle::posets(n)) {
        carriers.push_back(oracle::poset_space(le));
      }
    }
  } else {
    std::vector<Dist> vals{Dist{false, Rational(1, 2)}, Dist{false, Rational(1)},
                           Dist{false, Rational(2)}, Dist::infinity()};
    for (int n = 1; n <= 3; ++n) {
      for (auto& s : oracle::metrics(n, vals)) {
        carriers.push_back(s);
      }
    }
    for (auto& s : oracle::metrics(4, {Dist{false, Rational(1)},
                                       Dist{false, Rational(2)}})) {
      carriers.push_back(s);
    }
  }
  std::vector<Rational> eps{Rational(0), Rational(1, 2), Rational(1),
                            Rational(3, 2), Rational(2)};

  std::size_t structures = 0;
  std::size_t checks = 0;
  for (auto const& sp : carriers) {
    auto a = std::make_shared<Space const>(sp);
    auto h1 = hom_space(*one, *a);
    auto h2 = hom_space(*d2, *a);
    std::map<std::string, std::vector<std::vector<int>>> args{
        {"f", h1.maps}, {"m", h2.maps}};
    auto selfmaps = oracle::valuations(*a, *a);
    if (!pos && a->size() == 4) {
      std::erase_if(selfmaps, [](std::vector<int> const& f) {
        bool constant = std::all_of(f.begin(), f.end(), [&](int v) { return v == f[0]; });
        bool identity = true;
        for (std::size_t i = 0; i < f.size(); ++i) {
          identity = identity && f[i] == static_cast<int>(i);
        }
        return !constant && !identity;
      });
    }
    std::vector<std::vector<int>> binaries;
    std::vector<int> first, second, low;
    for (auto const& p : h2.maps) {
      first.push_back(p[0]);
      second.push_back(p[1]);
      low.push_back(0);
    }
    binaries = {first, second, low};
    std::vector<std::pair<std::vector<int>, std::vector<int>>> tables;
    for (auto const& f : selfmaps) {
      tables.push_back({f, first});
    }
    for (auto const& m : binaries) {
      tables.push_back({selfmaps.front(), m});
    }
    for (auto const& [ft, mt] : tables) {
      OrdStructure s{"A", lang, a, {{"f", {}}, {"m", mt}}};
      for (auto const& p : h1.maps) {
        s.table["f"].push_back(ft[p[0]]);
      }
      if (!ord_structure_violation(s).empty()) {
        continue;
      }
      ++structures;
      for (auto const& c : cases) {
        auto vals = oracle::valuations(*c.x, *a);
        for (auto const& t : c.terms) {
          for (auto const& u : c.terms) {
            std::vector<std::pair<int, int>> pts;
            for (auto const& v : vals) {
              pts.emplace_back(oracle::evaluate(*t, v, args, s.table),
                               oracle::evaluate(*u, v, args, s.table));
            }
            if (pos) {
              bool want = std::all_of(pts.begin(), pts.end(), [&](auto const& q) {
                return static_cast<bool>(a->le[q.first][q.second]);
              });
              ++checks;
              if (check_inequality(t, u, s).holds() != want) {
                return {false, render(*t) + " <= " + render(*u)
                                   + " disagrees on a poset of size "
                                   + std::to_string(a->size())};
              }
            } else {
              for (auto const& e : eps) {
                Dist bound{false, e};
                bool want = std::all_of(pts.begin(), pts.end(), [&](auto const& q) {
                  return a->d[q.first][q.second] <= bound;
                });
                ++checks;
                if (check_quantitative(t, u, e, s).holds() != want) {
                  return {false, render(*t) + " =_eps " + render(*u)
                                     + " disagrees on a metric of size "
                                     + std::to_string(a->size())};
                }
              }
            }
          }
        }
      }
    }
  }
  return {true, std::to_string(carriers.size()) + " carriers, "
                    + std::to_string(structures) + " structures, "
                    + std::to_string(checks) + " judgements"};
}

Outcome pos_and_met() {
  auto p = ordered(Base::pos);
  if (!p.pass) {
    return {false, "Pos: " + p.detail};
  }
  auto m = ordered(Base::met);
  if (!m.pass) {
    return {false, "Met: " + m.detail};
  }
  return {true, "Pos: " + p.detail + "; Met: " + m.detail};
}

Outcome factorization() {
  std::vector<CatPtr> probes = corpus();
  probes.push_back(make_cat(oracle::finite_sets(3)));
  std::mt19937 rng(12345);
  int n = 0;
  int epis = 0;
  while (n < 200) {
    auto const& x = corpus()[rng() % corpus().size()];
    auto const& b = corpus()[rng() % corpus().size()];
    auto fs = enumerate_functors(x, b);
    if (fs.empty()) {
      continue;
    }
    auto const& f = fs[rng() % fs.size()];
    ++n;
    auto fac = factorize(f);
    if (!oracle::composes_to(fac.m, fac.e, f)) {
      return {false, "m.e != f for a functor into " + describe(*b)};
    }
    if (!is_epi(fac.e) || !is_strong_mono(fac.m)) {
      return {false, "factor classes wrong for a functor into " + describe(*b)};
    }
    bool epi = is_epi(f);
    if (epi == oracle::cancellation_fails(f, probes)) {
      return {false, std::string("is_epi = ") + (epi ? "true" : "false")
                         + " contradicts cancellation for a functor into "
                         + describe(*b)};
    }
    epis += epi;
  }
  return {true, "200 functors, " + std::to_string(epis) + " epi, "
                    + std::to_string(probes.size()) + " probe codomains"};
}

ArrId arrow_at(Evaluator& ev, Interp const& v, int h) {
  return ev.arrow_cat().arrow_of_object[v.obj[h]];
}

Outcome derived_laws() {
  using namespace std_shapes;
  auto s12 = var_arr(three(), "u12");
  auto s01 = var_arr(three(), "u01");
  auto comp = compose2(s12, s01);
  auto u = var_arr(two(), kTwoU);
  auto unit_law = compose2(u, identity2(endpoint(u, 0)));
  std::vector<TermPtr> arrows{var_arr(two(), kTwoU), var_arr(iso(), "u"),
                              var_arr(iso(), "v"), s01, s12,
                              var_arr(three(), "u02")};
  std::vector<TermPtr> objects{var_obj(two(), 0), var_obj(two(), 1),
                               var_obj(three(), 2)};
  std::size_t checks = 0;
  for (auto const& c : corpus()) {
    auto st = bare_structure(c);
    Evaluator ev(st);
    auto fail = [&](std::string const& what) {
      return Outcome{false, what + " on " + describe(*c)};
    };
    {
      auto const& l = ev.eval(comp);
      auto const& s = ev.eval(s12);
      auto const& t = ev.eval(s01);
      if (!l.ok()) {
        return fail("composite not interpretable");
      }
      for (std::size_t h = 0; h < l.value->obj.size(); ++h) {
        ++checks;
        if (arrow_at(ev, *l.value, h)
            != c->comp(arrow_at(ev, *s.value, h), arrow_at(ev, *t.value, h))) {
          return fail("vertical composite");
        }
      }
    }
    for (auto const& sigma : arrows) {
      auto const& s = ev.eval(sigma);
      auto const& inv = ev.eval(invert2(sigma));
      bool all = true;
      for (std::size_t h = 0; h < s.value->obj.size(); ++h) {
        all = all && oracle::invertible(*c, arrow_at(ev, *s.value, h));
      }
      ++checks;
      if (inv.ok() != all) {
        return fail("inverse interpretability");
      }
      for (std::size_t h = 0; inv.ok() && h < s.value->obj.size(); ++h) {
        ++checks;
        ArrId a = arrow_at(ev, *s.value, h);
        ArrId b = arrow_at(ev, *inv.value, h);
        if (c->compose(b, a) != c->identity(c->source(a))) {
          return fail("inverse component");
        }
      }
      for (int i = 0; i < 2; ++i) {
        auto const& e = ev.eval(endpoint(sigma, i));
        for (std::size_t h = 0; h < s.value->obj.size(); ++h) {
          ++checks;
          ArrId a = arrow_at(ev, *s.value, h);
          if (e.value->obj[h] != (i == 0 ? c->source(a) : c->target(a))) {
            return fail("endpoint");
          }
        }
      }
    }
    for (auto const& t : objects) {
      auto const& v = ev.eval(t);
      auto const& id = ev.eval(identity2(t));
      for (std::size_t h = 0; h < v.value->obj.size(); ++h) {
        ++checks;
        if (arrow_at(ev, *id.value, h) != c->identity(v.value->obj[h])) {
          return fail("identity 2-term");
        }
      }
    }
    for (auto const& tau : {arrows[0], unit_law}) {
      for (ArrId h : {2, 5, 6, 7, 8}) {
        ++checks;
        auto const& a = ev.eval(eliminate_power2(tau, h));
        auto o = direct_power2_oracle(tau, h, ev);
        if (a.ok() != o.ok() || (a.ok() && !(*a.value == *o.value))) {
          return fail("power elimination case " + std::to_string(h));
        }
      }
    }
  }
  return {true, std::to_string(corpus().size()) + " structures, "
                    + std::to_string(checks) + " checks"};
}

std::string summary(ClosureReport const& r) {
  std::ostringstream os;
  os << r.theory << " (" << r.models << " models):";
  for (auto const& e : r.entries) {
    os << " " << e.property << "=" << to_string(e.status);
    if (e.status != ClosureStatus::skipped) {
      os << "/" << e.checked;
    }
    if (e.over_budget) {
      os << " (" << e.over_budget << " over budget)";
    }
  }
  return os.str();
}

bool clean(ClosureReport const& r, std::string& why) {
  for (auto const& e : r.entries) {
    if (e.status == ClosureStatus::fail) {
      why = r.theory + " " + e.property + ": " + e.witness;
      return false;
    }
    if (e.property == "filtered colimits" && e.status != ClosureStatus::skipped) {
      why = "filtered colimits not reported as skipped";
      return false;
    }
  }
  return true;
}

Outcome closure() {
  std::vector<CatStructure> small, all;
  for (auto const& c : corpus()) {
    all.push_back(bare_structure(c));
    if (c->num_objects() <= 2) {
      small.push_back(bare_structure(c));
    }
  }
  std::vector<std::string> lines;
  std::string why;
  for (auto const& th : {groupoid_theory(), discrete_theory()}) {
    ClosureParams pp;
    pp.subobjects = false;
    pp.quotients = false;
    pp.lim = Limits{20000, 200000};
    auto a = closure_suite(th, small, pp);
    ClosureParams pq;
    pq.products = false;
    pq.powers = false;
    auto b = closure_suite(th, all, pq);
    if (!clean(a, why) || !clean(b, why)) {
      return {false, why};
    }
    lines.push_back(summary(a));
    lines.push_back(summary(b));
  }
  auto cl = chosen_limits(make_cat(shapes::discrete(2)));
  std::vector<CatStructure> lat;
  for (auto const& c : corpus()) {
    if (is_poset(*c)) {
      if (auto s = meet_structure(cl, c)) {
        lat.push_back(*s);
      }
    }
  }
  for (int n = 2; n <= 4; ++n) {
    lat.push_back(*meet_structure(cl, make_cat(shapes::chain(n))));
  }
  auto r = closure_suite(cl.theory, lat);
  if (!clean(r, why)) {
    return {false, why};
  }
  lines.push_back(summary(r));
  std::string d;
  for (auto const& l : lines) {
    d += (d.empty() ? "" : "; ") + l;
  }
  return {true, d};
}

Outcome free_structures() {
  auto l0 = empty_language();
  auto p0 = default_probes(l0);
  auto lc = std::make_shared<Language2>("const");
  lc->add_op("c", std_shapes::empty());
  LangPtr l1 = lc;
  auto p1 = default_probes(l1);
  std::size_t empty_n = 0, const_n = 0, universal = 0;
  for (auto const& x : corpus()) {
    ProbeSet q0 = p0;
    q0.structures.push_back(bare_structure(x));
    auto f = build_free(l0, x, q0, {1});
    if (!isomorphic(x, f.carrier) || !is_isomorphism(f.eta)) {
      return {false, "empty language: free structure on " + describe(*x)};
    }
    ++empty_n;
    bool small = x->num_objects() <= 2;
    if (!small && x->num_arrows() > 5) {
      continue;
    }
    ProbeSet q1 = p1;
    for_each_structure(l1, x, [&](CatStructure const& s) {
      q1.structures.push_back(s);
      return true;
    });
    auto g = build_free(l1, x, q1, {2});
    auto xp = make_cat(coproduct(std::vector<FinCat>{*x, *std_shapes::one()}));
    if (!isomorphic(xp, g.carrier)) {
      return {false, "constant language: free structure on " + describe(*x)};
    }
    ++const_n;
    if (!small) {
      continue;
    }
    for (auto const& [fs, probes] : {std::pair{&f, &p0}, std::pair{&g, &p1}}) {
      for (auto const& a : probes->structures) {
        for (auto const& k : enumerate_functors(x, a.carrier)) {
          ++universal;
          auto r = universal_property_check(*fs, a, k);
          if (!r.ok()) {
            return {false, "universal property on " + describe(*x) + ": "
                               + r.failure};
          }
        }
      }
    }
  }
  return {true, std::to_string(empty_n) + " carriers (empty language), "
                    + std::to_string(const_n) + " (constant), "
                    + std::to_string(universal) + " universal property checks"};
}

// Carrier-level view of an interpretation: objects/arrows for a 1-term,
// arrows and component pairs for a 2-term.
struct Concrete {
  std::vector<int> obj;
  std::vector<std::vector<int>> arr;
};

Concrete concrete(Evaluator& ev, Interp const& v) {
  Concrete c;
  auto const& ac = *ev.arrow_cat().fc;
  for (int o : v.obj) {
    c.obj.push_back(v.dim == 1 ? o : ev.arrow_cat().arrow_of_object[o]);
  }
  for (int a : v.arr) {
    if (v.dim == 1) {
      c.arr.push_back({a});
    } else {
      auto comps = ac.components(a);
      c.arr.push_back({comps.begin(), comps.end()});
    }
  }
  return c;
}

// Pushes a carrier-level value along a functor.
Concrete along(FinFunctor const& p, int dim, Concrete c) {
  for (int& o : c.obj) {
    o = dim == 1 ? p.obj[o] : p.arr[o];
  }
  for (auto& a : c.arr) {
    for (int& x : a) {
      x = p.arr[x];
    }
  }
  return c;
}

bool same(Concrete const& a, Concrete const& b) {
  return a.obj == b.obj && a.arr == b.arr;
}

Outcome limits_of_terms() {
  auto lang = std::make_shared<Language2>("L");
  lang->add_op("f", std_shapes::one());
  lang->add_op("g", std_shapes::two());
  LangPtr l = lang;
  std::vector<TermPtr> battery;
  for (auto const& x : {std_shapes::one(), std_shapes::two(), std_shapes::iso()}) {
    auto ts = enumerate_terms(l, x, 2);
    battery.insert(battery.end(), ts.begin(), ts.begin() + std::min<std::size_t>(ts.size(), 40));
  }
  auto ts = enumerate_terms(empty_language(), std_shapes::three(), 2);
  battery.insert(battery.end(), ts.begin(), ts.begin() + std::min<std::size_t>(ts.size(), 40));
  std::vector<CatStructure> bases;
  for (auto const& c : corpus()) {
    if (c->num_objects() == 0 || c->num_arrows() > 4) {
      continue;
    }
    std::size_t taken = 0;
    for_each_structure(l, c, [&](CatStructure const& s) {
      if (taken++ % 5 == 0) {
        bases.push_back(s);
      }
      return taken < 15;
    });
  }
  std::vector<CatPtr> zs{std_shapes::one(), std_shapes::two(),
                         make_cat(shapes::discrete(2))};
  std::size_t checks = 0;
  auto compare = [&](Evaluator& big, std::vector<std::pair<FinFunctor, Evaluator*>> const& legs,
                     TermPtr const& t, std::string const& what) -> std::optional<Outcome> {
    auto const& r = big.eval(t);
    bool all = true;
    for (auto const& [p, ev] : legs) {
      all = all && ev->eval(t).ok();
    }
    ++checks;
    if (r.ok() != all) {
      return Outcome{false, what + ": interpretability differs for " + render(t)};
    }
    if (!r.ok()) {
      return std::nullopt;
    }
    auto whole = concrete(big, *r.value);
    auto px = big.power_of(t->arity);
    for (auto const& [p, ev] : legs) {
      auto ax = ev->power_of(t->arity);
      auto m = postcompose_map(p, *px, *ax);
      auto part = concrete(*ev, *ev->eval(t).value);
      Concrete pulled;
      for (int h : m.obj) {
        pulled.obj.push_back(part.obj[h]);
      }
      for (int e : m.arr) {
        pulled.arr.push_back(part.arr[e]);
      }
      ++checks;
      if (!same(along(p, t->dim, whole), pulled)) {
        return Outcome{false, what + ": interpretation differs for " + render(t)};
      }
    }
    return std::nullopt;
  };
  for (std::size_t i = 0; i < bases.size(); ++i) {
    Evaluator ea(bases[i]);
    auto const& b = bases[(i * 5 + 3) % bases.size()];
    Evaluator eb(b);
    auto prod = product_structure(bases[i], b);
    auto [pa, pb] = product_projections(bases[i].carrier, b.carrier, prod.carrier);
    Evaluator ep(prod);
    for (auto const& t : battery) {
      if (auto o = compare(ep, {{pa, &ea}, {pb, &eb}}, t, "product")) {
        return *o;
      }
    }
    for (auto const& z : zs) {
      auto pw = power_structure(bases[i], z);
      Evaluator ew(pw);
      auto az = power(z, bases[i].carrier);
      std::vector<std::pair<FinFunctor, Evaluator*>> legs;
      for (ObjId o = 0; o < static_cast<ObjId>(z->num_objects()); ++o) {
        legs.push_back({evaluation_functor(*az, pw.carrier, bases[i].carrier, o), &ea});
      }
      for (auto const& t : battery) {
        if (auto o = compare(ew, legs, t, "power")) {
          return *o;
        }
      }
    }
  }
  if (battery.size() < 50) {
    return {false, "battery has only " + std::to_string(battery.size()) + " terms"};
  }
  return {true, std::to_string(battery.size()) + " terms over "
                    + std::to_string(bases.size()) + " structures, "
                    + std::to_string(checks) + " checks"};
}

}  // namespace

int main() {
  std::vector<std::function<Outcome()>> criteria{
      groupoids, discreteness, chosen_products, pos_and_met, factorization,
      derived_laws, closure, free_structures, limits_of_terms};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (std::exception const& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char t[32];
    std::snprintf(t, sizeof t, " (%.1fs)", secs);
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL")
              << ": " << o.detail << t << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
