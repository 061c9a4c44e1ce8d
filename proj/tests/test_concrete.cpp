#include <catch_amalgamated.hpp>

#include "enrich/concrete.hpp"
#include "support.hpp"

using namespace enrich;

namespace {

using Lang = std::shared_ptr<OrdLanguage const>;

SpacePtr share(Space s) { return std::make_shared<Space const>(std::move(s)); }

Dist d(long long n, long long k = 1) { return Dist{false, Rational(n, k)}; }

// m : 2 (discrete), f : 1
Lang language(Base b) {
  Space pair = b == Base::met ? make_metric({{Dist{}, Dist::infinity()},
                                             {Dist::infinity(), Dist{}}})
                              : make_poset(2, {});
  Space point = b == Base::met ? make_metric({{Dist{}}}) : make_poset(1, {});
  return std::make_shared<OrdLanguage const>(
      OrdLanguage{"L", b, {{"m", share(pair)}, {"f", share(point)}}});
}

// Tables from functions of the argument tuple, in hom_space order.
OrdStructure structure(Lang l, SpacePtr a,
                       std::function<int(std::vector<int> const&)> m,
                       std::function<int(int)> f) {
  OrdStructure s{"A", l, a, {}};
  for (auto const& x : hom_space(*l->find("m")->arity, *a).maps) {
    s.table["m"].push_back(m(x));
  }
  for (auto const& x : hom_space(*l->find("f")->arity, *a).maps) {
    s.table["f"].push_back(f(x[0]));
  }
  return s;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (Error const& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::invalid_argument;
}

}  // namespace

TEST_CASE("spaces validate") {
  CHECK(kind_of([] { make_poset(2, {{0, 1}, {1, 0}}); })
        == ErrorKind::invalid_argument);
  CHECK(kind_of([] {
          make_metric({{Dist{}, d(1), d(3)}, {d(1), Dist{}, d(1)},
                       {d(3), d(1), Dist{}}});
        }) == ErrorKind::invalid_argument);
  CHECK(kind_of([] { make_metric({{Dist{}, d(1)}, {d(2), Dist{}}}); })
        == ErrorKind::invalid_argument);
  CHECK(kind_of([] { two_points(Rational(0)); }) == ErrorKind::invalid_argument);
  CHECK(chain_poset(3).leq(0, 2));
  CHECK_FALSE(chain_poset(3).leq(2, 0));
  CHECK(make_poset(3, {{0, 1}, {1, 2}}).leq(0, 2));
}

TEST_CASE("internal homs") {
  auto c2 = chain_poset(2);
  auto h = hom_space(c2, c2);
  CHECK(h.maps.size() == 3);
  CHECK(h.space.leq(h.find({0, 0}), h.find({0, 1})));
  CHECK(h.find({1, 0}) == -1);
  auto t = two_points(Rational(1));
  auto hm = hom_space(t, t);
  CHECK(hm.maps.size() == 4);
  CHECK(hm.space.dist(hm.find({0, 1}), hm.find({1, 0})) == d(1));
  auto far = two_points(Rational(1, 2));
  CHECK(hom_space(far, t).maps.size() == 2);
}

TEST_CASE("minimum on a chain is a lower bound and not an upper bound") {
  auto l = language(Base::pos);
  auto a = share(chain_poset(3));
  auto s = structure(l, a, [](auto const& x) { return std::min(x[0], x[1]); },
                     [](int x) { return x; });
  REQUIRE(ord_structure_violation(s).empty());
  auto x = share(make_poset(2, {}));
  auto v0 = ord_var(x, 0);
  auto v1 = ord_var(x, 1);
  auto m = ord_app(*l, "m", x, {v0, v1});
  CHECK(check_inequality(m, v0, s).holds());
  CHECK(check_inequality(m, v1, s).holds());
  auto up = check_inequality(v0, m, s);
  CHECK(up.status == Status::fails);
  CHECK_FALSE(up.witness.empty());
  CHECK(check_equation(ord_app(*l, "m", x, {v0, v0}), v0, s).holds());
  CHECK(check_equation(m, ord_app(*l, "m", x, {v1, v0}), s).holds());
}

TEST_CASE("non-monotone tables are rejected") {
  auto l = language(Base::pos);
  auto a = share(chain_poset(2));
  auto s = structure(l, a, [](auto const& x) { return x[0]; },
                     [](int x) { return 1 - x; });
  auto v = ord_structure_violation(s);
  CHECK(v.find("f") == 0);
  auto short_table = s;
  short_table.table["m"].pop_back();
  CHECK_FALSE(ord_structure_violation(short_table).empty());
}

TEST_CASE("expansive tables are rejected") {
  auto l = language(Base::met);
  auto a = share(make_metric({{Dist{}, d(1), d(2)}, {d(1), Dist{}, d(1)},
                              {d(2), d(1), Dist{}}}));
  // f swaps the ends
  auto s = structure(l, a, [](auto const& x) { return x[0]; },
                     [](int x) { return x == 1 ? 1 : 2 - x; });
  CHECK(ord_structure_violation(s).empty());
  auto wide = std::make_shared<OrdLanguage const>(OrdLanguage{
      "W", Base::met, {{"g", share(two_points(Rational(1)))}}});
  OrdStructure g{"G", wide, a, {}};
  for (auto const& p : hom_space(two_points(Rational(1)), *a).maps) {
    g.table["g"].push_back(p[0] == p[1] ? p[0] : (p[0] < p[1] ? 0 : 2));
  }
  CHECK_FALSE(ord_structure_violation(g).empty());
}

TEST_CASE("two points at distance one") {
  auto l = language(Base::met);
  auto a = share(two_points(Rational(1)));
  auto s = structure(l, a, [](auto const& x) { return x[0]; },
                     [](int x) { return x; });
  auto x = share(two_points(Rational(1)));
  auto v0 = ord_var(x, 0);
  auto v1 = ord_var(x, 1);
  CHECK(check_quantitative(v0, v1, Rational(1), s).holds());
  CHECK(check_quantitative(v0, v1, Rational(2), s).holds());
  CHECK(check_quantitative(v0, v1, Rational(1, 2), s).status == Status::fails);
  CHECK(check_quantitative(v0, v1, Rational(0), s).status == Status::fails);
  CHECK(check_quantitative(v0, v0, Rational(0), s).holds());
  auto m = ord_app(*l, "m", x, {v0, v1});
  CHECK(check_quantitative(m, v0, Rational(0), s).holds());
  CHECK(check_quantitative(m, v1, Rational(1, 2), s).status == Status::fails);
}

TEST_CASE("quantitative equations are monotone in epsilon") {
  std::vector<Dist> vals{d(1, 2), d(1), d(2), Dist::infinity()};
  std::vector<Rational> eps{Rational(0), Rational(1, 2), Rational(1),
                            Rational(3, 2), Rational(2), Rational(5)};
  auto l = language(Base::met);
  auto x = share(two_points(Rational(1)));
  auto v0 = ord_var(x, 0);
  auto v1 = ord_var(x, 1);
  std::vector<std::pair<OrdTermPtr, OrdTermPtr>> pairs{
      {v0, v1},
      {ord_app(*l, "f", x, {v0}), v0},
      {ord_app(*l, "m", x, {v0, v1}), ord_app(*l, "m", x, {v1, v0})},
      {ord_app(*l, "f", x, {ord_app(*l, "f", x, {v1})}), v0}};
  std::size_t checked = 0;
  for (int n = 1; n <= 3; ++n) {
    for (auto const& sp : oracle::metrics(n, vals)) {
      auto a = share(sp);
      auto maps = oracle::valuations(*a, *a);
      for (auto const& fmap : maps) {
        auto s = structure(l, a, [](auto const& p) { return p[0]; },
                           [&](int p) { return fmap[p]; });
        for (auto const& [t, u] : pairs) {
          bool before = false;
          for (auto const& e : eps) {
            bool now = check_quantitative(t, u, e, s).holds();
            REQUIRE((!before || now));
            before = now;
            ++checked;
          }
          REQUIRE(check_quantitative(t, u, Rational(0), s).holds()
                  == check_equation(t, u, s).holds());
        }
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("inequalities agree with direct evaluation on small posets") {
  auto l = language(Base::pos);
  auto x = share(make_poset(2, {}));
  auto v0 = ord_var(x, 0);
  auto v1 = ord_var(x, 1);
  std::vector<OrdTermPtr> terms{v0, v1, ord_app(*l, "m", x, {v0, v1}),
                                ord_app(*l, "f", x, {v0}),
                                ord_app(*l, "m", x, {ord_app(*l, "f", x, {v1}), v0})};
  for (int n = 1; n <= 3; ++n) {
    for (auto const& le : oracle::posets(n)) {
      auto a = share(oracle::poset_space(le));
      auto pairs_ok = oracle::valuations(*x, *a);
      for (auto const& fmap : oracle::valuations(*a, *a)) {
        auto s = structure(l, a, [](auto const& p) { return p[1]; },
                           [&](int p) { return fmap[p]; });
        std::map<std::string, std::vector<std::vector<int>>> args{
            {"m", hom_space(*l->find("m")->arity, *a).maps},
            {"f", hom_space(*l->find("f")->arity, *a).maps}};
        for (auto const& t : terms) {
          for (auto const& u : terms) {
            bool want = true;
            for (auto const& val : pairs_ok) {
              want = want && a->leq(oracle::evaluate(*t, val, args, s.table),
                                    oracle::evaluate(*u, val, args, s.table));
            }
            REQUIRE(check_inequality(t, u, s).holds() == want);
          }
        }
      }
    }
  }
}

TEST_CASE("term formation errors") {
  auto l = language(Base::pos);
  auto x = share(make_poset(2, {}));
  CHECK(kind_of([&] { ord_app(*l, "g", x, {}); }) == ErrorKind::unknown_symbol);
  CHECK(kind_of([&] { ord_app(*l, "m", x, {ord_var(x, 0)}); })
        == ErrorKind::family_index_mismatch);
  CHECK(kind_of([&] {
          ord_app(*l, "m", x, {ord_var(x, 0), ord_var(share(chain_poset(3)), 0)});
        }) == ErrorKind::arity_mismatch);
  CHECK(kind_of([&] { ord_var(x, 2); }) == ErrorKind::unknown_object);
}

TEST_CASE("products and powers of structures") {
  auto l = language(Base::pos);
  auto a = share(chain_poset(2));
  auto b = share(chain_poset(3));
  auto sa = structure(l, a, [](auto const& p) { return std::min(p[0], p[1]); },
                      [](int p) { return p; });
  auto sb = structure(l, b, [](auto const& p) { return std::min(p[0], p[1]); },
                      [](int p) { return std::min(p + 1, 2); });
  auto prod = ord_product_structure(sa, sb);
  CHECK(prod.carrier->size() == 6);
  REQUIRE(ord_structure_violation(prod).empty());
  auto z = chain_poset(2);
  auto pow = ord_power_structure(sb, z);
  CHECK(pow.carrier->size() == 6);
  REQUIRE(ord_structure_violation(pow).empty());
  auto x = share(make_poset(2, {}));
  auto v0 = ord_var(x, 0);
  auto v1 = ord_var(x, 1);
  auto m = ord_app(*l, "m", x, {v0, v1});
  auto fv = ord_app(*l, "f", x, {v0});
  for (auto const* s : {&prod, &pow}) {
    CHECK(check_inequality(m, v0, *s).holds());
    CHECK(check_inequality(v0, fv, *s).holds());
    CHECK_FALSE(check_inequality(v0, m, *s).holds());
  }
  CHECK_FALSE(check_equation(fv, v0, prod).holds());
  CHECK(check_equation(fv, v0, sa).holds());
  CHECK(strong_subobject_check_pos(chain_poset(2), chain_poset(3), {0, 2}));
  CHECK_FALSE(strong_subobject_check_pos(make_poset(2, {}), chain_poset(2),
                                         {0, 1}));
  CHECK(isometry_check_met(two_points(Rational(1)),
                           make_metric({{Dist{}, d(1), d(2)},
                                        {d(1), Dist{}, d(1)},
                                        {d(2), d(1), Dist{}}}),
                           {0, 1}));
}
