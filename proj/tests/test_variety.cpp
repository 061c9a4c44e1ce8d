#include <catch_amalgamated.hpp>

#include "enrich/corpus.hpp"
#include "enrich/iso.hpp"
#include "enrich/theories.hpp"
#include "enrich/variety.hpp"

using namespace enrich;
using namespace enrich::std_shapes;

namespace {

std::vector<CatStructure> bare_corpus(int max_objects) {
  CorpusParams cp;
  cp.max_objects = max_objects;
  std::vector<CatStructure> out;
  for (auto& c : generate_corpus(cp)) {
    out.push_back(bare_structure(make_cat(std::move(c))));
  }
  return out;
}

ClosureEntry const& entry(ClosureReport const& r, std::string const& name) {
  for (auto const& e : r.entries) {
    if (e.property == name) {
      return e;
    }
  }
  FAIL("no entry " << name);
  return r.entries.front();
}

}  // namespace

TEST_CASE("power by the point is the structure itself") {
  for (auto const& a : bare_corpus(2)) {
    auto p = power_structure(a, one());
    REQUIRE(isomorphic(p.carrier, a.carrier));
  }
  auto cl = chosen_limits(make_cat(shapes::discrete(2)));
  auto m = *meet_structure(cl, three());
  auto p = power_structure(m, one());
  CHECK(isomorphic(p.carrier, three()));
  CHECK(is_model(p, cl.theory).holds);
}

TEST_CASE("products of groupoids") {
  auto th = groupoid_theory();
  auto a = bare_structure(iso());
  auto b = bare_structure(make_cat(shapes::discrete(2)));
  auto ab = product_structure(a, b);
  CHECK(ab.carrier->num_objects() == 4);
  CHECK(ab.carrier->num_arrows() == 8);
  CHECK(is_model(ab, th).holds);
  auto [pa, pb] = product_projections(a.carrier, b.carrier, ab.carrier);
  CHECK(pa.violation().empty());
  CHECK(pb.violation().empty());
  CHECK(check_structure_morphism(pa, ab, a).ok);
  CHECK(check_structure_morphism(pb, ab, b).ok);
  auto bad = product_structure(a, bare_structure(two()));
  CHECK_FALSE(is_model(bad, th).holds);
}

TEST_CASE("powers of chosen meets") {
  auto cl = chosen_limits(make_cat(shapes::discrete(2)));
  auto m = *meet_structure(cl, three());
  for (auto const& z : {two(), make_cat(shapes::discrete(2)), iso()}) {
    auto p = power_structure(m, z);
    REQUIRE(structure_violation(p).empty());
    CHECK(is_model(p, cl.theory).holds);
    auto az = power(z, m.carrier);
    for (ObjId o = 0; o < static_cast<ObjId>(z->num_objects()); ++o) {
      auto ev = evaluation_functor(*az, p.carrier, m.carrier, o);
      CHECK(check_structure_morphism(ev, p, m).ok);
    }
  }
}

TEST_CASE("strong subobjects") {
  auto subs = enumerate_strong_subobjects(bare_structure(iso()));
  std::size_t points = 0;
  for (auto const& s : subs) {
    REQUIRE(is_strong_mono(s.inclusion));
    points += s.structure.carrier->num_objects() == 1;
  }
  CHECK(points == 2);
  auto cl = chosen_limits(make_cat(shapes::discrete(2)));
  auto m = *meet_structure(cl, make_cat(product(*two(), *two())));
  for (auto const& s : enumerate_strong_subobjects(m)) {
    REQUIRE(check_structure_morphism(s.inclusion, s.structure, m).ok);
    REQUIRE(is_model(s.structure, cl.theory).holds);
  }
}

TEST_CASE("split quotients of the free isomorphism") {
  auto qs = find_split_quotients(bare_structure(iso()));
  bool to_point = false;
  for (auto const& q : qs) {
    REQUIRE(q.e.violation().empty());
    REQUIRE(q.r.violation().empty());
    auto er = compose(q.e, q.r);
    REQUIRE(er == identity_functor(q.e.cod));
    to_point = to_point || q.structure.carrier->num_objects() == 1;
  }
  CHECK(to_point);
}

TEST_CASE("closure suite on the groupoid and discrete theories") {
  auto corpus = bare_corpus(2);
  ClosureParams p;
  p.shapes = {one(), two(), make_cat(shapes::discrete(2))};
  for (auto const& th : {groupoid_theory(), discrete_theory()}) {
    auto r = closure_suite(th, corpus, p);
    INFO(th.name);
    CHECK(r.passed());
    CHECK(r.models > 0);
    CHECK(entry(r, "products").status == ClosureStatus::pass);
    CHECK(entry(r, "powers").status == ClosureStatus::pass);
    CHECK(entry(r, "filtered colimits").status == ClosureStatus::skipped);
  }
}

TEST_CASE("a broken product construction is caught") {
  auto corpus = bare_corpus(1);
  ClosureParams p;
  p.powers = false;
  p.subobjects = false;
  p.quotients = false;
  p.product = [](CatStructure const& a, CatStructure const&) {
    auto s = a;
    s.carrier = two();
    return s;
  };
  auto r = closure_suite(groupoid_theory(), corpus, p);
  CHECK_FALSE(r.passed());
  auto const& e = entry(r, "products");
  CHECK(e.status == ClosureStatus::fail);
  CHECK_FALSE(e.witness.empty());
}
