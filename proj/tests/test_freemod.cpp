#include <catch_amalgamated.hpp>

#include "enrich/freemod.hpp"
#include "enrich/iso.hpp"
#include "enrich/theories.hpp"

using namespace enrich;
using namespace enrich::std_shapes;

namespace {

constexpr ArrId kU = 2;

LangPtr constant_language() {
  auto l = std::make_shared<Language2>("const");
  l->add_op("c", empty());
  return l;
}

ProbeSet const& bare_probes() {
  static ProbeSet p = default_probes(empty_language());
  return p;
}

}  // namespace

TEST_CASE("depth one terms are the variables") {
  CHECK(enumerate_terms(empty_language(), one(), 1).size() == 2);
  CHECK(enumerate_terms(empty_language(), two(), 1).size() == 5);
  CHECK(enumerate_terms(empty_language(), empty(), 1).empty());
  CHECK(enumerate_terms(constant_language(), empty(), 1).empty());
  CHECK(enumerate_terms(constant_language(), empty(), 2).size() == 1);
  CHECK(enumerate_terms(constant_language(), empty(), 3).size() == 2);
}

TEST_CASE("enumerated terms are pairwise distinct and well typed") {
  auto l = constant_language();
  auto ts = enumerate_terms(l, two(), 2);
  CHECK(ts.size() > 5);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    REQUIRE(*ts[i]->arity == *two());
    REQUIRE(ts[i]->depth <= 2);
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      REQUIRE_FALSE(term_equal(*ts[i], *ts[j]));
    }
  }
  CHECK_THROWS_AS(enumerate_terms(l, two(), 2, 3), Error);
}

TEST_CASE("probe equivalence") {
  auto const& p = bare_probes();
  auto u = var_arr(two(), kU);
  auto x0 = var_obj(two(), 0);
  CHECK(probe_equivalent(compose2(u, identity2(x0)), u, p));
  CHECK(probe_equivalent(endpoint(identity2(x0), 1), x0, p));
  CHECK(probe_equivalent(endpoint(u, 0), x0, p));
  CHECK_FALSE(probe_equivalent(endpoint(u, 1), x0, p));
  CHECK_FALSE(probe_equivalent(invert2(u), u, p));
  CHECK_FALSE(probe_equivalent(invert2(invert2(u)), u, p));
  CHECK_FALSE(probe_equivalent(x0, var_obj(one(), 0), p));
  auto iu = var_arr(iso(), 2);
  CHECK(probe_equivalent(invert2(invert2(iu)), iu, p));
}

TEST_CASE("free structure over the empty language is the input") {
  auto p = bare_probes();
  for (auto const& x : {one(), two(), iso(), three()}) {
    auto f = build_free(empty_language(), x, p, {1});
    CHECK(isomorphic(f.carrier, x));
    CHECK(is_isomorphism(f.eta));
  }
}

TEST_CASE("free structure on no generators with a constant") {
  auto l = constant_language();
  auto p = default_probes(l);
  auto f = build_free(l, empty(), p);
  CHECK(f.carrier->num_objects() == 1);
  CHECK(f.carrier->num_arrows() == 1);
  REQUIRE(f.object_terms.size() == 1);
  CHECK(f.object_terms[0]->kind == TermKind::glue);
}

TEST_CASE("free structure with a constant over two") {
  auto l = constant_language();
  auto p = default_probes(l);
  auto f = build_free(l, two(), p);
  auto expect = make_cat(coproduct({*two(), *one()}));
  CHECK(isomorphic(f.carrier, expect));
}

TEST_CASE("universal property against every probe") {
  auto p = bare_probes();
  auto f = build_free(empty_language(), two(), p, {1});
  std::size_t checked = 0;
  for (auto const& a : p.structures) {
    for (auto const& k : enumerate_functors(two(), a.carrier)) {
      auto r = universal_property_check(f, a, k);
      INFO(r.failure);
      REQUIRE(r.ok());
      REQUIRE(r.induced.has_value());
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("free structure rejects an empty probe set") {
  ProbeSet none{empty_language(), {}};
  CHECK_THROWS_AS(build_free(empty_language(), two(), none), Error);
}

TEST_CASE("probe structures are well formed") {
  auto l = constant_language();
  for (auto const& s : default_probes(l).structures) {
    REQUIRE(structure_violation(s).empty());
  }
  CHECK_THROWS_AS(default_probes(l, 2, 3), Error);
}
