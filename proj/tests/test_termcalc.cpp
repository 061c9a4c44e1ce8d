#include <catch_amalgamated.hpp>

#include "enrich/catsem.hpp"
#include "enrich/corpus.hpp"
#include "enrich/term.hpp"
#include "enrich/theories.hpp"

using namespace enrich;
using namespace enrich::std_shapes;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (Error const& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::invalid_argument;
}

std::shared_ptr<Language2> lang() {
  auto l = std::make_shared<Language2>("L");
  l->add_op("c", empty());
  l->add_op("f", one());
  l->add_op("m", make_cat(shapes::discrete(2)));
  return l;
}

constexpr ArrId kU = 2;  // u in the arrow category

}  // namespace

TEST_CASE("formation rules assign arity and dimension") {
  auto l = lang();
  auto x = var_obj(two(), 0);
  CHECK(x->dim == 1);
  CHECK(*x->arity == *two());
  auto r = var_arr(two(), kU);
  CHECK(r->dim == 2);
  auto c = sym(*l, "c");
  CHECK(c->dim == 1);
  CHECK(c->arity->num_objects() == 0);
  auto p = power2(x);
  CHECK(p->dim == 2);
  CHECK(p->arity->num_objects() == 4);
  CHECK(p->arity->num_arrows() == 9);
  auto e = endpoint(r, 1);
  CHECK(e->dim == 1);
  CHECK(*e->arity == *two());
  CHECK(identity2(x)->dim == 2);
  CHECK(*compose2(r, r)->arity == *two());
  CHECK(*invert2(r)->arity == *two());
  auto d = discreteness_term();
  CHECK(d->dim == 2);
  CHECK(*d->arity == *two());
}

TEST_CASE("gluing along a generating family") {
  auto l = lang();
  auto d2 = make_cat(shapes::discrete(2));
  auto gamma = make_gamma(d2, {{true, 0}, {true, 1}});
  auto t = glue(sym(*l, "m"), gamma, {var_obj(two(), 1), var_obj(two(), 0)});
  CHECK(t->dim == 1);
  CHECK(*t->arity == *two());
  CHECK(render(t) == "glue(m; {0, 1}; 0 -> obj(1), 1 -> obj(0))");
  SECTION("empty family needs an arity") {
    auto g0 = make_gamma(empty(), {});
    CHECK(kind_of([&] { glue(sym(*l, "c"), g0, {}); })
          == ErrorKind::arity_mismatch);
    auto k = glue(sym(*l, "c"), g0, {}, three());
    CHECK(*k->arity == *three());
  }
}

TEST_CASE("formation errors") {
  auto l = lang();
  auto d2 = make_cat(shapes::discrete(2));
  auto gamma = make_gamma(d2, {{true, 0}, {true, 1}});
  CHECK(kind_of([&] { var_obj(two(), "nope"); }) == ErrorKind::unknown_object);
  CHECK(kind_of([&] { var_obj(two(), 5); }) == ErrorKind::unknown_object);
  CHECK(kind_of([&] { var_arr(two(), 7); }) == ErrorKind::unknown_arrow);
  CHECK(kind_of([&] { sym(*l, "g"); }) == ErrorKind::unknown_symbol);
  CHECK(kind_of([&] { sym2(*l, "f"); }) == ErrorKind::unknown_symbol);
  CHECK(kind_of([&] { power2(var_arr(two(), kU)); })
        == ErrorKind::dimension_mismatch);
  CHECK(kind_of([&] { glue(sym(*l, "m"), gamma, {var_obj(two(), 0)}); })
        == ErrorKind::family_index_mismatch);
  CHECK(kind_of([&] {
          glue(sym(*l, "m"), gamma, {var_obj(two(), 0), var_arr(two(), kU)});
        }) == ErrorKind::dimension_mismatch);
  CHECK(kind_of([&] {
          glue(sym(*l, "m"), gamma, {var_obj(two(), 0), var_obj(one(), 0)});
        }) == ErrorKind::arity_mismatch);
  CHECK(kind_of([&] { glue(sym(*l, "f"), gamma, {}); })
        == ErrorKind::arity_mismatch);
  CHECK(kind_of([&] { endpoint(var_obj(two(), 0), 0); })
        == ErrorKind::dimension_mismatch);
  CHECK(kind_of([&] { identity2(var_arr(two(), kU)); })
        == ErrorKind::dimension_mismatch);
  CHECK(kind_of([&] { compose2(var_arr(two(), kU), var_arr(iso(), 2)); })
        == ErrorKind::arity_mismatch);
  CHECK(kind_of([&] { l->add_op("f", one()); }) == ErrorKind::invalid_argument);
  CHECK(kind_of([&] {
          l->add_op2("s", var_arr(one(), 0), var_obj(one(), 0));
        }) == ErrorKind::dimension_mismatch);
  CHECK(kind_of([&] { make_gamma(three(), {{false, 4}}); })
        == ErrorKind::not_generating);
}

TEST_CASE("2-function symbols") {
  auto l = lang();
  l->add_op2("s", sym(*l, "f"), var_obj(one(), 0));
  auto s = sym2(*l, "s");
  CHECK(s->dim == 2);
  CHECK(*s->arity == *one());
  CHECK(kind_of([&] {
          l->add_op2("t", sym(*l, "f"), sym(*l, "m"));
        }) == ErrorKind::arity_mismatch);
}

TEST_CASE("structurally equal terms compare and hash equal") {
  auto a = compose2(var_arr(three(), 3), var_arr(three(), 5));
  auto b = compose2(var_arr(three(), 3), var_arr(three(), 5));
  CHECK(a.get() != b.get());
  CHECK(term_equal(*a, *b));
  CHECK(a->hash == b->hash);
  CHECK_FALSE(term_equal(*a, *compose2(var_arr(three(), 5), var_arr(three(), 3))));
}

TEST_CASE("precomposition along a functor") {
  auto t = var_obj(two(), 1);
  FinFunctor h{two(), three(), {0, 2}, {0, 2, 4}};
  auto s = precompose(t, h);
  CHECK(*s->arity == *three());
  CHECK(s->dim == 1);
  for (auto const& c : generate_corpus()) {
    auto carrier = make_cat(c);
    auto a = bare_structure(carrier);
    Evaluator ev(a);
    auto const& v = ev.eval(s);
    REQUIRE(v.ok());
    auto px = ev.power_of(three());
    for (int k = 0; k < static_cast<int>(px->num_objects()); ++k) {
      REQUIRE(v.value->obj[k] == px->objects_of(k)[2]);
    }
  }
}

TEST_CASE("eliminate_power2 rejects identities and 1-terms") {
  auto tau = var_arr(two(), kU);
  for (ArrId h : {0, 1, 3, 4}) {
    CHECK(kind_of([&] { eliminate_power2(tau, h); })
          == ErrorKind::invalid_argument);
  }
  CHECK(kind_of([&] { eliminate_power2(var_obj(two(), 0), 2); })
        == ErrorKind::dimension_mismatch);
}

TEST_CASE("eliminate_power2 agrees with the direct power") {
  std::vector<TermPtr> taus{
      var_arr(two(), kU), var_arr(one(), 0), var_arr(iso(), 2),
      invert2(var_arr(iso(), 3)),
      compose2(var_arr(two(), kU), identity2(var_obj(two(), 0)))};
  std::size_t checked = 0;
  for (auto const& c : generate_corpus()) {
    if (c.num_arrows() > 5) {
      continue;
    }
    auto a = bare_structure(make_cat(c));
    Evaluator ev(a);
    for (auto const& tau : taus) {
      for (ArrId h : {2, 5, 6, 7, 8}) {
        auto t = eliminate_power2(tau, h);
        REQUIRE(t->dim == 2);
        REQUIRE(*t->arity == *power_arity(tau->arity));
        auto const& got = ev.eval(t);
        auto want = direct_power2_oracle(tau, h, ev);
        REQUIRE(got.ok() == want.ok());
        if (got.ok()) {
          REQUIRE(*got.value == *want.value);
        }
        ++checked;
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("epi trace terms") {
  FinFunctor q{two(), iso(), {0, 1}, {0, 1, 2}};
  auto sigma = var_arr(two(), kU);
  std::vector<TermPtr> arrows{identity2(var_obj(two(), 0)),
                              identity2(var_obj(two(), 1)), sigma};
  std::vector<TermPtr> objects{var_obj(two(), 0), var_obj(two(), 1)};
  auto v = epi_trace_term(q, arrows, objects, 3);
  CHECK(term_equal(*v, *invert2(sigma)));
  auto u = epi_trace_term(q, arrows, objects, 2);
  CHECK(term_equal(*u, *sigma));
  FinFunctor p{one(), two(), {0}, {0}};
  CHECK(kind_of([&] {
          epi_trace_term(p, {identity2(var_obj(one(), 0))},
                         {var_obj(one(), 0)}, 2);
        }) == ErrorKind::not_epi);
}

TEST_CASE("theories reject ill-typed equations") {
  Theory2 th{"T", lang(), {}};
  CHECK(kind_of([&] { th.add_equal(var_obj(two(), 0), var_arr(two(), kU)); })
        == ErrorKind::dimension_mismatch);
  CHECK(kind_of([&] { th.add_equal(var_obj(two(), 0), var_obj(one(), 0)); })
        == ErrorKind::arity_mismatch);
}
