#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "enrich/theories.hpp"
#include "enrich/workspace.hpp"

using namespace enrich;
using namespace enrich::dsl;

namespace {

std::string slurp(std::string const& name) {
  std::ifstream in(std::string(EXAMPLES_DIR) + "/" + name);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadResult load_ok(std::string const& name) {
  auto r = load(slurp(name));
  for (auto const& d : r.diagnostics) {
    UNSCOPED_INFO(format(d, name));
  }
  REQUIRE(r.ok());
  return r;
}

}  // namespace

TEST_CASE("groupoid example") {
  auto r = load_ok("groupoid.enr");
  auto const& th = r.ws.theories.at("groupoid");
  REQUIRE(th.judgements.size() == 1);
  CHECK(term_equal(*th.judgements[0].lhs, *groupoid_theory().judgements[0].lhs));
  CHECK(is_model(r.ws.structures.at("I"), th).holds);
  auto bad = is_model(r.ws.structures.at("Two"), th);
  REQUIRE_FALSE(bad.holds);
  CHECK(bad.first_failure()->obstruction->kind == "NotInvertible");
}

TEST_CASE("discrete example") {
  auto r = load_ok("discrete.enr");
  auto const& th = r.ws.theories.at("discrete");
  CHECK(term_equal(*th.judgements[0].lhs, *discreteness_term()));
  CHECK(is_model(r.ws.structures.at("Points"), th).holds);
  CHECK_FALSE(is_model(r.ws.structures.at("Arrow"), th).holds);
}

TEST_CASE("chosen limits example") {
  auto r = load_ok("chosen_limits.enr");
  auto const& l = *r.ws.langs.at("products");
  CHECK(l.find_op("lim") != nullptr);
  CHECK(l.find_op2("pr_0") != nullptr);
  CHECK(l.find_op2("pr_1") != nullptr);
  CHECK(l.find_op2("rho") != nullptr);
  auto const& th = r.ws.theories.at("chosen_products");
  CHECK(th.judgements.size() == 4);
  CHECK(is_model(r.ws.structures.at("Meets"), th).holds);
  CHECK_FALSE(is_model(r.ws.structures.at("Broken"), th).holds);
}

TEST_CASE("concrete examples") {
  auto pos = load_ok("pos_min.enr");
  auto const& min = pos.ws.ord_structures.at("Min");
  CHECK(check_judgement(pos.ws.ord_theories.at("lower_bound").judgements[0], min)
            .holds());
  CHECK_FALSE(
      check_judgement(pos.ws.ord_theories.at("upper_bound").judgements[0], min)
          .holds());
  auto met = load_ok("met_eps.enr");
  auto const& two = met.ws.ord_structures.at("Two");
  CHECK(check_judgement(met.ws.ord_theories.at("within_one").judgements[0], two)
            .holds());
  CHECK_FALSE(
      check_judgement(met.ws.ord_theories.at("within_half").judgements[0], two)
          .holds());
}

TEST_CASE("functor declarations") {
  auto r = load_ok("factor.enr");
  auto const& q = r.ws.functors.at("q");
  CHECK(q.violation().empty());
  CHECK(q.arr.size() == 3);
  CHECK(r.ws.functors.at("skip").obj == std::vector<ObjId>{0, 2});
}

TEST_CASE("every example round-trips through the printer") {
  std::size_t n = 0;
  for (auto const& e : std::filesystem::directory_iterator(EXAMPLES_DIR)) {
    if (e.path().extension() != ".enr") {
      continue;
    }
    auto name = e.path().filename().string();
    INFO(name);
    auto first = parse(slurp(name));
    REQUIRE(first.ok());
    auto printed = print(first.ast);
    auto second = parse(printed);
    REQUIRE(second.ok());
    CHECK(print(second.ast) == printed);
    auto again = load(printed);
    CHECK(again.ok());
    ++n;
  }
  CHECK(n >= 6);
}

TEST_CASE("a missing semicolon is one diagnostic at the right place") {
  auto r = parse("theory groupoid {\n  defined [two] inv(arr(u))\n}\n");
  REQUIRE(r.diagnostics.size() == 1);
  auto const& d = r.diagnostics[0];
  CHECK(d.span.line == 2);
  CHECK(d.span.col == 28);
  CHECK(d.message == "expected ';' after ')'");
  CHECK(format(d, "g.enr") == "g.enr:2:28: error: expected ';' after ')'");
}

TEST_CASE("name resolution errors") {
  auto r = load("structure S : nowhere {}\n");
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0].span.line == 1);
  CHECK(r.diagnostics[0].span.col == 15);
  CHECK(r.diagnostics[0].message == "unknown category 'nowhere'");
  auto t = load("theory t {\n  defined [two] inv(arr(w));\n}\n");
  CHECK_FALSE(t.ok());
}

TEST_CASE("single terms") {
  std::vector<Diagnostic> diags;
  for (std::string src : {"inv(arr(u))", "comp(arr(u12), arr(u01))",
                          "glue(obj(apex); C by {to_0, to_1}; to_0 -> pr_0, "
                          "to_1 -> pr_1)"}) {
    auto e = parse_term(src, diags);
    REQUIRE(e.has_value());
    CHECK(print(*e) == src);
  }
  CHECK(diags.empty());
  CHECK_FALSE(parse_term("inv(arr(u)", diags).has_value());
  CHECK_FALSE(diags.empty());
}
