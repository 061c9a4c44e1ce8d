// enrich: check, evaluate and explore enriched equational theories over Cat,
// Set, Pos and Met.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "enrich/catsem.hpp"
#include "enrich/concrete.hpp"
#include "enrich/corpus.hpp"
#include "enrich/dsl.hpp"
#include "enrich/freemod.hpp"
#include "enrich/iso.hpp"
#include "enrich/isbell.hpp"
#include "enrich/variety.hpp"
#include "enrich/workspace.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace enrich;

constexpr int kOk = 0;
constexpr int kVerdict = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct Options {
  std::string file;
  bool json = false;
  bool explain = false;
  std::size_t max_power = 200000;
  std::size_t max_terms = 20000;
  std::size_t max_corpus = 5000;

  Limits limits() const { return {max_power, max_power}; }
};

std::size_t env_or(char const* name, std::size_t fallback) {
  char const* v = std::getenv(name);
  if (!v || !*v) {
    return fallback;
  }
  try {
    return static_cast<std::size_t>(std::stoull(v));
  } catch (std::exception const&) {
    std::cerr << "warning: ignoring " << name << "=" << v << "\n";
    return fallback;
  }
}

struct UsageError {
  std::string message;
};

void emit(Options const& o, json const& doc, std::string const& text) {
  if (o.json) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

json header(std::string const& command) {
  json j;
  j["schema"] = 1;
  j["command"] = command;
  return j;
}

dsl::LoadResult load_file(Options const& o) {
  std::ifstream in(o.file, std::ios::binary);
  if (!in) {
    throw UsageError{"cannot read " + o.file};
  }
  std::stringstream ss;
  ss << in.rdbuf();
  auto r = dsl::load(ss.str(), o.limits());
  if (!r.ok()) {
    for (auto const& d : r.diagnostics) {
      std::cerr << dsl::format(d, o.file) << "\n";
    }
    throw UsageError{};
  }
  return r;
}

template <class M>
auto const& lookup(M const& m, std::string const& name, char const* kind) {
  auto it = m.find(name);
  if (it == m.end()) {
    throw UsageError{std::string("no ") + kind + " named '" + name + "'"};
  }
  return it->second;
}

// ---------------------------------------------------------------- check

int cmd_check(Options const& o, std::string const& sname,
              std::string const& tname) {
  auto r = load_file(o);
  auto const& ws = r.ws;
  json doc = header("check");
  doc["structure"] = sname;
  doc["theory"] = tname;
  json verdicts = json::array();
  std::string text;
  bool model = true;
  if (ws.structures.count(sname)) {
    auto const& a = ws.structures.at(sname);
    auto const& th = lookup(ws.theories, tname, "theory over categories");
    if (a.lang != th.lang) {
      throw UsageError{sname + " and " + tname + " are over different languages"};
    }
    auto rep = is_model(a, th, o.limits());
    for (std::size_t i = 0; i < rep.verdicts.size(); ++i) {
      auto const& v = rep.verdicts[i];
      auto const& j = th.judgements[i];
      json jv;
      jv["judgement"] = v.judgement;
      jv["status"] = to_string(v.status);
      jv["witness"] = v.witness;
      text += "  " + to_string(v.status) + "  " + v.judgement;
      if (!v.witness.empty()) {
        text += "\n      witness: " + v.witness;
      }
      text += "\n";
      if (o.explain) {
        jv["lowered"] = render(j.lhs);
        text += "      lowered: " + render(j.lhs);
        if (j.rhs) {
          jv["lowered_rhs"] = render(j.rhs);
          text += "  =  " + render(j.rhs);
        }
        text += "\n";
      }
      verdicts.push_back(jv);
    }
    model = rep.holds;
  } else {
    auto const& a = lookup(ws.ord_structures, sname, "structure");
    auto const& th = lookup(ws.ord_theories, tname, "theory over a concrete base");
    if (a.lang != th.lang) {
      throw UsageError{sname + " and " + tname + " are over different languages"};
    }
    for (auto const& j : th.judgements) {
      auto v = check_judgement(j, a);
      json jv;
      jv["judgement"] = j.label;
      jv["status"] = to_string(v.status);
      jv["witness"] = v.witness;
      text += "  " + to_string(v.status) + "  " + j.label;
      if (!v.witness.empty()) {
        text += "\n      witness: " + v.witness;
      }
      text += "\n";
      if (o.explain) {
        jv["lowered"] = render(*j.lhs);
        text += "      lowered: " + render(*j.lhs);
        if (j.rhs) {
          jv["lowered_rhs"] = render(*j.rhs);
          text += "  vs  " + render(*j.rhs);
        }
        text += "\n";
      }
      verdicts.push_back(jv);
      model = model && v.holds();
    }
  }
  doc["model"] = model;
  doc["verdicts"] = verdicts;
  text = sname + (model ? " is a model of " : " is not a model of ") + tname
         + "\n" + text;
  emit(o, doc, text);
  return model ? kOk : kVerdict;
}

// ----------------------------------------------------------------- eval

int cmd_eval(Options const& o, std::string const& term, std::string const& sname,
             std::string const& arity) {
  auto r = load_file(o);
  auto const& ws = r.ws;
  std::vector<dsl::Diagnostic> diags;
  auto e = dsl::parse_term(term, diags);
  auto fail_lowering = [&](dsl::Diagnostic const& d) {
    std::cerr << dsl::format(d, "<term>") << "\n";
    throw UsageError{};
  };
  if (!e) {
    fail_lowering(diags.front());
  }
  json doc = header("eval");
  doc["structure"] = sname;
  doc["term"] = dsl::print(*e);
  std::string text;
  if (ws.structures.count(sname)) {
    auto const& a = ws.structures.at(sname);
    CatPtr ctx = arity.empty() ? nullptr : lookup(ws.cats, arity, "category");
    TermPtr t;
    try {
      t = dsl::lower_term(ws, *a.lang, *e, ctx);
    } catch (dsl::detail::LowerError const& le) {
      fail_lowering(le.diag);
    }
    doc["lowered"] = render(t);
    if (o.explain) {
      text += "lowered: " + render(t) + "\n";
    }
    Evaluator ev(a, o.limits());
    auto const& res = ev.eval(t);
    if (!res.ok()) {
      auto const& ob = *res.obstruction;
      doc["status"] = "NotInterpretable";
      doc["obstruction"] = {{"kind", ob.kind}, {"node", ob.node},
                            {"detail", ob.detail}};
      text += "NotInterpretable: " + ob.kind + " in " + ob.node + " " + ob.detail
              + "\n";
      emit(o, doc, text);
      return kVerdict;
    }
    auto const& v = *res.value;
    auto px = ev.power_of(t->arity);
    auto const& c = *a.carrier;
    doc["status"] = "Interpretable";
    doc["dim"] = v.dim;
    json table = json::array();
    text += "dimension " + std::to_string(v.dim) + ", "
            + std::to_string(v.obj.size()) + " points of A^X\n";
    for (std::size_t h = 0; h < v.obj.size(); ++h) {
      std::string val =
          v.dim == 1 ? c.object_name(v.obj[h])
                     : c.arrow_name(ev.arrow_cat().arrow_of_object[v.obj[h]]);
      auto label = px->object_label(static_cast<int>(h));
      table.push_back({{"point", label}, {"value", val}});
      text += "  " + label + " |-> " + val + "\n";
    }
    doc["table"] = table;
    emit(o, doc, text);
    return kOk;
  }
  auto const& a = lookup(ws.ord_structures, sname, "structure");
  SpacePtr ctx = arity.empty() ? nullptr : lookup(ws.spaces, arity, "space");
  OrdTermPtr t;
  try {
    t = dsl::lower_ord_term(ws, *a.lang, *e, ctx);
  } catch (dsl::detail::LowerError const& le) {
    fail_lowering(le.diag);
  }
  doc["lowered"] = render(*t);
  if (o.explain) {
    text += "lowered: " + render(*t) + "\n";
  }
  OrdEvaluator ev(a);
  auto res = ev.eval(*t);
  if (!res.value) {
    doc["status"] = "NotInterpretable";
    doc["witness"] = res.witness;
    text += "NotInterpretable: " + res.witness + "\n";
    emit(o, doc, text);
    return kVerdict;
  }
  auto const& px = ev.power_of(*t->arity);
  doc["status"] = "Interpretable";
  json table = json::array();
  for (std::size_t i = 0; i < res.value->size(); ++i) {
    auto const& val = a.carrier->names[(*res.value)[i]];
    table.push_back({{"point", px.space.names[i]}, {"value", val}});
    text += "  " + px.space.names[i] + " |-> " + val + "\n";
  }
  doc["table"] = table;
  emit(o, doc, text);
  return kOk;
}

// ----------------------------------------------------------------- free

int cmd_free(Options const& o, std::string const& lname, std::string const& shape,
             int depth, std::string const& pname) {
  auto r = load_file(o);
  auto const& ws = r.ws;
  auto const& lang = lookup(ws.langs, lname, "category language");
  auto x = lookup(ws.cats, shape, "category");
  ProbeSet probes;
  if (!pname.empty()) {
    probes = lookup(ws.probes, pname, "probe set");
    if (probes.lang != lang) {
      throw UsageError{pname + " is not over " + lname};
    }
  } else {
    probes = default_probes(lang, 2, o.max_corpus, o.limits());
    if (lang->ops().empty() && lang->ops2().empty()) {
      probes.structures.push_back(bare_structure(x, "X"));
    }
  }
  FreeParams fp;
  fp.depth = depth;
  fp.max_terms = o.max_terms;
  fp.lim = o.limits();
  auto f = build_free(lang, x, probes, fp);
  bool carrier_iso = isomorphic(f.carrier, x);
  bool unit_iso = is_isomorphism(f.eta);
  json doc = header("free");
  doc["language"] = lname;
  doc["shape"] = shape;
  doc["depth"] = depth;
  doc["probes"] = f.probes;
  doc["terms"] = f.terms;
  doc["objects"] = f.carrier->num_objects();
  doc["arrows"] = f.carrier->num_arrows();
  doc["carrier_isomorphic_to_input"] = carrier_iso;
  doc["unit_is_iso"] = unit_iso;
  json objs = json::array();
  for (auto const& t : f.object_terms) {
    objs.push_back(render(t));
  }
  doc["object_terms"] = objs;
  std::string text = "free structure on " + shape + " over " + lname + ": "
                     + std::to_string(f.carrier->num_objects()) + " objects, "
                     + std::to_string(f.carrier->num_arrows()) + " arrows ("
                     + std::to_string(f.terms) + " terms, "
                     + std::to_string(f.probes) + " probes)\n";
  if (carrier_iso && unit_iso) {
    text += "carrier isomorphic to input; unit is iso\n";
  } else {
    text += std::string("carrier ") + (carrier_iso ? "is" : "is not")
            + " isomorphic to input; unit " + (unit_iso ? "is" : "is not")
            + " iso\n";
  }
  if (o.explain) {
    for (std::size_t i = 0; i < f.object_terms.size(); ++i) {
      text += "  object " + f.carrier->object_name(static_cast<ObjId>(i)) + "\n";
    }
  }
  emit(o, doc, text);
  return kOk;
}

// --------------------------------------------------------------- factor

std::string describe(dsl::Workspace const& ws, FinCat const& c) {
  if (auto n = ws.name_of(c)) {
    return *n;
  }
  return "a category with " + std::to_string(c.num_objects()) + " objects and "
         + std::to_string(c.num_arrows()) + " arrows";
}

int cmd_factor(Options const& o, std::string const& fname) {
  auto r = load_file(o);
  auto const& ws = r.ws;
  auto const& f = lookup(ws.functors, fname, "functor");
  auto fz = factorize(f);
  bool onto = is_isomorphism(fz.m);
  bool identity = onto && fz.m.dom->num_objects() == f.cod->num_objects();
  for (std::size_t i = 0; identity && i < fz.m.obj.size(); ++i) {
    identity = fz.m.obj[i] == static_cast<ObjId>(i);
  }
  for (std::size_t i = 0; identity && i < fz.m.arr.size(); ++i) {
    identity = fz.m.arr[i] == static_cast<ArrId>(i);
  }
  std::string mid = onto ? describe(ws, *f.cod) : describe(ws, *fz.m.dom);
  std::string mono = identity ? "identity"
                     : onto   ? "isomorphism"
                              : "inclusion of " + describe(ws, *fz.m.dom)
                                    + " into " + describe(ws, *f.cod);
  json doc = header("factor");
  doc["functor"] = fname;
  doc["epi"] = {{"onto", mid},
                {"objects", fz.m.dom->num_objects()},
                {"arrows", fz.m.dom->num_arrows()}};
  doc["mono"] = mono;
  doc["functor_is_epi"] = onto;
  std::string text = "epi part: onto " + mid + "; mono part: " + mono + "\n";
  emit(o, doc, text);
  return kOk;
}

// -------------------------------------------------------------- closure

int cmd_closure(Options const& o, std::string const& tname, int corpus_objects,
                std::vector<std::string> const& snames) {
  auto r = load_file(o);
  auto const& ws = r.ws;
  auto const& th = lookup(ws.theories, tname, "theory over categories");
  std::vector<CatStructure> corpus;
  if (!snames.empty()) {
    for (auto const& n : snames) {
      corpus.push_back(lookup(ws.structures, n, "structure"));
    }
  } else if (th.lang->ops().empty() && th.lang->ops2().empty()) {
    CorpusParams cp;
    cp.max_objects = corpus_objects;
    for (auto& c : generate_corpus(cp)) {
      corpus.push_back(bare_structure(make_cat(std::move(c)),
                                      "C" + std::to_string(corpus.size())));
    }
  } else {
    for (auto const& [n, s] : ws.structures) {
      if (s.lang == th.lang) {
        corpus.push_back(s);
      }
    }
  }
  if (corpus.size() > o.max_corpus) {
    throw Error(ErrorKind::budget_exceeded,
                "corpus of " + std::to_string(corpus.size())
                    + " structures exceeds --max-corpus");
  }
  ClosureParams cp;
  cp.lim = o.limits();
  auto rep = closure_suite(th, corpus, cp);
  json doc = header("closure");
  doc["theory"] = tname;
  doc["structures"] = rep.structures;
  doc["models"] = rep.models;
  json entries = json::array();
  std::string text = "closure of " + tname + " over " + std::to_string(rep.structures)
                     + " structures (" + std::to_string(rep.models) + " models)\n";
  for (auto const& e : rep.entries) {
    entries.push_back({{"property", e.property},
                       {"status", to_string(e.status)},
                       {"checked", e.checked},
                       {"over_budget", e.over_budget},
                       {"witness", e.witness}});
    text += "  " + e.property + ": " + to_string(e.status) + " (" +
            std::to_string(e.checked) + " checked";
    if (e.over_budget) {
      text += ", " + std::to_string(e.over_budget) + " over budget";
    }
    text += ")";
    if (!e.witness.empty()) {
      text += " " + e.witness;
    }
    text += "\n";
  }
  doc["entries"] = entries;
  doc["passed"] = rep.passed();
  emit(o, doc, text);
  return rep.passed() ? kOk : kVerdict;
}

// ----------------------------------------------------------- gen-corpus

int cmd_gen_corpus(Options const& o, int max_objects) {
  CorpusParams cp;
  cp.max_objects = max_objects;
  auto corpus = generate_corpus(cp);
  if (corpus.size() > o.max_corpus) {
    throw Error(ErrorKind::budget_exceeded,
                "corpus of " + std::to_string(corpus.size())
                    + " categories exceeds --max-corpus");
  }
  json doc = header("gen-corpus");
  doc["max_objects"] = max_objects;
  doc["count"] = corpus.size();
  json cats = json::array();
  std::string text = std::to_string(corpus.size()) + " categories with at most "
                     + std::to_string(max_objects) + " objects\n";
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto const& c = corpus[i];
    json arrows = json::array();
    std::string line = "  #" + std::to_string(i) + ": "
                       + std::to_string(c.num_objects()) + " objects, "
                       + std::to_string(c.num_arrows()) + " arrows:";
    for (ArrId a = 0; a < static_cast<ArrId>(c.num_arrows()); ++a) {
      arrows.push_back({{"name", c.arrow_name(a)},
                        {"source", c.object_name(c.source(a))},
                        {"target", c.object_name(c.target(a))}});
      if (!c.is_identity(a)) {
        line += " " + c.arrow_name(a) + ":" + c.object_name(c.source(a)) + "->"
                + c.object_name(c.target(a));
      }
    }
    cats.push_back({{"objects", c.num_objects()}, {"arrows", arrows}});
    text += line + "\n";
  }
  doc["categories"] = cats;
  emit(o, doc, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Check, evaluate and explore enriched equational theories"};
  app.require_subcommand(1);
  Options o;
  o.max_power = env_or("ENRICH_MAX_POWER", o.max_power);
  o.max_terms = env_or("ENRICH_MAX_TERMS", o.max_terms);
  o.max_corpus = env_or("ENRICH_MAX_CORPUS", o.max_corpus);

  auto common = [&](CLI::App* c, bool file) {
    if (file) {
      c->add_option("file", o.file, "source file")->required();
    }
    c->add_flag("--json", o.json, "machine-readable output");
    c->add_flag("--explain", o.explain, "show lowered terms");
    c->add_option("--max-power", o.max_power,
                  "max objects or arrows of a functor category (ENRICH_MAX_POWER)");
    c->add_option("--max-terms", o.max_terms,
                  "max enumerated terms (ENRICH_MAX_TERMS)");
    c->add_option("--max-corpus", o.max_corpus,
                  "max corpus or probe count (ENRICH_MAX_CORPUS)");
  };

  std::string structure, theory, term, arity, lang, shape, probes, functor;
  std::vector<std::string> structures;
  int depth = 2;
  int corpus_objects = 2;
  int max_objects = 2;

  auto* check = app.add_subcommand("check", "check a structure against a theory");
  common(check, true);
  check->add_option("--structure", structure)->required();
  check->add_option("--theory", theory)->required();

  auto* eval = app.add_subcommand("eval", "interpret a term in a structure");
  common(eval, true);
  eval->add_option("--term", term)->required();
  eval->add_option("--structure", structure)->required();
  eval->add_option("--arity", arity, "arity of the variables in the term");

  auto* free = app.add_subcommand("free", "build a free structure");
  common(free, true);
  free->add_option("--lang", lang)->required();
  free->add_option("--shape", shape)->required();
  free->add_option("--depth", depth)->check(CLI::Range(1, 6));
  free->add_option("--probes", probes);

  auto* factor = app.add_subcommand("factor", "(epi, strong mono) factorization");
  common(factor, true);
  factor->add_option("--functor", functor)->required();

  auto* closure = app.add_subcommand("closure", "closure properties of the models");
  common(closure, true);
  closure->add_option("--theory", theory)->required();
  closure->add_option("--corpus", corpus_objects,
                      "max objects of generated carriers")
      ->check(CLI::Range(0, 3));
  closure->add_option("--structure", structures, "explicit corpus");

  auto* gen = app.add_subcommand("gen-corpus", "list the category corpus");
  common(gen, false);
  gen->add_option("--max-objects", max_objects)->check(CLI::Range(0, 3));

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) {
      return cmd_check(o, structure, theory);
    }
    if (*eval) {
      return cmd_eval(o, term, structure, arity);
    }
    if (*free) {
      return cmd_free(o, lang, shape, depth, probes);
    }
    if (*factor) {
      return cmd_factor(o, functor);
    }
    if (*closure) {
      return cmd_closure(o, theory, corpus_objects, structures);
    }
    return cmd_gen_corpus(o, max_objects);
  } catch (UsageError const& e) {
    if (!e.message.empty()) {
      std::cerr << "error: " << e.message << "\n";
    }
    return kUsage;
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_budget() ? kBudget : kUsage;
  }
}
