#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace enrich::dsl {

/// A source position, 1-based. Columns count bytes.
///
/// Spans never take part in AST equality.
struct Span {
  int line = 1;
  int col = 1;

  friend bool operator==(Span const&, Span const&) { return true; }
};

struct Diagnostic {
  enum class Severity { error, warning };
  Severity severity = Severity::error;
  Span span;
  std::string message;
  std::string witness;
};

inline std::string format(Diagnostic const& d, std::string const& file = {}) {
  std::string s = file.empty() ? "" : file + ":";
  s += std::to_string(d.span.line) + ":" + std::to_string(d.span.col) + ": ";
  s += d.severity == Diagnostic::Severity::error ? "error: " : "warning: ";
  s += d.message;
  if (!d.witness.empty()) {
    s += " [" + d.witness + "]";
  }
  return s;
}

// ---------------------------------------------------------------- lexer

enum class Tok { word, punct, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  Span span;
  int end_col = 1;  // column just past the token
};

inline bool word_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c >= 0x80;
}

/// Words are runs of letters, digits, '_' and non-ASCII bytes. `//` starts
/// a comment.
inline std::vector<Token> lex(std::string const& src,
                              std::vector<Diagnostic>& diags) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto n = src.size();
  while (i < n) {
    auto c = static_cast<unsigned char>(src[i]);
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(c)) {
      ++col;
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      while (i < n && src[i] != '\n') {
        ++i;
      }
      continue;
    }
    Token t;
    t.span = {line, col};
    if (word_char(c)) {
      std::size_t j = i;
      while (j < n && word_char(static_cast<unsigned char>(src[j]))) {
        ++j;
      }
      t.kind = Tok::word;
      t.text = src.substr(i, j - i);
    } else {
      static char const* const two[] = {"->", "=>", "<="};
      t.kind = Tok::punct;
      for (auto const* p : two) {
        if (src.compare(i, 2, p) == 0) {
          t.text = p;
        }
      }
      if (t.text.empty()) {
        if (std::string("{}()[];,:.=|!/").find(static_cast<char>(c))
            == std::string::npos) {
          diags.push_back({Diagnostic::Severity::error, t.span,
                           std::string("unexpected character '")
                               + static_cast<char>(c) + "'",
                           {}});
          ++i;
          ++col;
          continue;
        }
        t.text = std::string(1, static_cast<char>(c));
      }
    }
    i += t.text.size();
    col += static_cast<int>(t.text.size());
    t.end_col = col;
    out.push_back(std::move(t));
  }
  Token e;
  e.span = {line, col};
  e.end_col = col;
  out.push_back(e);
  return out;
}

// ------------------------------------------------------------------ AST

/// Term syntax before lowering.
struct Expr {
  enum class Kind { name, call, annot, glue, bang };
  Kind kind = Kind::name;
  std::string head;               // name, callee, annotation, or glue shape Y
  std::vector<Expr> args;         // call arguments; annot operand; glue outer then members
  std::vector<std::string> gens;  // glue generators
  std::vector<std::string> keys;  // glue member keys, one per member
  Span span;

  bool operator==(Expr const&) const = default;
};

struct Name {
  std::string text;
  Span span;

  bool operator==(Name const&) const = default;
};

struct CategoryDecl {
  struct Arrow {
    Name name;
    Name source;
    Name target;
    bool operator==(Arrow const&) const = default;
  };
  struct Relation {
    std::vector<Name> lhs;
    std::vector<Name> rhs;
    bool operator==(Relation const&) const = default;
  };
  Name name;
  std::optional<Expr> builtin;
  std::vector<Name> objects;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;
  bool operator==(CategoryDecl const&) const = default;
};

struct FunctorDecl {
  Name name;
  Name dom;
  Name cod;
  std::vector<std::pair<Name, Name>> entries;
  bool operator==(FunctorDecl const&) const = default;
};

struct SpaceDecl {
  enum class Kind { set, poset, metric };
  struct Distance {
    Name a;
    Name b;
    std::string value;
    bool operator==(Distance const&) const = default;
  };
  Kind kind = Kind::set;
  Name name;
  std::vector<Name> elements;
  std::vector<std::pair<Name, Name>> order;
  std::vector<Distance> distances;
  bool operator==(SpaceDecl const&) const = default;
};

struct LanguageDecl {
  struct Op {
    Name name;
    Name arity;
    bool operator==(Op const&) const = default;
  };
  struct Op2 {
    Name name;
    Expr dom;
    Expr cod;
    Name arity;
    bool operator==(Op2 const&) const = default;
  };
  Name name;
  std::optional<Name> base;
  std::vector<Op> ops;
  std::vector<Op2> ops2;
  bool operator==(LanguageDecl const&) const = default;
};

struct JudgementDecl {
  enum class Kind { defined, eq, le, near };
  Kind kind = Kind::defined;
  std::optional<Name> arity;
  Expr lhs;
  std::optional<Expr> rhs;
  std::string eps;
  Span span;
  bool operator==(JudgementDecl const&) const = default;
};

struct TheoryDecl {
  Name name;
  std::optional<Name> lang;
  std::vector<JudgementDecl> judgements;
  bool operator==(TheoryDecl const&) const = default;
};

/// `[a, b | f]`: images of the objects of the arity, then of its
/// non-identity arrows.
struct PointKey {
  std::vector<Name> objects;
  std::vector<Name> arrows;
  bool operator==(PointKey const&) const = default;
};

struct TableEntry {
  bool is_arrow = false;
  std::optional<PointKey> source;  // arrow entries with explicit endpoints
  std::optional<PointKey> target;
  PointKey key;                    // the point, or the arrow's components
  Name value;
  bool operator==(TableEntry const&) const = default;
};

struct SymbolDef {
  enum class Kind { functor, nat };
  Name symbol;
  Kind kind = Kind::functor;
  std::vector<TableEntry> entries;
  bool operator==(SymbolDef const&) const = default;
};

struct StructureDecl {
  Name name;
  std::optional<Name> lang;
  Name carrier;
  std::vector<SymbolDef> defs;
  bool operator==(StructureDecl const&) const = default;
};

struct ProbesDecl {
  Name name;
  Name lang;
  std::optional<int> default_size;
  std::vector<Name> members;
  bool operator==(ProbesDecl const&) const = default;
};

using Decl = std::variant<CategoryDecl, FunctorDecl, SpaceDecl, LanguageDecl,
                          TheoryDecl, StructureDecl, ProbesDecl>;

struct Ast {
  std::vector<Decl> decls;
  bool operator==(Ast const&) const = default;
};

inline bool is_decl_keyword(std::string const& w) {
  return w == "category" || w == "functor" || w == "poset" || w == "metric"
         || w == "set" || w == "language" || w == "theory" || w == "structure"
         || w == "probes";
}

// --------------------------------------------------------------- parser

namespace detail {

struct SyntaxError {
  Diagnostic diag;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  Ast file(std::vector<Diagnostic>& diags) {
    Ast ast;
    while (!at_end()) {
      try {
        ast.decls.push_back(decl());
      } catch (SyntaxError const& e) {
        diags.push_back(e.diag);
        recover();
      }
    }
    return ast;
  }

  Expr single_term(std::vector<Diagnostic>& diags) {
    try {
      Expr e = term();
      if (!at_end()) {
        fail(peek().span, "unexpected '" + peek().text + "' after term");
      }
      return e;
    } catch (SyntaxError const& e) {
      diags.push_back(e.diag);
      return {};
    }
  }

 private:
  Token const& peek(std::size_t k = 0) const {
    return t_[std::min(p_ + k, t_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::end; }
  Token const& prev() const { return t_[p_ == 0 ? 0 : p_ - 1]; }
  Token const& advance() {
    Token const& t = t_[p_];
    if (p_ + 1 < t_.size()) {
      ++p_;
    }
    return t;
  }
  bool is(std::string const& s) const {
    return peek().kind != Tok::end && peek().text == s;
  }
  bool accept(std::string const& s) {
    if (is(s)) {
      advance();
      return true;
    }
    return false;
  }

  [[noreturn]] static void fail(Span at, std::string msg) {
    throw SyntaxError{{Diagnostic::Severity::error, at, std::move(msg), {}}};
  }

  std::string describe(Token const& t) const {
    return t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
  }

  void expect(std::string const& s) {
    if (accept(s)) {
      return;
    }
    if (s == ";" && p_ > 0) {
      fail({prev().span.line, prev().end_col},
           "expected ';' after " + describe(prev()));
    }
    fail(peek().span, "expected '" + s + "' but found " + describe(peek()));
  }

  Name name(char const* what = "a name") {
    if (peek().kind != Tok::word) {
      fail(peek().span, std::string("expected ") + what + " but found "
                            + describe(peek()));
    }
    auto const& t = advance();
    return {t.text, t.span};
  }

  void recover() {
    if (!at_end()) {
      advance();
    }
    while (!at_end()
           && !(peek().kind == Tok::word && is_decl_keyword(peek().text))) {
      advance();
    }
  }

  Decl decl() {
    auto const& k = peek();
    if (k.kind != Tok::word || !is_decl_keyword(k.text)) {
      fail(k.span, "expected a declaration but found " + describe(k));
    }
    std::string kw = advance().text;
    if (kw == "category") {
      return category();
    }
    if (kw == "functor") {
      return functor();
    }
    if (kw == "poset" || kw == "set" || kw == "metric") {
      return space(kw);
    }
    if (kw == "language") {
      return language();
    }
    if (kw == "theory") {
      return theory();
    }
    if (kw == "structure") {
      return structure();
    }
    return probes();
  }

  Expr shape_expr() {
    Expr e;
    e.span = peek().span;
    e.head = name("a shape").text;
    if (accept("(")) {
      e.kind = Expr::Kind::call;
      if (!is(")")) {
        do {
          e.args.push_back(shape_expr());
        } while (accept(","));
      }
      expect(")");
    }
    return e;
  }

  std::vector<Name> path() {
    std::vector<Name> p{name("an arrow")};
    while (accept(".")) {
      p.push_back(name("an arrow"));
    }
    return p;
  }

  CategoryDecl category() {
    CategoryDecl c;
    c.name = name();
    if (accept("=")) {
      c.builtin = shape_expr();
      expect(";");
      return c;
    }
    expect("{");
    while (!accept("}")) {
      auto item = name("'objects', 'arrows' or 'relations'");
      if (item.text == "objects") {
        while (peek().kind == Tok::word) {
          c.objects.push_back(name());
        }
      } else if (item.text == "arrows") {
        if (peek().kind == Tok::word) {
          do {
            CategoryDecl::Arrow a;
            a.name = name("an arrow");
            expect(":");
            a.source = name("an object");
            expect("->");
            a.target = name("an object");
            c.arrows.push_back(std::move(a));
          } while (accept(","));
        }
      } else if (item.text == "relations") {
        if (peek().kind == Tok::word) {
          do {
            CategoryDecl::Relation r;
            r.lhs = path();
            expect("=");
            r.rhs = path();
            c.relations.push_back(std::move(r));
          } while (accept(","));
        }
      } else {
        fail(item.span, "unknown category item '" + item.text + "'");
      }
      expect(";");
    }
    return c;
  }

  FunctorDecl functor() {
    FunctorDecl f;
    f.name = name();
    expect(":");
    f.dom = name("a category");
    expect("->");
    f.cod = name("a category");
    expect("{");
    while (!accept("}")) {
      auto a = name();
      expect("->");
      auto b = name();
      expect(";");
      f.entries.push_back({std::move(a), std::move(b)});
    }
    return f;
  }

  std::string number() {
    std::string s = name("a number").text;
    if (accept("/")) {
      s += "/" + name("a denominator").text;
    }
    return s;
  }

  SpaceDecl space(std::string const& kw) {
    SpaceDecl s;
    s.kind = kw == "set"     ? SpaceDecl::Kind::set
             : kw == "poset" ? SpaceDecl::Kind::poset
                             : SpaceDecl::Kind::metric;
    s.name = name();
    expect("{");
    while (!accept("}")) {
      auto item = name("a space item");
      if (item.text == "elements" || item.text == "points") {
        while (peek().kind == Tok::word) {
          s.elements.push_back(name());
        }
      } else if (item.text == "order" && s.kind == SpaceDecl::Kind::poset) {
        if (peek().kind == Tok::word) {
          do {
            auto a = name();
            expect("<=");
            auto b = name();
            s.order.push_back({std::move(a), std::move(b)});
          } while (accept(","));
        }
      } else if (item.text == "distance" && s.kind == SpaceDecl::Kind::metric) {
        if (peek().kind == Tok::word) {
          do {
            SpaceDecl::Distance d;
            d.a = name();
            d.b = name();
            expect("=");
            d.value = number();
            s.distances.push_back(std::move(d));
          } while (accept(","));
        }
      } else {
        fail(item.span, "unknown " + kw + " item '" + item.text + "'");
      }
      expect(";");
    }
    return s;
  }

  LanguageDecl language() {
    LanguageDecl l;
    l.name = name();
    if (accept("base")) {
      l.base = name("a base");
    }
    expect("{");
    while (!accept("}")) {
      auto item = name("'op' or 'op2'");
      if (item.text == "op") {
        LanguageDecl::Op o;
        o.name = name("a symbol");
        expect(":");
        o.arity = name("an arity");
        l.ops.push_back(std::move(o));
      } else if (item.text == "op2") {
        LanguageDecl::Op2 o;
        o.name = name("a symbol");
        expect(":");
        o.dom = term();
        expect("=>");
        o.cod = term();
        expect("of");
        o.arity = name("an arity");
        l.ops2.push_back(std::move(o));
      } else {
        fail(item.span, "unknown language item '" + item.text + "'");
      }
      expect(";");
    }
    return l;
  }

  TheoryDecl theory() {
    TheoryDecl t;
    t.name = name();
    if (accept("over")) {
      t.lang = name("a language");
    }
    expect("{");
    while (!accept("}")) {
      JudgementDecl j;
      j.span = peek().span;
      auto kw = name("a judgement");
      if (kw.text == "defined") {
        j.kind = JudgementDecl::Kind::defined;
      } else if (kw.text == "eq") {
        j.kind = JudgementDecl::Kind::eq;
      } else if (kw.text == "le") {
        j.kind = JudgementDecl::Kind::le;
      } else if (kw.text == "near") {
        j.kind = JudgementDecl::Kind::near;
      } else {
        fail(kw.span, "unknown judgement '" + kw.text + "'");
      }
      if (accept("[")) {
        j.arity = name("an arity");
        expect("]");
      }
      j.lhs = term();
      if (j.kind == JudgementDecl::Kind::le) {
        expect("<=");
        j.rhs = term();
      } else if (j.kind != JudgementDecl::Kind::defined) {
        expect("=");
        j.rhs = term();
      }
      if (j.kind == JudgementDecl::Kind::near) {
        expect("within");
        j.eps = number();
      }
      expect(";");
      t.judgements.push_back(std::move(j));
    }
    return t;
  }

  PointKey point_key() {
    PointKey k;
    expect("[");
    if (peek().kind == Tok::word) {
      do {
        k.objects.push_back(name());
      } while (accept(","));
    }
    if (accept("|")) {
      do {
        k.arrows.push_back(name());
      } while (accept(","));
    }
    expect("]");
    return k;
  }

  TableEntry entry() {
    TableEntry e;
    if (accept("arr")) {
      e.is_arrow = true;
      if (is("[")) {
        e.source = point_key();
        expect("=>");
        e.target = point_key();
      }
      expect("{");
      if (peek().kind == Tok::word) {
        do {
          e.key.objects.push_back(name("a component"));
        } while (accept(","));
      }
      expect("}");
    } else {
      e.key = point_key();
    }
    expect("->");
    e.value = name("a value");
    expect(";");
    return e;
  }

  StructureDecl structure() {
    StructureDecl s;
    s.name = name();
    if (accept("over")) {
      s.lang = name("a language");
    }
    expect(":");
    s.carrier = name("a carrier");
    expect("{");
    while (!accept("}")) {
      SymbolDef d;
      d.symbol = name("a symbol");
      expect("=");
      auto k = name("'functor' or 'nat'");
      if (k.text == "functor") {
        d.kind = SymbolDef::Kind::functor;
      } else if (k.text == "nat") {
        d.kind = SymbolDef::Kind::nat;
      } else {
        fail(k.span, "expected 'functor' or 'nat' but found '" + k.text + "'");
      }
      expect("{");
      while (!accept("}")) {
        d.entries.push_back(entry());
      }
      expect(";");
      s.defs.push_back(std::move(d));
    }
    return s;
  }

  ProbesDecl probes() {
    ProbesDecl p;
    p.name = name();
    expect("over");
    p.lang = name("a language");
    if (accept("=")) {
      expect("default");
      expect("(");
      auto n = name("a size");
      expect(")");
      expect(";");
      try {
        p.default_size = std::stoi(n.text);
      } catch (std::exception const&) {
        fail(n.span, "expected a number but found '" + n.text + "'");
      }
      return p;
    }
    expect("{");
    while (!accept("}")) {
      p.members.push_back(name("a structure"));
    }
    return p;
  }

  Expr term() {
    Expr e;
    e.span = peek().span;
    if (accept("[")) {
      e.kind = Expr::Kind::annot;
      e.head = name("an arity").text;
      expect("]");
      e.args.push_back(term());
      return e;
    }
    if (accept("!")) {
      e.kind = Expr::Kind::bang;
      return e;
    }
    e.head = name("a term").text;
    if (!accept("(")) {
      return e;
    }
    if (e.head == "glue") {
      e.kind = Expr::Kind::glue;
      e.args.push_back(term());
      expect(";");
      e.head = name("a shape").text;
      expect("by");
      expect("{");
      if (peek().kind == Tok::word) {
        do {
          e.gens.push_back(name("a generator").text);
        } while (accept(","));
      }
      expect("}");
      if (accept(";")) {
        do {
          e.keys.push_back(name("a generator").text);
          expect("->");
          e.args.push_back(term());
        } while (accept(","));
      }
      expect(")");
      return e;
    }
    e.kind = Expr::Kind::call;
    if (!is(")")) {
      do {
        e.args.push_back(term());
      } while (accept(","));
    }
    expect(")");
    return e;
  }

  std::vector<Token> t_;
  std::size_t p_ = 0;
};

}  // namespace detail

struct ParseResult {
  Ast ast;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
};

inline ParseResult parse(std::string const& src) {
  ParseResult r;
  auto toks = lex(src, r.diagnostics);
  detail::Parser p(std::move(toks));
  r.ast = p.file(r.diagnostics);
  return r;
}

inline std::optional<Expr> parse_term(std::string const& src,
                                      std::vector<Diagnostic>& diags) {
  auto n = diags.size();
  auto toks = lex(src, diags);
  detail::Parser p(std::move(toks));
  Expr e = p.single_term(diags);
  if (diags.size() != n) {
    return std::nullopt;
  }
  return e;
}

// -------------------------------------------------------------- printer

inline std::string print(Expr const& e) {
  switch (e.kind) {
    case Expr::Kind::name:
      return e.head;
    case Expr::Kind::bang:
      return "!";
    case Expr::Kind::annot:
      return "[" + e.head + "] " + print(e.args.at(0));
    case Expr::Kind::call: {
      std::string s = e.head + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        s += (i ? ", " : "") + print(e.args[i]);
      }
      return s + ")";
    }
    case Expr::Kind::glue: {
      std::string s = "glue(" + print(e.args.at(0)) + "; " + e.head + " by {";
      for (std::size_t i = 0; i < e.gens.size(); ++i) {
        s += (i ? ", " : "") + e.gens[i];
      }
      s += "}";
      for (std::size_t i = 0; i < e.keys.size(); ++i) {
        s += (i ? ", " : "; ") + e.keys[i] + " -> " + print(e.args.at(i + 1));
      }
      return s + ")";
    }
  }
  return {};
}

namespace detail {

inline std::string join(std::vector<Name> const& v, std::string const& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += (i ? sep : "") + v[i].text;
  }
  return s;
}

inline std::string print_key(PointKey const& k) {
  std::string s = "[" + join(k.objects, ", ");
  if (!k.arrows.empty()) {
    s += " | " + join(k.arrows, ", ");
  }
  return s + "]";
}

struct DeclPrinter {
  std::string operator()(CategoryDecl const& c) const {
    std::string s = "category " + c.name.text;
    if (c.builtin) {
      return s + " = " + print(*c.builtin) + ";\n";
    }
    s += " {\n  objects";
    for (auto const& o : c.objects) {
      s += " " + o.text;
    }
    s += ";\n";
    if (!c.arrows.empty()) {
      s += "  arrows ";
      for (std::size_t i = 0; i < c.arrows.size(); ++i) {
        auto const& a = c.arrows[i];
        s += (i ? ", " : "") + a.name.text + ": " + a.source.text + " -> "
             + a.target.text;
      }
      s += ";\n";
    }
    if (!c.relations.empty()) {
      s += "  relations ";
      for (std::size_t i = 0; i < c.relations.size(); ++i) {
        auto const& r = c.relations[i];
        s += (i ? ", " : "") + join(r.lhs, ".") + " = " + join(r.rhs, ".");
      }
      s += ";\n";
    }
    return s + "}\n";
  }

  std::string operator()(FunctorDecl const& f) const {
    std::string s = "functor " + f.name.text + " : " + f.dom.text + " -> "
                    + f.cod.text + " {\n";
    for (auto const& [a, b] : f.entries) {
      s += "  " + a.text + " -> " + b.text + ";\n";
    }
    return s + "}\n";
  }

  std::string operator()(SpaceDecl const& p) const {
    static char const* const kw[] = {"set", "poset", "metric"};
    bool met = p.kind == SpaceDecl::Kind::metric;
    std::string s = std::string(kw[static_cast<int>(p.kind)]) + " "
                    + p.name.text + " {\n  " + (met ? "points" : "elements");
    for (auto const& e : p.elements) {
      s += " " + e.text;
    }
    s += ";\n";
    if (!p.order.empty()) {
      s += "  order ";
      for (std::size_t i = 0; i < p.order.size(); ++i) {
        s += (i ? ", " : "") + p.order[i].first.text + " <= "
             + p.order[i].second.text;
      }
      s += ";\n";
    }
    if (!p.distances.empty()) {
      s += "  distance ";
      for (std::size_t i = 0; i < p.distances.size(); ++i) {
        auto const& d = p.distances[i];
        s += (i ? ", " : "") + d.a.text + " " + d.b.text + " = " + d.value;
      }
      s += ";\n";
    }
    return s + "}\n";
  }

  std::string operator()(LanguageDecl const& l) const {
    std::string s = "language " + l.name.text;
    if (l.base) {
      s += " base " + l.base->text;
    }
    s += " {\n";
    for (auto const& o : l.ops) {
      s += "  op " + o.name.text + " : " + o.arity.text + ";\n";
    }
    for (auto const& o : l.ops2) {
      s += "  op2 " + o.name.text + " : " + print(o.dom) + " => " + print(o.cod)
           + " of " + o.arity.text + ";\n";
    }
    return s + "}\n";
  }

  std::string operator()(TheoryDecl const& t) const {
    static char const* const kw[] = {"defined", "eq", "le", "near"};
    std::string s = "theory " + t.name.text;
    if (t.lang) {
      s += " over " + t.lang->text;
    }
    s += " {\n";
    for (auto const& j : t.judgements) {
      s += std::string("  ") + kw[static_cast<int>(j.kind)] + " ";
      if (j.arity) {
        s += "[" + j.arity->text + "] ";
      }
      s += print(j.lhs);
      if (j.rhs) {
        s += (j.kind == JudgementDecl::Kind::le ? " <= " : " = ") + print(*j.rhs);
      }
      if (j.kind == JudgementDecl::Kind::near) {
        s += " within " + j.eps;
      }
      s += ";\n";
    }
    return s + "}\n";
  }

  std::string operator()(StructureDecl const& a) const {
    std::string s = "structure " + a.name.text;
    if (a.lang) {
      s += " over " + a.lang->text;
    }
    s += " : " + a.carrier.text + " {\n";
    for (auto const& d : a.defs) {
      s += "  " + d.symbol.text + " = "
           + (d.kind == SymbolDef::Kind::functor ? "functor" : "nat") + " {\n";
      for (auto const& e : d.entries) {
        s += "    ";
        if (e.is_arrow) {
          s += "arr ";
          if (e.source) {
            s += print_key(*e.source) + " => " + print_key(*e.target) + " ";
          }
          s += "{" + join(e.key.objects, ", ") + "}";
        } else {
          s += print_key(e.key);
        }
        s += " -> " + e.value.text + ";\n";
      }
      s += "  };\n";
    }
    return s + "}\n";
  }

  std::string operator()(ProbesDecl const& p) const {
    std::string s = "probes " + p.name.text + " over " + p.lang.text;
    if (p.default_size) {
      return s + " = default(" + std::to_string(*p.default_size) + ");\n";
    }
    return s + " { " + join(p.members, " ") + (p.members.empty() ? "}\n" : " }\n");
  }
};

}  // namespace detail

/// Canonical source text; parsing it gives back an equal AST.
inline std::string print(Ast const& ast) {
  std::string s;
  for (std::size_t i = 0; i < ast.decls.size(); ++i) {
    s += (i ? "\n" : "") + std::visit(detail::DeclPrinter{}, ast.decls[i]);
  }
  return s;
}

}  // namespace enrich::dsl
