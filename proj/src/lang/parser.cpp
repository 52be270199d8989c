#include "lemmaflow/lang/parser.hpp"

#include <array>
#include <cctype>
#include <set>

#include "lemmaflow/fol/clause.hpp"
#include "lemmaflow/lang/network.hpp"

namespace lemmaflow::lang {
namespace {

enum class Tok {
  Ident, Number, LParen, RParen, Comma, Dot, Colon, Define, Tilde, Amp, Bar, Arrow,
  Eq, Neq, Plus, Star, QueryMark, At, Caret, End,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End:
      return "end of input";
    case Tok::Ident:
    case Tok::Number:
      return "'" + t.text + "'";
    default:
      return "'" + t.text + "'";
  }
}

constexpr std::array kKeywords = {"forall", "exists", "true", "false", "agent", "end",
                                  "axiom",  "query",  "from", "schema", "let"};

bool is_keyword(std::string_view s) {
  for (auto k : kKeywords) {
    if (s == k) return true;
  }
  return false;
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const SourcePos pos{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), pos});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Tok::Number, std::string(text.substr(i, j - i)), pos});
      advance(j - i);
      continue;
    }
    auto two = text.substr(i, 2);
    auto emit = [&](Tok k, std::size_t n) {
      out.push_back({k, std::string(text.substr(i, n)), pos});
      advance(n);
    };
    if (two == "->") { emit(Tok::Arrow, 2); continue; }
    if (two == "!=") { emit(Tok::Neq, 2); continue; }
    if (two == ":=") { emit(Tok::Define, 2); continue; }
    if (two == "?-") { emit(Tok::QueryMark, 2); continue; }
    switch (c) {
      case '(': emit(Tok::LParen, 1); continue;
      case ')': emit(Tok::RParen, 1); continue;
      case ',': emit(Tok::Comma, 1); continue;
      case '.': emit(Tok::Dot, 1); continue;
      case ':': emit(Tok::Colon, 1); continue;
      case '~': emit(Tok::Tilde, 1); continue;
      case '&': emit(Tok::Amp, 1); continue;
      case '|': emit(Tok::Bar, 1); continue;
      case '=': emit(Tok::Eq, 1); continue;
      case '+': emit(Tok::Plus, 1); continue;
      case '*': emit(Tok::Star, 1); continue;
      case '@': emit(Tok::At, 1); continue;
      case '^': emit(Tok::Caret, 1); continue;
      default:
        throw LangError(ErrorKind::Syntax, pos, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(idx_ + ahead, toks_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_keyword(std::string_view kw) const { return at(Tok::Ident) && peek().text == kw; }

  Token take() {
    Token t = peek();
    if (idx_ < toks_.size() - 1) ++idx_;
    return t;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw LangError(ErrorKind::Syntax, peek().pos, what + ", found " + describe(peek()));
  }

  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return take();
  }

  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) fail("expected '" + std::string(kw) + "'");
    take();
  }

  /// Identifier that is not a keyword.
  Token name(const char* what) {
    if (!at(Tok::Ident) || is_keyword(peek().text)) fail(std::string("expected ") + what);
    return take();
  }

  Token symbol_name(const char* what) {
    Token t = name(what);
    if (fol::is_reserved_symbol(t.text)) {
      throw LangError(ErrorKind::ReservedSymbol, t.pos,
                      "symbol '" + t.text + "' is reserved for Skolem functions");
    }
    return t;
  }

  // ---- terms ----

  fol::Term term() {
    fol::Term left = product();
    while (at(Tok::Plus)) {
      take();
      left = fol::Term::fun("+", {left, product()});
    }
    return left;
  }

  fol::Term product() {
    fol::Term left = term_atom();
    while (at(Tok::Star)) {
      take();
      left = fol::Term::fun("*", {left, term_atom()});
    }
    return left;
  }

  fol::Term term_atom() {
    if (at(Tok::Number)) return fol::Term::constant(take().text);
    if (at(Tok::LParen)) {
      take();
      fol::Term t = term();
      expect(Tok::RParen, "')'");
      return t;
    }
    const Token id = symbol_name("a term");
    if (fol::is_variable_name(id.text)) {
      if (at(Tok::LParen)) fail("variable '" + id.text + "' cannot be applied to arguments");
      return fol::Term::var(id.text);
    }
    return fol::Term::fun(id.text, term_args());
  }

  std::vector<fol::Term> term_args() {
    std::vector<fol::Term> args;
    if (!at(Tok::LParen)) return args;
    take();
    args.push_back(term());
    while (at(Tok::Comma)) {
      take();
      args.push_back(term());
    }
    expect(Tok::RParen, "',' or ')'");
    return args;
  }

  // ---- formulas ----

  RawAnnotated formula() {
    RawAnnotated left = disjunction();
    if (!at(Tok::Arrow)) return left;
    const SourcePos pos = take().pos;
    return binary(RawAnnotated::Kind::Implies, std::move(left), formula(), pos);
  }

  RawAnnotated disjunction() {
    RawAnnotated left = conjunction();
    while (at(Tok::Bar)) {
      const SourcePos pos = take().pos;
      left = binary(RawAnnotated::Kind::Or, std::move(left), conjunction(), pos);
    }
    return left;
  }

  RawAnnotated conjunction() {
    RawAnnotated left = unary();
    while (at(Tok::Amp)) {
      const SourcePos pos = take().pos;
      left = binary(RawAnnotated::Kind::And, std::move(left), unary(), pos);
    }
    return left;
  }

  RawAnnotated unary() {
    const SourcePos pos = peek().pos;
    if (at(Tok::Tilde)) {
      take();
      RawAnnotated r;
      r.kind = RawAnnotated::Kind::Not;
      r.pos = pos;
      r.children.push_back(unary());
      return r;
    }
    if (at_keyword("forall") || at_keyword("exists")) {
      const bool universal = take().text == "forall";
      const Token v = name("a variable");
      if (!fol::is_variable_name(v.text)) {
        throw LangError(ErrorKind::Syntax, v.pos,
                        "'" + v.text + "' is not a variable (variables start with u-z)");
      }
      RawAnnotated r;
      r.kind = universal ? RawAnnotated::Kind::Forall : RawAnnotated::Kind::Exists;
      r.variable = v.text;
      r.pos = pos;
      r.children.push_back(unary());
      return r;
    }
    RawAnnotated p = primary();
    while (at(Tok::Caret)) {
      const SourcePos apos = take().pos;
      const Token agent = name("an agent name after '^'");
      if (p.annotation) {
        // (F^a)^b switches environment just like an inner annotation.
        throw LangError(ErrorKind::NestedAnnotation, apos,
                        "annotation '^" + agent.text + "' wraps a formula already annotated with '^" +
                            p.annotation->name + "'");
      }
      p.annotation = AgentId{agent.text};
      p.pos = apos;
    }
    return p;
  }

  RawAnnotated primary() {
    const SourcePos pos = peek().pos;
    if (at_keyword("true") || at_keyword("false")) {
      RawAnnotated r;
      r.kind = take().text == "true" ? RawAnnotated::Kind::Top : RawAnnotated::Kind::Bottom;
      r.pos = pos;
      return r;
    }
    if (auto eq = try_equality()) return std::move(*eq);
    if (at(Tok::LParen)) {
      take();
      RawAnnotated inner = formula();
      expect(Tok::RParen, "')'");
      return inner;
    }
    const Token id = symbol_name("a formula");
    if (fol::is_variable_name(id.text)) {
      throw LangError(ErrorKind::Syntax, id.pos,
                      "variable '" + id.text + "' used as a formula (predicates must not start with u-z)");
    }
    RawAnnotated r;
    r.kind = RawAnnotated::Kind::Atom;
    r.pos = pos;
    r.atom = fol::Formula::atom(id.text, term_args());
    return r;
  }

  std::optional<RawAnnotated> try_equality() {
    const std::size_t saved = idx_;
    const SourcePos pos = peek().pos;
    try {
      fol::Term lhs = term();
      if (!at(Tok::Eq) && !at(Tok::Neq)) {
        idx_ = saved;
        return std::nullopt;
      }
      const bool negated = take().kind == Tok::Neq;
      fol::Term rhs = term();
      RawAnnotated eq;
      eq.kind = RawAnnotated::Kind::Atom;
      eq.pos = pos;
      eq.atom = fol::Formula::equality(std::move(lhs), std::move(rhs));
      if (!negated) return eq;
      RawAnnotated r;
      r.kind = RawAnnotated::Kind::Not;
      r.pos = pos;
      r.children.push_back(std::move(eq));
      return r;
    } catch (const LangError& e) {
      if (e.kind() == ErrorKind::ReservedSymbol) throw;
      idx_ = saved;
      return std::nullopt;
    }
  }

  static RawAnnotated binary(RawAnnotated::Kind kind, RawAnnotated l, RawAnnotated r, SourcePos pos) {
    RawAnnotated out;
    out.kind = kind;
    out.pos = pos;
    out.children.push_back(std::move(l));
    out.children.push_back(std::move(r));
    return out;
  }

  // ---- networks ----

  AgentNetwork network(SourceMap& positions) {
    AgentNetwork net;
    bool have_query = false;
    while (!at(Tok::End)) {
      if (at_keyword("let")) {
        binding(net, positions);
      } else if (at_keyword("agent")) {
        agent(net, positions);
      } else if (at(Tok::QueryMark)) {
        const SourcePos pos = take().pos;
        if (have_query) throw LangError(ErrorKind::DuplicateQuery, pos, "more than one '?-' query");
        net.query.goal = plain_formula();
        expect(Tok::At, "'@' and the target agent");
        net.query.target = AgentId{name("an agent name").text};
        expect(Tok::Dot, "'.'");
        positions.query = pos;
        have_query = true;
      } else {
        fail("expected 'let', 'agent' or '?-'");
      }
    }
    if (!have_query) throw LangError(ErrorKind::MissingQuery, peek().pos, "no '?- <goal> @ <agent>.' query");
    return net;
  }

  void binding(AgentNetwork& net, SourceMap& positions) {
    const SourcePos pos = take().pos;
    const Token id = symbol_name("a predicate placeholder name");
    if (fol::is_variable_name(id.text)) {
      throw LangError(ErrorKind::Syntax, id.pos, "placeholder '" + id.text + "' must not start with u-z");
    }
    PredicateBinding b;
    b.name = id.text;
    if (at(Tok::LParen)) {
      take();
      do {
        const Token v = name("a hole variable");
        if (!fol::is_variable_name(v.text)) {
          throw LangError(ErrorKind::Syntax, v.pos, "hole '" + v.text + "' is not a variable");
        }
        b.holes.push_back(v.text);
      } while (at(Tok::Comma) && (take(), true));
      expect(Tok::RParen, "')'");
    }
    expect(Tok::Define, "':='");
    b.body = plain_formula();
    expect(Tok::Dot, "'.'");
    if (net.bindings.contains(b.name)) {
      throw LangError(ErrorKind::InvalidBinding, pos, "placeholder '" + b.name + "' bound twice");
    }
    positions.bindings[b.name] = pos;
    net.bindings.emplace(b.name, std::move(b));
  }

  void agent(AgentNetwork& net, SourceMap& positions) {
    const SourcePos pos = take().pos;
    Agent a;
    a.id = AgentId{name("an agent name").text};
    expect(Tok::Dot, "'.'");
    while (!at_keyword("end")) {
      if (at(Tok::End)) fail("expected 'end.' closing agent '" + a.id.name + "'");
      const SourcePos epos = peek().pos;
      KBEntry e = entry(a.entries.size() + 1);
      positions.entries.try_emplace({a.id.name, e.label}, epos);
      a.entries.push_back(std::move(e));
    }
    take();
    expect(Tok::Dot, "'.' after 'end'");
    positions.agents.try_emplace(a.id.name, pos);
    net.agents.push_back(std::move(a));
  }

  KBEntry entry(std::size_t index) {
    KBEntry e;
    if (at_keyword("axiom")) {
      take();
      e.kind = EntryKind::Axiom;
      if (at(Tok::Ident) && peek(1).kind == Tok::Colon) {
        e.label = name("a label").text;
        take();
      } else {
        e.label = "ax" + std::to_string(index);
      }
    } else if (at_keyword("query")) {
      take();
      e.kind = EntryKind::QueryKnowledge;
      e.label = name("a label").text;
      expect_keyword("from");
      e.provider = AgentId{name("a provider agent").text};
      expect(Tok::Colon, "':'");
    } else if (at_keyword("schema")) {
      take();
      e.kind = EntryKind::Schema;
      e.label = name("a label").text;
      expect(Tok::LParen, "'(' and schema parameters");
      do {
        const Token p = symbol_name("a schema parameter");
        if (fol::is_variable_name(p.text)) {
          throw LangError(ErrorKind::Syntax, p.pos, "schema parameter '" + p.text + "' must not start with u-z");
        }
        e.schema_params.push_back(p.text);
      } while (at(Tok::Comma) && (take(), true));
      expect(Tok::RParen, "')'");
      expect(Tok::Colon, "':'");
    } else {
      fail("expected 'axiom', 'query', 'schema' or 'end'");
    }
    e.body = plain_formula();
    expect(Tok::Dot, "'.'");
    return e;
  }

  fol::Formula plain_formula();

  bool done() const { return at(Tok::End); }

 private:
  std::vector<Token> toks_;
  std::size_t idx_ = 0;
};

fol::Formula to_formula(const RawAnnotated& r) {
  if (r.annotation) {
    throw LangError(ErrorKind::Syntax, r.pos, "agent annotation '^" + r.annotation->name + "' not allowed here");
  }
  switch (r.kind) {
    case RawAnnotated::Kind::Atom:
      return *r.atom;
    case RawAnnotated::Kind::Top:
      return fol::Formula::top();
    case RawAnnotated::Kind::Bottom:
      return fol::Formula::bottom();
    case RawAnnotated::Kind::Not:
      return fol::Formula::negation(to_formula(r.children[0]));
    case RawAnnotated::Kind::And:
      return fol::Formula::conj(to_formula(r.children[0]), to_formula(r.children[1]));
    case RawAnnotated::Kind::Or:
      return fol::Formula::disj(to_formula(r.children[0]), to_formula(r.children[1]));
    case RawAnnotated::Kind::Implies:
      return fol::Formula::implies(to_formula(r.children[0]), to_formula(r.children[1]));
    case RawAnnotated::Kind::Forall:
      return fol::Formula::forall(r.variable, to_formula(r.children[0]));
    case RawAnnotated::Kind::Exists:
      return fol::Formula::exists(r.variable, to_formula(r.children[0]));
  }
  return fol::Formula::top();
}

fol::Formula Parser::plain_formula() { return fol::rectify(to_formula(formula())); }

}  // namespace

fol::Formula parse_formula(std::string_view text) {
  Parser p(text);
  fol::Formula f = p.plain_formula();
  if (!p.done()) p.fail("expected end of formula");
  return f;
}

fol::Term parse_term(std::string_view text) {
  Parser p(text);
  fol::Term t = p.term();
  if (!p.done()) p.fail("expected end of term");
  return t;
}

RawAnnotated parse_annotated(std::string_view text) {
  Parser p(text);
  RawAnnotated r = p.formula();
  if (!p.done()) p.fail("expected end of formula");
  return r;
}

AgentNetwork parse_network(std::string_view text) {
  Parser p(text);
  SourceMap positions;
  AgentNetwork net = p.network(positions);
  auto findings = validate_network(net, &positions);
  if (!findings.empty()) throw LangError(std::move(findings));
  return net;
}

}  // namespace lemmaflow::lang
