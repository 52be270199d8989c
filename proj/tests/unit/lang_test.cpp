#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "generators.hpp"
#include "lemmaflow/fol/substitution.hpp"
#include "lemmaflow/lang/annotated.hpp"
#include "lemmaflow/lang/network.hpp"
#include "lemmaflow/lang/parser.hpp"

using namespace lemmaflow;
using fol::Formula;
using lang::AnnotatedFormula;
using lang::ErrorKind;
using lang::parse_formula;

namespace {

ErrorKind first_error(std::string_view text) {
  try {
    lang::parse_network(text);
  } catch (const lang::LangError& e) {
    return e.kind();
  }
  FAIL("input was accepted");
  return ErrorKind::Syntax;
}

bool has_error(const lang::LangError& e, ErrorKind kind) {
  return std::any_of(e.diagnostics().begin(), e.diagnostics().end(),
                     [&](const lang::Diagnostic& d) { return d.kind == kind; });
}

}  // namespace

TEST_SUITE("formula syntax") {
  TEST_CASE("precedence and associativity") {
    CHECK(parse_formula("p | q & r") == Formula::disj(Formula::atom("p"), Formula::conj(Formula::atom("q"), Formula::atom("r"))));
    CHECK(parse_formula("p -> q -> r") ==
          Formula::implies(Formula::atom("p"), Formula::implies(Formula::atom("q"), Formula::atom("r"))));
    CHECK(parse_formula("~p & q") == Formula::conj(Formula::negation(Formula::atom("p")), Formula::atom("q")));
    CHECK(parse_formula("x + y * z = 0") == parse_formula("x + (y * z) = 0"));
    CHECK(parse_formula("a != b") == Formula::negation(parse_formula("a = b")));
  }

  TEST_CASE("rendering reparses to the same tree") {
    testkit::FormulaGen gen(17);
    gen.functions.push_back({"+", 2});
    gen.constants.push_back("0");
    for (int i = 0; i < 500; ++i) {
      const Formula f = gen.formula(5);
      CAPTURE(fol::to_string(f));
      CHECK(parse_formula(fol::to_string(f)) == f);
    }
  }

  TEST_CASE("parsing rectifies shadowed binders") {
    const Formula f = parse_formula("forall x (p(x) & exists x q(x))");
    CHECK(fol::rectify(f) == f);
    CHECK(f.operand().right().variable() != "x");
  }

  TEST_CASE("skolem names are reserved") {
    CHECK_THROWS_AS(parse_formula("p(sk0)"), lang::LangError);
    CHECK_NOTHROW(parse_formula("p(skate)"));
  }

  TEST_CASE("syntax errors carry a position") {
    try {
      parse_formula("p &\n  & q");
      FAIL("accepted");
    } catch (const lang::LangError& e) {
      CHECK(e.kind() == ErrorKind::Syntax);
      CHECK(e.pos().line == 2);
      CHECK(e.pos().column == 3);
    }
  }
}

TEST_SUITE("networks") {
  TEST_CASE("the Peano network") {
    const auto net = lang::parse_network(testkit::read_fixture("peano.lfd"));
    REQUIRE(net.agents.size() == 2);
    const auto* m1 = net.find(AgentId{"m1"});
    const auto* m = net.find(AgentId{"m"});
    REQUIRE(m1);
    REQUIRE(m);
    CHECK(m1->entries.size() == 7);
    CHECK(std::all_of(m1->entries.begin(), m1->entries.end(),
                      [](const auto& e) { return e.kind == lang::EntryKind::Axiom; }));
    REQUIRE(m->entries.size() == 3);
    CHECK(m->entries[0].kind == lang::EntryKind::QueryKnowledge);
    CHECK(m->entries[0].provider == AgentId{"m1"});
    CHECK(m->entries[1].kind == lang::EntryKind::QueryKnowledge);
    CHECK(m->entries[2].kind == lang::EntryKind::Schema);
    CHECK(m->entries[2].schema_params == std::vector<std::string>{"Q"});
    CHECK(net.query.goal == parse_formula("forall x (x + 1 = 1 + x)"));
    CHECK(net.query.target == AgentId{"m"});
    CHECK(net.entry_count() == 10);
  }

  TEST_CASE("minimal network") {
    const auto net = lang::parse_network("agent a. axiom p. end. ?- p @ a.");
    REQUIRE(net.agents.size() == 1);
    REQUIRE(net.agents[0].entries.size() == 1);
    CHECK(net.agents[0].entries[0].label == "ax1");
    CHECK(net.query.goal == Formula::atom("p"));
  }

  TEST_CASE("validation errors are distinct") {
    CHECK(first_error("agent a. query L from m2: p. end. ?- p @ a.") == ErrorKind::UnknownProvider);
    CHECK(first_error("agent a. end. agent a. end. ?- p @ a.") == ErrorKind::DuplicateAgent);
    CHECK(first_error("agent a. schema s(P): P(c). end. ?- p @ a.") == ErrorKind::UnboundSchemaParameter);
    CHECK(first_error("agent a. axiom l: p. axiom l: q. end. ?- p @ a.") == ErrorKind::DuplicateLabel);
    CHECK(first_error("agent a. end. ?- p @ b.") == ErrorKind::UnknownTarget);
    CHECK(first_error("agent a. query L from a: p. end. ?- p @ a.") == ErrorKind::SelfQuery);
    CHECK(first_error("let P(x) := p(x). agent a. axiom P(c). end. ?- p(c) @ a.") == ErrorKind::MisplacedPlaceholder);
    CHECK(first_error("agent a. axiom p(c). axiom p(c, c). end. ?- true @ a.") == ErrorKind::ArityMismatch);
    CHECK(first_error("agent a. end.") == ErrorKind::MissingQuery);
    CHECK(first_error("agent a. end. ?- p @ a. ?- p @ a.") == ErrorKind::DuplicateQuery);
    CHECK(first_error("let P(x) := p(y). agent a. end. ?- true @ a.") == ErrorKind::InvalidBinding);
  }

  TEST_CASE("every validation finding is reported") {
    try {
      lang::parse_network("agent a. query L from nobody: p. query L from a: q. end. ?- p @ z.");
      FAIL("accepted");
    } catch (const lang::LangError& e) {
      CHECK(has_error(e, ErrorKind::UnknownProvider));
      CHECK(has_error(e, ErrorKind::DuplicateLabel));
      CHECK(has_error(e, ErrorKind::SelfQuery));
      CHECK(has_error(e, ErrorKind::UnknownTarget));
    }
  }

  TEST_CASE("malformed fixture reports line and column") {
    try {
      lang::parse_network(testkit::read_fixture("malformed.lfd"));
      FAIL("accepted");
    } catch (const lang::LangError& e) {
      CHECK(e.kind() == ErrorKind::Syntax);
      CHECK(e.pos().line == 3);
      CHECK(e.pos().column == 1);
    }
  }

  TEST_CASE("render then parse is the identity on generated networks") {
    testkit::FormulaGen gen(2024);
    int schemas = 0, queries = 0;
    for (int i = 0; i < 600; ++i) {
      const auto net = testkit::random_network(gen);
      const std::string text = lang::render_network(net);
      CAPTURE(text);
      REQUIRE(lang::validate_network(net).empty());
      const auto back = lang::parse_network(text);
      CHECK(back == net);
      CHECK(lang::render_network(back) == text);
      for (const auto& a : net.agents) {
        for (const auto& e : a.entries) {
          schemas += e.kind == lang::EntryKind::Schema;
          queries += e.kind == lang::EntryKind::QueryKnowledge;
        }
      }
    }
    CHECK(schemas > 50);
    CHECK(queries > 50);
  }
}

TEST_SUITE("schemas") {
  TEST_CASE("induction instance") {
    const auto net = lang::parse_network(testkit::read_fixture("peano.lfd"));
    const auto& schema = net.find(AgentId{"m"})->entries[2];
    CHECK(lang::instantiate_schema(schema, net.bindings.at("Q")) ==
          parse_formula("(0 + 1 = 1 + 0 & forall x (x + 1 = 1 + x -> (x + 1) + 1 = 1 + (x + 1)))"
                        " -> forall x (x + 1 = 1 + x)"));
  }

  TEST_CASE("plain instance and arity mismatch") {
    const auto net = lang::parse_network("let Q(x) := p(x). agent a. schema s(Q): Q(0) -> Q(0). end. ?- true @ a.");
    const auto& schema = net.agents[0].entries[0];
    CHECK(lang::instantiate_schema(schema, net.bindings.at("Q")) == parse_formula("p(0) -> p(0)"));
    lang::PredicateBinding two{"Q", {"x", "y"}, parse_formula("r(x, y)")};
    CHECK_THROWS_AS(lang::instantiate_schema(schema, two), lang::LangError);
    try {
      lang::instantiate_schema(schema, two);
    } catch (const lang::LangError& e) {
      CHECK(e.kind() == ErrorKind::ArityMismatch);
    }
  }

  TEST_CASE("instantiation commutes with substitution") {
    testkit::FormulaGen gen(99);
    const lang::PredicateBinding binding{"P", {"u0"}, parse_formula("forall u9 (r(u0, u9) | u0 = b)")};
    gen.predicates.push_back({"P", 1});
    int checked = 0;
    for (int i = 0; i < 800; ++i) {
      Formula f = gen.formula(4);
      while (f.is_quantifier()) f = f.operand();
      fol::Substitution s;
      for (const auto& v : fol::free_variables(f)) s.bind(v, gen.ground_term(1));
      if (s.empty()) continue;
      ++checked;
      const Formula lhs = lang::instantiate_placeholder(fol::substitute(f, s), binding);
      const Formula rhs = fol::substitute(lang::instantiate_placeholder(f, binding), s);
      CAPTURE(fol::to_string(f));
      CHECK(fol::to_string(lhs) == fol::to_string(rhs));
      CHECK(lhs == rhs);
    }
    CHECK(checked > 100);
  }
}

TEST_SUITE("annotated formulas") {
  TEST_CASE("agent expansion") {
    const auto net = lang::parse_network("agent a. axiom p. axiom q. end. agent e. end. ?- r @ a.");
    const AnnotatedFormula x = lang::expand_agent(net, AgentId{"a"}, Formula::atom("r"));
    const AgentId a{"a"};
    CHECK(x == AnnotatedFormula::disj(
                   AnnotatedFormula::negation(AnnotatedFormula::leaf(Formula::atom("p"), a)),
                   AnnotatedFormula::disj(AnnotatedFormula::negation(AnnotatedFormula::leaf(Formula::atom("q"), a)),
                                          AnnotatedFormula::leaf(Formula::atom("r"), a))));
    CHECK(lang::expand_agent(net, AgentId{"e"}, Formula::atom("r")) ==
          AnnotatedFormula::leaf(Formula::atom("r"), AgentId{"e"}));
  }

  TEST_CASE("agent m of the Peano network") {
    const auto net = lang::parse_network(testkit::read_fixture("peano.lfd"));
    const AnnotatedFormula x = lang::expand_agent(net, AgentId{"m"}, net.query.goal);
    CHECK(x.leaf_count() == 4);
    std::vector<std::string> envs;
    const AnnotatedFormula* cur = &x;
    while (cur->kind() == AnnotatedFormula::Kind::Or) {
      envs.push_back(cur->left().operand().env().name);
      cur = &cur->right();
    }
    envs.push_back(cur->env().name);
    CHECK(envs == std::vector<std::string>{"m1", "m1", "m", "m"});
    CHECK(x.left().operand().body() == parse_formula("0 + 1 = 1 + 0"));
  }

  TEST_CASE("expansion always validates") {
    testkit::FormulaGen gen(5150);
    for (int i = 0; i < 200; ++i) {
      const auto net = testkit::random_network(gen);
      for (const auto& agent : net.agents) {
        const AnnotatedFormula x = lang::expand_agent(net, agent.id, net.query.goal);
        CHECK(x.leaf_count() == agent.entries.size() + 1);
        CHECK(lang::validate_annotated(lang::to_raw(x)) == x);
      }
    }
  }

  TEST_CASE("definition examples") {
    CHECK_NOTHROW(lang::validate_annotated(lang::parse_annotated("p^a & q^b")));
    CHECK_NOTHROW(lang::validate_annotated(lang::parse_annotated("p^a")));
    CHECK_NOTHROW(lang::validate_annotated(lang::parse_annotated("~(forall x p(x))^a -> (q & r)^b")));
    try {
      lang::validate_annotated(lang::parse_annotated("(p & q^b)^a"));
      FAIL("accepted");
    } catch (const lang::LangError& e) {
      CHECK(e.kind() == ErrorKind::NestedAnnotation);
      CHECK(std::string(e.what()).find("^b") != std::string::npos);
      CHECK(std::string(e.what()).find("/1") != std::string::npos);
    }
    try {
      lang::validate_annotated(lang::parse_annotated("p & q^a"));
      FAIL("accepted");
    } catch (const lang::LangError& e) {
      CHECK(e.kind() == ErrorKind::MissingAnnotation);
    }
    CHECK_THROWS_AS(lang::validate_annotated(lang::parse_annotated("forall x (p(x)^a)")), lang::LangError);
    CHECK_THROWS_AS(lang::validate_annotated(lang::parse_annotated("((p^a)^b)")), lang::LangError);
  }

  TEST_CASE("conforming inputs are accepted and nested ones rejected") {
    testkit::FormulaGen gen(77);
    int rejected = 0;
    for (int i = 0; i < 500; ++i) {
      const AnnotatedFormula x = testkit::random_annotated(gen, 3);
      const std::string text = lang::to_string(x);
      CAPTURE(text);
      const AnnotatedFormula back = lang::validate_annotated(lang::parse_annotated(text));
      CHECK(back == x);

      lang::RawAnnotated raw = lang::to_raw(x);
      if (!testkit::plant_nested(raw, gen, false)) continue;
      ++rejected;
      try {
        lang::validate_annotated(raw);
        FAIL("nested annotation accepted");
      } catch (const lang::LangError& e) {
        CHECK(e.kind() == ErrorKind::NestedAnnotation);
      }
    }
    CHECK(rejected > 250);
  }
}
