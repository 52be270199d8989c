#include <stdexcept>

#include "lemmaflow/prover/prover.hpp"

namespace lemmaflow::prover {

using fol::Formula;
using fol::Term;

std::vector<Formula> equality_axioms(const fol::Signature& signature) {
  const Term x = Term::var("x");
  const Term y = Term::var("y");
  const Term z = Term::var("z");
  std::vector<Formula> out;
  out.push_back(Formula::forall("x", Formula::equality(x, x)));
  out.push_back(Formula::forall(
      "x", Formula::forall("y", Formula::implies(Formula::equality(x, y), Formula::equality(y, x)))));
  out.push_back(Formula::forall(
      "x", Formula::forall(
               "y", Formula::forall(
                        "z", Formula::implies(Formula::equality(x, y),
                                              Formula::implies(Formula::equality(y, z),
                                                               Formula::equality(x, z)))))));

  for (const auto& [name, info] : signature.symbols()) {
    if (info.arity == 0 || name == "=") continue;
    for (std::size_t pos = 0; pos < info.arity; ++pos) {
      std::vector<std::string> others;
      std::vector<Term> left;
      std::vector<Term> right;
      for (std::size_t i = 0; i < info.arity; ++i) {
        if (i == pos) {
          left.push_back(x);
          right.push_back(y);
        } else {
          others.push_back("z" + std::to_string(i + 1));
          left.push_back(Term::var(others.back()));
          right.push_back(Term::var(others.back()));
        }
      }
      Formula body = info.kind == fol::SymbolKind::Function
                         ? Formula::implies(Formula::equality(x, y),
                                            Formula::equality(Term::fun(name, left), Term::fun(name, right)))
                         : Formula::implies(Formula::equality(x, y),
                                            Formula::implies(Formula::atom(name, left), Formula::atom(name, right)));
      for (auto it = others.rbegin(); it != others.rend(); ++it) body = Formula::forall(*it, body);
      out.push_back(Formula::forall("x", Formula::forall("y", body)));
    }
  }
  return out;
}

namespace {

void check_reserved(const fol::Signature& sig) {
  for (const auto& [name, info] : sig.symbols()) {
    if (fol::is_reserved_symbol(name)) {
      throw IllFormedSequent("symbol '" + name + "' is reserved for Skolem functions");
    }
  }
}

}  // namespace

std::vector<ProblemClause> problem_clauses(const Sequent& s) {
  fol::Signature user;
  try {
    for (const Formula& h : s.hypotheses) user.add(h);
    user.add(s.goal);
  } catch (const fol::ArityError& e) {
    throw IllFormedSequent(std::string("ill-formed sequent: ") + e.what());
  }
  check_reserved(user);

  fol::SkolemSupply skolems;
  std::vector<ProblemClause> out;
  auto push = [&](std::vector<fol::Clause> cs, StepRule rule) {
    for (auto& c : cs) out.push_back({fol::normalize_variables(c), rule});
  };
  for (const Formula& h : s.hypotheses) push(fol::clausify(h, skolems), StepRule::Input);
  push(fol::clausify(Formula::negation(fol::universal_closure(s.goal)), skolems), StepRule::Input);

  fol::Signature sig;
  for (const auto& pc : out) {
    for (const auto& l : pc.clause.literals()) {
      sig.declare(l.predicate, fol::SymbolKind::Predicate, l.args.size());
      for (const Term& t : l.args) sig.add(t);
    }
  }
  if (sig.has_equality()) {
    const std::vector<Formula> axioms = equality_axioms(sig);
    // clausify drops x = x as a tautology; the prover still needs it.
    out.push_back({fol::Clause({{true, "=", {Term::var("x0"), Term::var("x0")}}}), StepRule::EqualityAxiom});
    for (std::size_t i = 1; i < axioms.size(); ++i) push(fol::clausify(axioms[i]), StepRule::EqualityAxiom);
  }
  return out;
}

}  // namespace lemmaflow::prover
