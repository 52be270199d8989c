#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lemmaflow/fol/formula.hpp"
#include "lemmaflow/fol/term.hpp"
#include "lemmaflow/lang/annotated.hpp"
#include "lemmaflow/lang/network.hpp"
#include "lemmaflow/prover/prover.hpp"

namespace lemmaflow::testkit {

/// Random syntax over a small fixed signature. Binders get fresh names,
/// so generated formulas are already rectified and closed.
class FormulaGen {
 public:
  explicit FormulaGen(unsigned seed) : rng_(seed) {}

  std::vector<std::string> constants{"a", "b"};
  std::vector<std::pair<std::string, std::size_t>> functions{{"f", 1}};
  std::vector<std::pair<std::string, std::size_t>> predicates{{"p", 1}, {"q", 1}};
  bool equality = true;

  fol::Term term(const std::vector<std::string>& scope, int depth);
  fol::Term ground_term(int depth) { return term({}, depth); }
  fol::Formula atom(const std::vector<std::string>& scope);
  fol::Formula formula(int depth, std::vector<std::string> scope = {});
  /// Connectives only, no quantifiers.
  fol::Formula quantifier_free(int depth, const std::vector<std::string>& scope);

  prover::Sequent sequent();

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  std::mt19937& rng() { return rng_; }

 private:
  std::string fresh_var();

  std::mt19937 rng_;
  std::size_t vars_ = 0;
};

/// A valid network: every provider declared, labels unique, schemas bound.
lang::AgentNetwork random_network(FormulaGen& gen);

/// Random env-switching formula whose leaves carry one of a, b, m1.
lang::AnnotatedFormula random_annotated(FormulaGen& gen, int depth);

/// Puts an extra annotation on some node strictly inside an annotated
/// body. False if the tree offers no such node.
bool plant_nested(lang::RawAnnotated& r, FormulaGen& gen, bool inside = false);

}  // namespace lemmaflow::testkit
