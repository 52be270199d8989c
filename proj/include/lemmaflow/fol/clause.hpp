#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "lemmaflow/fol/formula.hpp"
#include "lemmaflow/fol/signature.hpp"
#include "lemmaflow/fol/substitution.hpp"

namespace lemmaflow::fol {

/// Signed atom; equality literals use the predicate "=".
struct Literal {
  bool positive = true;
  std::string predicate;
  std::vector<Term> args;

  bool is_equality() const noexcept { return predicate == "="; }
  Literal complement() const { return {!positive, predicate, args}; }
  Literal apply(const Substitution& s) const;
  std::size_t weight() const noexcept;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend std::strong_ordering operator<=>(const Literal& a, const Literal& b) noexcept;
};

std::string to_string(const Literal& l);

/// Disjunction of literals with set semantics: kept sorted and duplicate
/// free. The empty clause is falsity.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals);

  const std::vector<Literal>& literals() const noexcept { return literals_; }
  std::size_t size() const noexcept { return literals_.size(); }
  bool empty() const noexcept { return literals_.empty(); }
  bool is_tautology() const;
  std::size_t weight() const noexcept;
  std::vector<std::string> variables() const;

  Clause apply(const Substitution& s) const;

  friend bool operator==(const Clause&, const Clause&) = default;
  friend auto operator<=>(const Clause& a, const Clause& b) noexcept {
    return a.literals_ <=> b.literals_;
  }

 private:
  std::vector<Literal> literals_;
};

/// "[]" for the empty clause, literals joined by " | " otherwise.
std::string to_string(const Clause& c);

/// Universal closure of the disjunction.
Formula to_formula(const Clause& c);

/// Renames variables to `<prefix>0, <prefix>1, ...` in order of first
/// occurrence in the sorted literal list; the prefix must start with a
/// variable letter. Variants map to equal clauses.
Clause normalize_variables(const Clause& c, const std::string& prefix = "x");

/// Produces Skolem symbols `sk0, sk1, ...` from a reserved namespace that
/// user input may not use.
class SkolemSupply {
 public:
  std::string next() { return "sk" + std::to_string(counter_++); }

 private:
  std::size_t counter_ = 0;
};

bool is_reserved_symbol(const std::string& name);

/// Equisatisfiable clause set: universal closure, NNF, rectification,
/// Skolemisation, CNF distribution. Tautologies are dropped.
std::vector<Clause> clausify(const Formula& f, SkolemSupply& skolems);
std::vector<Clause> clausify(const Formula& f);

}  // namespace lemmaflow::fol
