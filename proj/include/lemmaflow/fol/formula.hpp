#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "lemmaflow/fol/term.hpp"

namespace lemmaflow::fol {

/// Immutable first-order formula. Equality is a distinct node kind whose
/// two sides are exposed through args() like an ordinary atom.
class Formula {
 public:
  enum class Kind { Atom, Equality, Top, Bottom, Not, And, Or, Implies, Forall, Exists };

  static Formula atom(std::string predicate, std::vector<Term> args = {});
  static Formula equality(Term lhs, Term rhs);
  static Formula top();
  static Formula bottom();
  static Formula negation(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  Kind kind() const noexcept;
  bool is_atomic() const noexcept { return kind() == Kind::Atom || kind() == Kind::Equality; }
  bool is_binary() const noexcept;
  bool is_quantifier() const noexcept { return kind() == Kind::Forall || kind() == Kind::Exists; }

  /// Predicate symbol of an Atom; "=" for Equality.
  const std::string& predicate() const;
  std::span<const Term> args() const;
  const Term& lhs() const;
  const Term& rhs() const;

  /// Operand of Not, body of a quantifier.
  const Formula& operand() const;
  const Formula& left() const;
  const Formula& right() const;
  /// Bound variable of a quantifier.
  const std::string& variable() const;

  std::size_t hash() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b) noexcept;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::set<std::string> free_variables(const Formula& f);
/// Every variable name occurring anywhere, bound or free.
std::set<std::string> all_variables(const Formula& f);
bool is_closed(const Formula& f);
bool is_quantifier_free(const Formula& f);

/// Prefixes one `forall` per free variable, in name order.
Formula universal_closure(const Formula& f);

/// Renames bound variables that shadow an enclosing binder or coincide
/// with a free variable of `f`. Clash-free formulas are returned unchanged.
Formula rectify(const Formula& f);

/// A name derived from `base` that is not in `taken`.
std::string fresh_variable(const std::string& base, const std::set<std::string>& taken);

/// Negation-normal form: no Implies, negation only on atoms and equalities.
Formula nnf(const Formula& f);

/// Canonical ASCII rendering: `~ & | -> forall exists = !=` with minimal
/// parentheses; reparses to an identical tree.
std::string to_string(const Formula& f);

}  // namespace lemmaflow::fol
