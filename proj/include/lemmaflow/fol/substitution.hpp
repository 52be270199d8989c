#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>

#include "lemmaflow/fol/formula.hpp"
#include "lemmaflow/fol/term.hpp"

namespace lemmaflow::fol {

/// Finite map from variable names to terms.
class Substitution {
 public:
  using Map = std::map<std::string, Term>;

  Substitution() = default;
  explicit Substitution(Map bindings) : bindings_(std::move(bindings)) {}

  bool empty() const noexcept { return bindings_.empty(); }
  std::size_t size() const noexcept { return bindings_.size(); }
  const Map& bindings() const noexcept { return bindings_; }
  const Term* lookup(const std::string& var) const;
  bool binds(const std::string& var) const { return bindings_.contains(var); }

  /// Replaces any existing binding.
  void bind(std::string var, Term t);
  void erase(const std::string& var) { bindings_.erase(var); }

  Term apply(const Term& t) const;

  /// No domain variable occurs in the range.
  bool is_idempotent() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  Map bindings_;
};

std::string to_string(const Substitution& s);

/// Capture-avoiding application to free occurrences.
Formula substitute(const Formula& f, const Substitution& s);

/// Most general unifier, idempotent; nullopt on clash or occurs-check.
std::optional<Substitution> unify(const Term& a, const Term& b);

/// Extends `s` so that a and b become equal. Returns false (leaving `s`
/// in an unspecified state) when no extension exists. The result is in
/// triangular form; call `resolved` to make it idempotent.
bool unify_into(const Term& a, const Term& b, Substitution& s);
bool unify_args(std::span<const Term> a, std::span<const Term> b, Substitution& s);
Substitution resolved(const Substitution& triangular);

/// One-way matching: extends `s` so that s(pattern) == target, binding
/// only pattern variables.
bool match_into(const Term& pattern, const Term& target, Substitution& s);

}  // namespace lemmaflow::fol
