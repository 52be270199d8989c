#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lemmaflow::fol {

/// Variables are identifiers whose first character is in 'u'..'z'; every
/// other identifier (including numerals) names a function or predicate.
bool is_variable_name(std::string_view name) noexcept;

/// Immutable first-order term. Copies share structure.
class Term {
 public:
  enum class Kind { Variable, Function };

  static Term var(std::string name);
  static Term fun(std::string symbol, std::vector<Term> args = {});
  static Term constant(std::string symbol) { return fun(std::move(symbol)); }

  Kind kind() const noexcept;
  bool is_var() const noexcept { return kind() == Kind::Variable; }
  bool is_constant() const noexcept { return !is_var() && args().empty(); }

  /// Variable name or function symbol.
  const std::string& name() const noexcept;
  std::span<const Term> args() const noexcept;
  std::size_t hash() const noexcept;
  /// Number of symbol occurrences.
  std::size_t size() const noexcept;
  std::size_t depth() const noexcept;

  bool same_node(const Term& other) const noexcept { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b) noexcept;
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

bool occurs_in(std::string_view var, const Term& t) noexcept;
void collect_variables(const Term& t, std::vector<std::string>& out);

/// Infix rendering for `+` and `*`, prefix application otherwise.
std::string to_string(const Term& t);

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

}  // namespace lemmaflow::fol
