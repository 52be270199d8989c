#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "lemmaflow/fol/formula.hpp"

namespace lemmaflow::fol {

enum class SymbolKind { Function, Predicate };

struct SymbolInfo {
  SymbolKind kind;
  std::size_t arity;
  friend bool operator==(const SymbolInfo&, const SymbolInfo&) = default;
};

class ArityError : public std::runtime_error {
 public:
  ArityError(std::string symbol, const std::string& what)
      : std::runtime_error(what), symbol_(std::move(symbol)) {}
  const std::string& symbol() const noexcept { return symbol_; }

 private:
  std::string symbol_;
};

/// Symbol/arity table. A symbol has one kind and one arity per problem.
class Signature {
 public:
  /// Throws ArityError when `name` is already recorded differently.
  void declare(const std::string& name, SymbolKind kind, std::size_t arity);
  void add(const Term& t);
  void add(const Formula& f);

  bool contains(const std::string& name) const { return symbols_.contains(name); }
  const SymbolInfo* find(const std::string& name) const;
  bool has_equality() const { return symbols_.contains("="); }
  const std::map<std::string, SymbolInfo>& symbols() const noexcept { return symbols_; }

 private:
  std::map<std::string, SymbolInfo> symbols_;
};

}  // namespace lemmaflow::fol
