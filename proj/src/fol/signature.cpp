#include "lemmaflow/fol/signature.hpp"

namespace lemmaflow::fol {

void Signature::declare(const std::string& name, SymbolKind kind, std::size_t arity) {
  auto [it, inserted] = symbols_.try_emplace(name, SymbolInfo{kind, arity});
  if (inserted || it->second == SymbolInfo{kind, arity}) return;
  const auto describe = [](const SymbolInfo& s) {
    return std::string(s.kind == SymbolKind::Function ? "function" : "predicate") + "/" +
           std::to_string(s.arity);
  };
  throw ArityError(name, "symbol '" + name + "' used as " + describe({kind, arity}) +
                             " but previously as " + describe(it->second));
}

void Signature::add(const Term& t) {
  if (t.is_var()) return;
  declare(t.name(), SymbolKind::Function, t.args().size());
  for (const Term& a : t.args()) add(a);
}

void Signature::add(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Equality:
      declare(f.predicate(), SymbolKind::Predicate, f.args().size());
      for (const Term& a : f.args()) add(a);
      return;
    case Formula::Kind::Top:
    case Formula::Kind::Bottom:
      return;
    case Formula::Kind::Not:
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      add(f.operand());
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      add(f.left());
      add(f.right());
      return;
  }
}

const SymbolInfo* Signature::find(const std::string& name) const {
  auto it = symbols_.find(name);
  return it == symbols_.end() ? nullptr : &it->second;
}

}  // namespace lemmaflow::fol
