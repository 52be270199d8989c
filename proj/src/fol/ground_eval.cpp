#include "lemmaflow/fol/ground_eval.hpp"

namespace lemmaflow::fol {

std::size_t Interpretation::index(std::span<const int> args, int domain_size) {
  std::size_t idx = 0;
  std::size_t scale = 1;
  for (int a : args) {
    idx += static_cast<std::size_t>(a) * scale;
    scale *= static_cast<std::size_t>(domain_size);
  }
  return idx;
}

namespace {

std::size_t table_size(std::size_t arity, int n) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < arity; ++i) size *= static_cast<std::size_t>(n);
  return size;
}

}  // namespace

int ground_eval(const Term& t, const Interpretation& interp, const Assignment& env) {
  if (t.is_var()) {
    auto it = env.find(t.name());
    if (it == env.end()) throw EvalError("unassigned variable '" + t.name() + "'");
    return it->second;
  }
  auto it = interp.functions.find(t.name());
  if (it == interp.functions.end()) throw EvalError("function '" + t.name() + "' not interpreted");
  if (it->second.size() != table_size(t.args().size(), interp.domain_size)) {
    throw EvalError("table size mismatch for function '" + t.name() + "'");
  }
  std::vector<int> vals;
  vals.reserve(t.args().size());
  for (const Term& a : t.args()) vals.push_back(ground_eval(a, interp, env));
  return it->second[Interpretation::index(vals, interp.domain_size)];
}

bool ground_eval(const Formula& f, const Interpretation& interp, const Assignment& env) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      return true;
    case Formula::Kind::Bottom:
      return false;
    case Formula::Kind::Equality:
      return ground_eval(f.lhs(), interp, env) == ground_eval(f.rhs(), interp, env);
    case Formula::Kind::Atom: {
      auto it = interp.predicates.find(f.predicate());
      if (it == interp.predicates.end()) {
        throw EvalError("predicate '" + f.predicate() + "' not interpreted");
      }
      if (it->second.size() != table_size(f.args().size(), interp.domain_size)) {
        throw EvalError("table size mismatch for predicate '" + f.predicate() + "'");
      }
      std::vector<int> vals;
      for (const Term& a : f.args()) vals.push_back(ground_eval(a, interp, env));
      return it->second[Interpretation::index(vals, interp.domain_size)];
    }
    case Formula::Kind::Not:
      return !ground_eval(f.operand(), interp, env);
    case Formula::Kind::And:
      return ground_eval(f.left(), interp, env) && ground_eval(f.right(), interp, env);
    case Formula::Kind::Or:
      return ground_eval(f.left(), interp, env) || ground_eval(f.right(), interp, env);
    case Formula::Kind::Implies:
      return !ground_eval(f.left(), interp, env) || ground_eval(f.right(), interp, env);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      const bool universal = f.kind() == Formula::Kind::Forall;
      Assignment inner = env;
      for (int d = 0; d < interp.domain_size; ++d) {
        inner[f.variable()] = d;
        const bool v = ground_eval(f.operand(), interp, inner);
        if (universal && !v) return false;
        if (!universal && v) return true;
      }
      return universal;
    }
  }
  return false;
}

}  // namespace lemmaflow::fol
