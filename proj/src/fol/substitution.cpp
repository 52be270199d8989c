#include "lemmaflow/fol/substitution.hpp"

#include <vector>

namespace lemmaflow::fol {

const Term* Substitution::lookup(const std::string& var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

void Substitution::bind(std::string var, Term t) { bindings_.insert_or_assign(std::move(var), std::move(t)); }

Term Substitution::apply(const Term& t) const {
  if (bindings_.empty()) return t;
  if (t.is_var()) {
    const Term* b = lookup(t.name());
    return b ? *b : t;
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(apply(a));
    changed = changed || !args.back().same_node(a);
  }
  return changed ? Term::fun(t.name(), std::move(args)) : t;
}

bool Substitution::is_idempotent() const {
  for (const auto& [var, term] : bindings_) {
    std::vector<std::string> vars;
    collect_variables(term, vars);
    for (const auto& v : vars) {
      if (bindings_.contains(v)) return false;
    }
  }
  return true;
}

std::string to_string(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [var, term] : s.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += var + " := " + to_string(term);
  }
  out += '}';
  return out;
}

namespace {

std::set<std::string> range_variables(const Substitution& s) {
  std::set<std::string> out;
  for (const auto& [var, term] : s.bindings()) {
    std::vector<std::string> vars;
    collect_variables(term, vars);
    out.insert(vars.begin(), vars.end());
  }
  return out;
}

Formula substitute_impl(const Formula& f, const Substitution& s) {
  if (s.empty()) return f;
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::vector<Term> args;
      for (const Term& a : f.args()) args.push_back(s.apply(a));
      return Formula::atom(f.predicate(), std::move(args));
    }
    case Formula::Kind::Equality:
      return Formula::equality(s.apply(f.lhs()), s.apply(f.rhs()));
    case Formula::Kind::Top:
    case Formula::Kind::Bottom:
      return f;
    case Formula::Kind::Not:
      return Formula::negation(substitute_impl(f.operand(), s));
    case Formula::Kind::And:
      return Formula::conj(substitute_impl(f.left(), s), substitute_impl(f.right(), s));
    case Formula::Kind::Or:
      return Formula::disj(substitute_impl(f.left(), s), substitute_impl(f.right(), s));
    case Formula::Kind::Implies:
      return Formula::implies(substitute_impl(f.left(), s), substitute_impl(f.right(), s));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      const std::string& v = f.variable();
      const Formula& body = f.operand();
      Substitution inner = s;
      inner.erase(v);
      // Only bindings for variables free in the body matter here.
      Substitution relevant;
      for (const auto& fv : free_variables(body)) {
        if (const Term* t = inner.lookup(fv)) relevant.bind(fv, *t);
      }
      if (relevant.empty()) return f;
      std::string nv = v;
      Formula new_body = body;
      if (range_variables(relevant).contains(v)) {
        std::set<std::string> taken = all_variables(body);
        const auto range = range_variables(relevant);
        taken.insert(range.begin(), range.end());
        for (const auto& [dv, t] : relevant.bindings()) taken.insert(dv);
        nv = fresh_variable(v, taken);
        Substitution rename;
        rename.bind(v, Term::var(nv));
        new_body = substitute_impl(body, rename);
      }
      new_body = substitute_impl(new_body, relevant);
      return f.kind() == Formula::Kind::Forall ? Formula::forall(nv, new_body)
                                               : Formula::exists(nv, new_body);
    }
  }
  return f;
}

Term walk(const Term& t, const Substitution& s) {
  Term cur = t;
  while (cur.is_var()) {
    const Term* b = s.lookup(cur.name());
    if (!b) break;
    cur = *b;
  }
  return cur;
}

bool occurs(const std::string& var, const Term& t, const Substitution& s) {
  const Term w = walk(t, s);
  if (w.is_var()) return w.name() == var;
  for (const Term& a : w.args()) {
    if (occurs(var, a, s)) return true;
  }
  return false;
}

}  // namespace

Formula substitute(const Formula& f, const Substitution& s) { return substitute_impl(f, s); }

bool unify_into(const Term& a, const Term& b, Substitution& s) {
  const Term x = walk(a, s);
  const Term y = walk(b, s);
  if (x.is_var() && y.is_var() && x.name() == y.name()) return true;
  if (x.is_var()) {
    if (occurs(x.name(), y, s)) return false;
    s.bind(x.name(), y);
    return true;
  }
  if (y.is_var()) {
    if (occurs(y.name(), x, s)) return false;
    s.bind(y.name(), x);
    return true;
  }
  if (x.name() != y.name() || x.args().size() != y.args().size()) return false;
  return unify_args(x.args(), y.args(), s);
}

bool unify_args(std::span<const Term> a, std::span<const Term> b, Substitution& s) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!unify_into(a[i], b[i], s)) return false;
  }
  return true;
}

namespace {

Term resolve_term(const Term& t, const Substitution& s) {
  const Term w = walk(t, s);
  if (w.is_var() || w.args().empty()) return w;
  std::vector<Term> args;
  args.reserve(w.args().size());
  for (const Term& a : w.args()) args.push_back(resolve_term(a, s));
  return Term::fun(w.name(), std::move(args));
}

}  // namespace

Substitution resolved(const Substitution& triangular) {
  Substitution out;
  for (const auto& [var, term] : triangular.bindings()) out.bind(var, resolve_term(term, triangular));
  return out;
}

std::optional<Substitution> unify(const Term& a, const Term& b) {
  Substitution s;
  if (!unify_into(a, b, s)) return std::nullopt;
  return resolved(s);
}

bool match_into(const Term& pattern, const Term& target, Substitution& s) {
  if (pattern.is_var()) {
    if (const Term* b = s.lookup(pattern.name())) return *b == target;
    s.bind(pattern.name(), target);
    return true;
  }
  if (target.is_var() || pattern.name() != target.name() ||
      pattern.args().size() != target.args().size()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.args().size(); ++i) {
    if (!match_into(pattern.args()[i], target.args()[i], s)) return false;
  }
  return true;
}

}  // namespace lemmaflow::fol
