#include <algorithm>

#include "lemmaflow/prover/prover.hpp"

namespace lemmaflow::prover {

using fol::Clause;
using fol::Literal;
using fol::Substitution;

std::vector<Inference> resolvents(const Clause& c1, const Clause& c2) {
  std::vector<Inference> out;
  const auto& a = c1.literals();
  const auto& b = c2.literals();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (a[i].positive == b[j].positive || a[i].predicate != b[j].predicate) continue;
      Substitution tri;
      if (!fol::unify_args(a[i].args, b[j].args, tri)) continue;
      Substitution mgu = fol::resolved(tri);
      std::vector<Literal> lits;
      lits.reserve(a.size() + b.size() - 2);
      for (std::size_t k = 0; k < a.size(); ++k) {
        if (k != i) lits.push_back(a[k].apply(mgu));
      }
      for (std::size_t k = 0; k < b.size(); ++k) {
        if (k != j) lits.push_back(b[k].apply(mgu));
      }
      out.push_back({Clause(std::move(lits)), std::move(mgu)});
    }
  }
  return out;
}

std::vector<Clause> resolve(const Clause& c1, const Clause& c2) {
  std::vector<Clause> out;
  for (auto& inf : resolvents(c1, c2)) {
    if (std::find(out.begin(), out.end(), inf.clause) == out.end()) out.push_back(std::move(inf.clause));
  }
  return out;
}

std::vector<Inference> factors(const Clause& c) {
  std::vector<Inference> out;
  const auto& lits = c.literals();
  for (std::size_t i = 0; i < lits.size(); ++i) {
    for (std::size_t j = i + 1; j < lits.size(); ++j) {
      if (lits[i].positive != lits[j].positive || lits[i].predicate != lits[j].predicate) continue;
      Substitution tri;
      if (!fol::unify_args(lits[i].args, lits[j].args, tri)) continue;
      Substitution mgu = fol::resolved(tri);
      out.push_back({c.apply(mgu), std::move(mgu)});
    }
  }
  return out;
}

namespace {

// Bindings are undone by truncation when a branch fails.
using Bindings = std::vector<std::pair<const std::string*, const fol::Term*>>;

bool match_term(const fol::Term& pattern, const fol::Term& target, Bindings& b) {
  if (pattern.is_var()) {
    for (const auto& [name, value] : b) {
      if (*name == pattern.name()) return *value == target;
    }
    b.emplace_back(&pattern.name(), &target);
    return true;
  }
  if (target.is_var() || pattern.name() != target.name()) return false;
  const auto pa = pattern.args();
  const auto ta = target.args();
  if (pa.size() != ta.size()) return false;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (!match_term(pa[i], ta[i], b)) return false;
  }
  return true;
}

bool match_literal(const Literal& g, const Literal& d, Bindings& b) {
  if (d.positive != g.positive || d.predicate != g.predicate || d.args.size() != g.args.size()) return false;
  for (std::size_t k = 0; k < g.args.size(); ++k) {
    if (!match_term(g.args[k], d.args[k], b)) return false;
  }
  return true;
}

struct Candidates {
  const Literal* literal;
  std::vector<const Literal*> targets;
};

bool match_all(const std::vector<Candidates>& order, std::size_t i, Bindings& b,
               std::vector<const Literal*>& used) {
  if (i == order.size()) return true;
  for (const Literal* d : order[i].targets) {
    if (std::find(used.begin(), used.end(), d) != used.end()) continue;
    const std::size_t mark = b.size();
    used.push_back(d);
    if (match_literal(*order[i].literal, *d, b) && match_all(order, i + 1, b, used)) return true;
    used.pop_back();
    b.resize(mark);
  }
  return false;
}

}  // namespace

bool subsumes(const Clause& general, const Clause& specific) {
  if (general.size() > specific.size()) return false;
  Bindings b;
  b.reserve(16);
  // Each literal must match something on its own; the most constrained
  // literal is then tried first.
  std::vector<Candidates> order;
  order.reserve(general.size());
  for (const Literal& g : general.literals()) {
    Candidates c{&g, {}};
    for (const Literal& d : specific.literals()) {
      if (match_literal(g, d, b)) c.targets.push_back(&d);
      b.clear();
    }
    if (c.targets.empty()) return false;
    order.push_back(std::move(c));
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const Candidates& x, const Candidates& y) { return x.targets.size() < y.targets.size(); });
  std::vector<const Literal*> used;
  used.reserve(order.size());
  return match_all(order, 0, b, used);
}

}  // namespace lemmaflow::prover
