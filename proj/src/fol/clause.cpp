#include "lemmaflow/fol/clause.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lemmaflow::fol {

Literal Literal::apply(const Substitution& s) const {
  Literal out{positive, predicate, {}};
  out.args.reserve(args.size());
  for (const Term& a : args) out.args.push_back(s.apply(a));
  return out;
}

std::size_t Literal::weight() const noexcept {
  std::size_t w = 1;
  for (const Term& a : args) w += a.size();
  return w;
}

std::strong_ordering operator<=>(const Literal& a, const Literal& b) noexcept {
  if (auto c = a.predicate.compare(b.predicate); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (a.positive != b.positive) {
    return a.positive ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::lexicographical_compare_three_way(a.args.begin(), a.args.end(), b.args.begin(),
                                                b.args.end());
}

std::string to_string(const Literal& l) {
  if (l.is_equality()) {
    return to_string(l.args[0]) + (l.positive ? " = " : " != ") + to_string(l.args[1]);
  }
  std::string out = l.positive ? "" : "~";
  out += l.predicate;
  if (!l.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < l.args.size(); ++i) {
      if (i) out += ", ";
      out += to_string(l.args[i]);
    }
    out += ')';
  }
  return out;
}

Clause::Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {
  std::sort(literals_.begin(), literals_.end());
  literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
}

bool Clause::is_tautology() const {
  for (std::size_t i = 0; i < literals_.size(); ++i) {
    const Literal& a = literals_[i];
    if (a.positive) {
      if (a.is_equality() && a.args[0] == a.args[1]) return true;
      continue;
    }
    // Same predicate means same run; positives follow negatives.
    for (std::size_t j = i + 1; j < literals_.size() && literals_[j].predicate == a.predicate; ++j) {
      if (literals_[j].positive && literals_[j].args == a.args) return true;
    }
  }
  return false;
}

std::size_t Clause::weight() const noexcept {
  std::size_t w = 0;
  for (const Literal& l : literals_) w += l.weight();
  return w;
}

std::vector<std::string> Clause::variables() const {
  std::vector<std::string> out;
  for (const Literal& l : literals_) {
    for (const Term& a : l.args) collect_variables(a, out);
  }
  return out;
}

Clause Clause::apply(const Substitution& s) const {
  std::vector<Literal> lits;
  lits.reserve(literals_.size());
  for (const Literal& l : literals_) lits.push_back(l.apply(s));
  return Clause(std::move(lits));
}

std::string to_string(const Clause& c) {
  if (c.empty()) return "[]";
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += " | ";
    out += to_string(c.literals()[i]);
  }
  return out;
}

namespace {

Formula literal_formula(const Literal& l) {
  Formula a = l.is_equality() ? Formula::equality(l.args[0], l.args[1])
                              : Formula::atom(l.predicate, l.args);
  return l.positive ? a : Formula::negation(a);
}

}  // namespace

Formula to_formula(const Clause& c) {
  if (c.empty()) return Formula::bottom();
  Formula out = literal_formula(c.literals().back());
  for (std::size_t i = c.size() - 1; i-- > 0;) out = Formula::disj(literal_formula(c.literals()[i]), out);
  return universal_closure(out);
}

Clause normalize_variables(const Clause& c, const std::string& prefix) {
  const auto vars = c.variables();
  if (vars.empty()) return c;
  Substitution s;
  for (std::size_t i = 0; i < vars.size(); ++i) s.bind(vars[i], Term::var(prefix + std::to_string(i)));
  return c.apply(s);
}

bool is_reserved_symbol(const std::string& name) {
  return name.size() > 2 && name.starts_with("sk") &&
         std::all_of(name.begin() + 2, name.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
}

namespace {

// Gives every binder a distinct name so universals can be dropped.
Formula separate_binders(const Formula& f, std::set<std::string>& seen, std::set<std::string>& taken) {
  switch (f.kind()) {
    case Formula::Kind::Not:
      return Formula::negation(separate_binders(f.operand(), seen, taken));
    case Formula::Kind::And:
      return Formula::conj(separate_binders(f.left(), seen, taken),
                           separate_binders(f.right(), seen, taken));
    case Formula::Kind::Or:
      return Formula::disj(separate_binders(f.left(), seen, taken),
                           separate_binders(f.right(), seen, taken));
    case Formula::Kind::Implies:
      return Formula::implies(separate_binders(f.left(), seen, taken),
                              separate_binders(f.right(), seen, taken));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      std::string v = f.variable();
      Formula body = f.operand();
      if (seen.contains(v)) {
        std::string nv = fresh_variable(v, taken);
        taken.insert(nv);
        Substitution s;
        s.bind(v, Term::var(nv));
        body = substitute(body, s);
        v = nv;
      }
      seen.insert(v);
      Formula inner = separate_binders(body, seen, taken);
      return f.kind() == Formula::Kind::Forall ? Formula::forall(v, inner) : Formula::exists(v, inner);
    }
    default:
      return f;
  }
}

Formula skolemize(const Formula& f, std::vector<std::string>& universals, SkolemSupply& skolems) {
  switch (f.kind()) {
    case Formula::Kind::And:
      return Formula::conj(skolemize(f.left(), universals, skolems),
                           skolemize(f.right(), universals, skolems));
    case Formula::Kind::Or:
      return Formula::disj(skolemize(f.left(), universals, skolems),
                           skolemize(f.right(), universals, skolems));
    case Formula::Kind::Forall: {
      universals.push_back(f.variable());
      Formula body = skolemize(f.operand(), universals, skolems);
      universals.pop_back();
      return Formula::forall(f.variable(), body);
    }
    case Formula::Kind::Exists: {
      const auto free = free_variables(f);
      std::vector<Term> args;
      for (const auto& u : universals) {
        if (free.contains(u)) args.push_back(Term::var(u));
      }
      Substitution s;
      s.bind(f.variable(), Term::fun(skolems.next(), std::move(args)));
      return skolemize(substitute(f.operand(), s), universals, skolems);
    }
    default:
      return f;
  }
}

using ClauseList = std::vector<std::vector<Literal>>;

Literal to_literal(const Formula& atom, bool positive) {
  return Literal{positive, atom.predicate(), {atom.args().begin(), atom.args().end()}};
}

ClauseList cnf(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Equality:
      return {{to_literal(f, true)}};
    case Formula::Kind::Not:
      return {{to_literal(f.operand(), false)}};
    case Formula::Kind::Top:
      return {};
    case Formula::Kind::Bottom:
      return {{}};
    case Formula::Kind::And: {
      ClauseList out = cnf(f.left());
      ClauseList r = cnf(f.right());
      out.insert(out.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
      return out;
    }
    case Formula::Kind::Or: {
      const ClauseList l = cnf(f.left());
      const ClauseList r = cnf(f.right());
      ClauseList out;
      out.reserve(l.size() * r.size());
      for (const auto& a : l) {
        for (const auto& b : r) {
          auto merged = a;
          merged.insert(merged.end(), b.begin(), b.end());
          out.push_back(std::move(merged));
        }
      }
      return out;
    }
    case Formula::Kind::Forall:
      return cnf(f.operand());
    default:
      throw std::logic_error("cnf: unexpected connective after skolemisation");
  }
}

}  // namespace

std::vector<Clause> clausify(const Formula& f, SkolemSupply& skolems) {
  Formula g = nnf(universal_closure(f));
  std::set<std::string> seen;
  std::set<std::string> taken = all_variables(g);
  g = separate_binders(g, seen, taken);
  std::vector<std::string> universals;
  g = skolemize(g, universals, skolems);

  std::vector<Clause> out;
  std::set<Clause> unique;
  for (auto& lits : cnf(g)) {
    Clause c(std::move(lits));
    if (c.is_tautology()) continue;
    if (unique.insert(c).second) out.push_back(std::move(c));
  }
  return out;
}

std::vector<Clause> clausify(const Formula& f) {
  SkolemSupply skolems;
  return clausify(f, skolems);
}

}  // namespace lemmaflow::fol
