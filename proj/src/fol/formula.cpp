#include "lemmaflow/fol/formula.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>

#include "lemmaflow/fol/substitution.hpp"

namespace lemmaflow::fol {

struct Formula::Node {
  Kind kind;
  std::string name;  // predicate or bound variable
  std::vector<Term> args;
  std::vector<Formula> children;
  std::size_t hash;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const std::string kEqualityName = "=";

}  // namespace

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  if (predicate.empty() || is_variable_name(predicate) || predicate == kEqualityName) {
    throw std::invalid_argument("not a predicate symbol: '" + predicate + "'");
  }
  std::size_t h = mix(static_cast<std::size_t>(Kind::Atom), std::hash<std::string>{}(predicate));
  for (const Term& a : args) h = mix(h, a.hash());
  return Formula(std::make_shared<const Node>(
      Node{Kind::Atom, std::move(predicate), std::move(args), {}, h}));
}

Formula Formula::equality(Term lhs, Term rhs) {
  std::size_t h = mix(static_cast<std::size_t>(Kind::Equality), lhs.hash());
  h = mix(h, rhs.hash());
  return Formula(std::make_shared<const Node>(
      Node{Kind::Equality, kEqualityName, {std::move(lhs), std::move(rhs)}, {}, h}));
}

Formula Formula::top() {
  static const Formula t(std::make_shared<const Node>(Node{Kind::Top, {}, {}, {}, 0x7001}));
  return t;
}

Formula Formula::bottom() {
  static const Formula b(std::make_shared<const Node>(Node{Kind::Bottom, {}, {}, {}, 0xb071}));
  return b;
}

Formula Formula::negation(Formula f) {
  std::size_t h = mix(static_cast<std::size_t>(Kind::Not), f.hash());
  return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, {}, {std::move(f)}, h}));
}

Formula Formula::conj(Formula a, Formula b) {
  std::size_t h = mix(mix(static_cast<std::size_t>(Kind::And), a.hash()), b.hash());
  return Formula(std::make_shared<const Node>(Node{Kind::And, {}, {}, {std::move(a), std::move(b)}, h}));
}

Formula Formula::disj(Formula a, Formula b) {
  std::size_t h = mix(mix(static_cast<std::size_t>(Kind::Or), a.hash()), b.hash());
  return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, {}, {std::move(a), std::move(b)}, h}));
}

Formula Formula::implies(Formula a, Formula b) {
  std::size_t h = mix(mix(static_cast<std::size_t>(Kind::Implies), a.hash()), b.hash());
  return Formula(
      std::make_shared<const Node>(Node{Kind::Implies, {}, {}, {std::move(a), std::move(b)}, h}));
}

Formula Formula::forall(std::string var, Formula body) {
  if (!is_variable_name(var)) throw std::invalid_argument("not a variable name: '" + var + "'");
  std::size_t h = mix(mix(static_cast<std::size_t>(Kind::Forall), std::hash<std::string>{}(var)), body.hash());
  return Formula(
      std::make_shared<const Node>(Node{Kind::Forall, std::move(var), {}, {std::move(body)}, h}));
}

Formula Formula::exists(std::string var, Formula body) {
  if (!is_variable_name(var)) throw std::invalid_argument("not a variable name: '" + var + "'");
  std::size_t h = mix(mix(static_cast<std::size_t>(Kind::Exists), std::hash<std::string>{}(var)), body.hash());
  return Formula(
      std::make_shared<const Node>(Node{Kind::Exists, std::move(var), {}, {std::move(body)}, h}));
}

Formula::Kind Formula::kind() const noexcept { return node_->kind; }

bool Formula::is_binary() const noexcept {
  const Kind k = kind();
  return k == Kind::And || k == Kind::Or || k == Kind::Implies;
}

const std::string& Formula::predicate() const {
  if (!is_atomic()) throw std::logic_error("predicate() on non-atomic formula");
  return node_->name;
}

std::span<const Term> Formula::args() const {
  if (!is_atomic()) throw std::logic_error("args() on non-atomic formula");
  return node_->args;
}

const Term& Formula::lhs() const {
  if (kind() != Kind::Equality) throw std::logic_error("lhs() on non-equality");
  return node_->args[0];
}

const Term& Formula::rhs() const {
  if (kind() != Kind::Equality) throw std::logic_error("rhs() on non-equality");
  return node_->args[1];
}

const Formula& Formula::operand() const {
  if (kind() != Kind::Not && !is_quantifier()) throw std::logic_error("operand() on wrong kind");
  return node_->children[0];
}

const Formula& Formula::left() const {
  if (!is_binary()) throw std::logic_error("left() on non-binary formula");
  return node_->children[0];
}

const Formula& Formula::right() const {
  if (!is_binary()) throw std::logic_error("right() on non-binary formula");
  return node_->children[1];
}

const std::string& Formula::variable() const {
  if (!is_quantifier()) throw std::logic_error("variable() on non-quantifier");
  return node_->name;
}

std::size_t Formula::hash() const noexcept { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.hash == y.hash && x.kind == y.kind && x.name == y.name && x.args == y.args &&
         x.children == y.children;
}

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Equality: {
      std::vector<std::string> vars;
      for (const Term& a : f.args()) collect_variables(a, vars);
      for (auto& v : vars) {
        if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
      }
      return;
    }
    case Formula::Kind::Top:
    case Formula::Kind::Bottom:
      return;
    case Formula::Kind::Not:
      collect_free(f.operand(), bound, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      bound.push_back(f.variable());
      collect_free(f.operand(), bound, out);
      bound.pop_back();
      return;
  }
}

void collect_all(const Formula& f, std::set<std::string>& out) {
  if (f.is_atomic()) {
    std::vector<std::string> vars;
    for (const Term& a : f.args()) collect_variables(a, vars);
    out.insert(vars.begin(), vars.end());
    return;
  }
  switch (f.kind()) {
    case Formula::Kind::Not:
      collect_all(f.operand(), out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      out.insert(f.variable());
      collect_all(f.operand(), out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      collect_all(f.left(), out);
      collect_all(f.right(), out);
      return;
    default:
      return;
  }
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> all_variables(const Formula& f) {
  std::set<std::string> out;
  collect_all(f, out);
  return out;
}

bool is_closed(const Formula& f) { return free_variables(f).empty(); }

bool is_quantifier_free(const Formula& f) {
  if (f.is_quantifier()) return false;
  if (f.kind() == Formula::Kind::Not) return is_quantifier_free(f.operand());
  if (f.is_binary()) return is_quantifier_free(f.left()) && is_quantifier_free(f.right());
  return true;
}

Formula universal_closure(const Formula& f) {
  const auto free = free_variables(f);
  Formula out = f;
  for (auto it = free.rbegin(); it != free.rend(); ++it) out = Formula::forall(*it, out);
  return out;
}

std::string fresh_variable(const std::string& base, const std::set<std::string>& taken) {
  std::string stem = base;
  // Strip an existing "_<digits>" suffix so renames do not stack up.
  if (auto pos = stem.rfind('_'); pos != std::string::npos && pos + 1 < stem.size() &&
                                  std::all_of(stem.begin() + static_cast<std::ptrdiff_t>(pos) + 1,
                                              stem.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    stem.resize(pos);
  }
  if (!is_variable_name(stem)) stem = "x";
  for (std::size_t i = 1;; ++i) {
    std::string candidate = stem + "_" + std::to_string(i);
    if (!taken.contains(candidate)) return candidate;
  }
}

namespace {

Formula rebuild_binary(const Formula& f, Formula l, Formula r) {
  switch (f.kind()) {
    case Formula::Kind::And:
      return Formula::conj(std::move(l), std::move(r));
    case Formula::Kind::Or:
      return Formula::disj(std::move(l), std::move(r));
    default:
      return Formula::implies(std::move(l), std::move(r));
  }
}

Formula rebuild_quantifier(Formula::Kind kind, std::string var, Formula body) {
  return kind == Formula::Kind::Forall ? Formula::forall(std::move(var), std::move(body))
                                       : Formula::exists(std::move(var), std::move(body));
}

Formula rename_terms(const Formula& f, const std::map<std::string, std::string>& renames) {
  Substitution s;
  std::set<std::string> mentioned;
  for (const Term& a : f.args()) {
    std::vector<std::string> vars;
    collect_variables(a, vars);
    for (auto& v : vars) {
      if (auto it = renames.find(v); it != renames.end() && it->second != v) s.bind(v, Term::var(it->second));
    }
  }
  if (s.empty()) return f;
  std::vector<Term> args;
  for (const Term& a : f.args()) args.push_back(s.apply(a));
  if (f.kind() == Formula::Kind::Equality) return Formula::equality(args[0], args[1]);
  return Formula::atom(f.predicate(), std::move(args));
}

struct Rectifier {
  std::set<std::string> free;
  std::set<std::string> taken;

  Formula run(const Formula& f, std::set<std::string>& enclosing,
              std::map<std::string, std::string>& renames) {
    switch (f.kind()) {
      case Formula::Kind::Atom:
      case Formula::Kind::Equality:
        return rename_terms(f, renames);
      case Formula::Kind::Top:
      case Formula::Kind::Bottom:
        return f;
      case Formula::Kind::Not: {
        Formula inner = run(f.operand(), enclosing, renames);
        return inner == f.operand() ? f : Formula::negation(std::move(inner));
      }
      case Formula::Kind::And:
      case Formula::Kind::Or:
      case Formula::Kind::Implies: {
        Formula l = run(f.left(), enclosing, renames);
        Formula r = run(f.right(), enclosing, renames);
        if (l == f.left() && r == f.right()) return f;
        return rebuild_binary(f, std::move(l), std::move(r));
      }
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        const std::string& v = f.variable();
        std::string nv = v;
        if (enclosing.contains(v) || free.contains(v)) {
          nv = fresh_variable(v, taken);
          taken.insert(nv);
        }
        std::optional<std::string> saved;
        if (auto it = renames.find(v); it != renames.end()) saved = it->second;
        renames[v] = nv;
        const bool inserted = enclosing.insert(nv).second;
        Formula body = run(f.operand(), enclosing, renames);
        if (inserted) enclosing.erase(nv);
        if (saved) {
          renames[v] = *saved;
        } else {
          renames.erase(v);
        }
        if (nv == v && body == f.operand()) return f;
        return rebuild_quantifier(f.kind(), nv, std::move(body));
      }
    }
    return f;
  }
};

}  // namespace

Formula rectify(const Formula& f) {
  Rectifier r{free_variables(f), all_variables(f)};
  std::set<std::string> enclosing;
  std::map<std::string, std::string> renames;
  return r.run(f, enclosing, renames);
}

namespace {

Formula nnf_pos(const Formula& f);

Formula nnf_neg(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Equality:
      return Formula::negation(f);
    case Formula::Kind::Top:
      return Formula::bottom();
    case Formula::Kind::Bottom:
      return Formula::top();
    case Formula::Kind::Not:
      return nnf_pos(f.operand());
    case Formula::Kind::And:
      return Formula::disj(nnf_neg(f.left()), nnf_neg(f.right()));
    case Formula::Kind::Or:
      return Formula::conj(nnf_neg(f.left()), nnf_neg(f.right()));
    case Formula::Kind::Implies:
      return Formula::conj(nnf_pos(f.left()), nnf_neg(f.right()));
    case Formula::Kind::Forall:
      return Formula::exists(f.variable(), nnf_neg(f.operand()));
    case Formula::Kind::Exists:
      return Formula::forall(f.variable(), nnf_neg(f.operand()));
  }
  return f;
}

Formula nnf_pos(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Equality:
    case Formula::Kind::Top:
    case Formula::Kind::Bottom:
      return f;
    case Formula::Kind::Not:
      return nnf_neg(f.operand());
    case Formula::Kind::And:
      return Formula::conj(nnf_pos(f.left()), nnf_pos(f.right()));
    case Formula::Kind::Or:
      return Formula::disj(nnf_pos(f.left()), nnf_pos(f.right()));
    case Formula::Kind::Implies:
      return Formula::disj(nnf_neg(f.left()), nnf_pos(f.right()));
    case Formula::Kind::Forall:
      return Formula::forall(f.variable(), nnf_pos(f.operand()));
    case Formula::Kind::Exists:
      return Formula::exists(f.variable(), nnf_pos(f.operand()));
  }
  return f;
}

// Binding strength used by the renderer; higher binds tighter.
int precedence(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Implies:
      return 1;
    case Formula::Kind::Or:
      return 2;
    case Formula::Kind::And:
      return 3;
    case Formula::Kind::Not:
      if (f.operand().kind() == Formula::Kind::Equality) return 5;  // rendered as !=
      return 4;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return 4;
    default:
      return 5;
  }
}

void render(const Formula& f, std::string& out);

// `forall x (x = y)` reads better than `forall x x = y`.
bool is_infix(const Formula& f) {
  return f.kind() == Formula::Kind::Equality ||
         (f.kind() == Formula::Kind::Not && f.operand().kind() == Formula::Kind::Equality);
}

void render_child(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  render(f, out);
  if (parens) out += ')';
}

void render_atom_args(std::span<const Term> args, std::string& out) {
  if (args.empty()) return;
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += to_string(args[i]);
  }
  out += ')';
}

void render(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out += f.predicate();
      render_atom_args(f.args(), out);
      return;
    case Formula::Kind::Equality:
      out += to_string(f.lhs()) + " = " + to_string(f.rhs());
      return;
    case Formula::Kind::Top:
      out += "true";
      return;
    case Formula::Kind::Bottom:
      out += "false";
      return;
    case Formula::Kind::Not:
      if (f.operand().kind() == Formula::Kind::Equality) {
        out += to_string(f.operand().lhs()) + " != " + to_string(f.operand().rhs());
        return;
      }
      out += '~';
      render_child(f.operand(), precedence(f.operand()) < 4, out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      out += f.kind() == Formula::Kind::Forall ? "forall " : "exists ";
      out += f.variable();
      out += ' ';
      render_child(f.operand(), precedence(f.operand()) < 4 || is_infix(f.operand()), out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      const int p = precedence(f);
      render_child(f.left(), precedence(f.left()) < p, out);
      out += f.kind() == Formula::Kind::And ? " & " : " | ";
      render_child(f.right(), precedence(f.right()) <= p, out);
      return;
    }
    case Formula::Kind::Implies:
      render_child(f.left(), precedence(f.left()) <= 1, out);
      out += " -> ";
      render_child(f.right(), precedence(f.right()) < 1, out);
      return;
  }
}

}  // namespace

Formula nnf(const Formula& f) { return nnf_pos(f); }

std::string to_string(const Formula& f) {
  std::string out;
  render(f, out);
  return out;
}

}  // namespace lemmaflow::fol
