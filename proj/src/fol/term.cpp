#include "lemmaflow/fol/term.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace lemmaflow::fol {

struct Term::Node {
  Kind kind;
  std::string name;
  std::vector<Term> args;
  std::size_t hash;
  std::size_t size;
  std::size_t depth;
};

bool is_variable_name(std::string_view name) noexcept {
  return !name.empty() && name.front() >= 'u' && name.front() <= 'z';
}

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::var(std::string name) {
  if (!is_variable_name(name)) {
    throw std::invalid_argument("not a variable name: '" + name + "'");
  }
  const std::size_t h = mix(1, std::hash<std::string>{}(name));
  return Term(std::make_shared<const Node>(Node{Kind::Variable, std::move(name), {}, h, 1, 0}));
}

Term Term::fun(std::string symbol, std::vector<Term> args) {
  if (symbol.empty() || is_variable_name(symbol)) {
    throw std::invalid_argument("not a function symbol: '" + symbol + "'");
  }
  std::size_t h = mix(2, std::hash<std::string>{}(symbol));
  std::size_t size = 1;
  std::size_t depth = 0;
  for (const Term& a : args) {
    h = mix(h, a.hash());
    size += a.size();
    depth = std::max(depth, a.depth() + 1);
  }
  return Term(std::make_shared<const Node>(
      Node{Kind::Function, std::move(symbol), std::move(args), h, size, depth}));
}

Term::Kind Term::kind() const noexcept { return node_->kind; }
const std::string& Term::name() const noexcept { return node_->name; }
std::span<const Term> Term::args() const noexcept { return node_->args; }
std::size_t Term::hash() const noexcept { return node_->hash; }
std::size_t Term::size() const noexcept { return node_->size; }
std::size_t Term::depth() const noexcept { return node_->depth; }

bool operator==(const Term& a, const Term& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.name() != b.name()) return false;
  const auto aa = a.args();
  const auto ba = b.args();
  return std::equal(aa.begin(), aa.end(), ba.begin(), ba.end());
}

std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.kind() != b.kind()) {
    return a.is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (auto c = a.name().compare(b.name()); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  const auto aa = a.args();
  const auto ba = b.args();
  return std::lexicographical_compare_three_way(aa.begin(), aa.end(), ba.begin(), ba.end());
}

bool occurs_in(std::string_view var, const Term& t) noexcept {
  if (t.is_var()) return t.name() == var;
  for (const Term& a : t.args()) {
    if (occurs_in(var, a)) return true;
  }
  return false;
}

void collect_variables(const Term& t, std::vector<std::string>& out) {
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    return;
  }
  for (const Term& a : t.args()) collect_variables(a, out);
}

namespace {

int infix_precedence(const Term& t) {
  if (t.is_var() || t.args().size() != 2) return 0;
  if (t.name() == "+") return 1;
  if (t.name() == "*") return 2;
  return 0;
}

void render(const Term& t, std::string& out) {
  const int prec = infix_precedence(t);
  if (prec > 0) {
    // Left-associative: the right operand needs parentheses at equal precedence.
    const Term& l = t.args()[0];
    const Term& r = t.args()[1];
    const int lp = infix_precedence(l);
    const int rp = infix_precedence(r);
    const bool lparen = lp > 0 && lp < prec;
    const bool rparen = rp > 0 && rp <= prec;
    if (lparen) out += '(';
    render(l, out);
    if (lparen) out += ')';
    out += ' ';
    out += t.name();
    out += ' ';
    if (rparen) out += '(';
    render(r, out);
    if (rparen) out += ')';
    return;
  }
  out += t.name();
  if (t.args().empty()) return;
  out += '(';
  bool first = true;
  for (const Term& a : t.args()) {
    if (!first) out += ", ";
    first = false;
    render(a, out);
  }
  out += ')';
}

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  render(t, out);
  return out;
}

}  // namespace lemmaflow::fol
