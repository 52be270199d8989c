#include "lemmaflow/lang/annotated.hpp"

#include <stdexcept>

namespace lemmaflow::lang {

AnnotatedFormula AnnotatedFormula::leaf(fol::Formula body, AgentId env) {
  return AnnotatedFormula(std::make_shared<const Node>(Node{Kind::Leaf, std::move(body), std::move(env), {}}));
}

AnnotatedFormula AnnotatedFormula::negation(AnnotatedFormula f) {
  return AnnotatedFormula(std::make_shared<const Node>(Node{Kind::Not, std::nullopt, {}, {std::move(f)}}));
}

AnnotatedFormula AnnotatedFormula::conj(AnnotatedFormula a, AnnotatedFormula b) {
  return AnnotatedFormula(
      std::make_shared<const Node>(Node{Kind::And, std::nullopt, {}, {std::move(a), std::move(b)}}));
}

AnnotatedFormula AnnotatedFormula::disj(AnnotatedFormula a, AnnotatedFormula b) {
  return AnnotatedFormula(
      std::make_shared<const Node>(Node{Kind::Or, std::nullopt, {}, {std::move(a), std::move(b)}}));
}

AnnotatedFormula AnnotatedFormula::implies(AnnotatedFormula a, AnnotatedFormula b) {
  return AnnotatedFormula(
      std::make_shared<const Node>(Node{Kind::Implies, std::nullopt, {}, {std::move(a), std::move(b)}}));
}

const fol::Formula& AnnotatedFormula::body() const {
  if (kind() != Kind::Leaf) throw std::logic_error("body() on non-leaf");
  return *node_->body;
}

const AgentId& AnnotatedFormula::env() const {
  if (kind() != Kind::Leaf) throw std::logic_error("env() on non-leaf");
  return node_->env;
}

const AnnotatedFormula& AnnotatedFormula::operand() const {
  if (kind() != Kind::Not) throw std::logic_error("operand() on non-negation");
  return node_->children[0];
}

const AnnotatedFormula& AnnotatedFormula::left() const {
  if (kind() == Kind::Leaf || kind() == Kind::Not) throw std::logic_error("left() on non-binary");
  return node_->children[0];
}

const AnnotatedFormula& AnnotatedFormula::right() const {
  if (kind() == Kind::Leaf || kind() == Kind::Not) throw std::logic_error("right() on non-binary");
  return node_->children[1];
}

std::size_t AnnotatedFormula::leaf_count() const {
  if (kind() == Kind::Leaf) return 1;
  std::size_t n = 0;
  for (const auto& c : node_->children) n += c.leaf_count();
  return n;
}

bool operator==(const AnnotatedFormula& a, const AnnotatedFormula& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->kind == b.node_->kind && a.node_->body == b.node_->body && a.node_->env == b.node_->env &&
         a.node_->children == b.node_->children;
}

namespace {

int precedence(const AnnotatedFormula& f) {
  switch (f.kind()) {
    case AnnotatedFormula::Kind::Implies: return 1;
    case AnnotatedFormula::Kind::Or: return 2;
    case AnnotatedFormula::Kind::And: return 3;
    case AnnotatedFormula::Kind::Not: return 4;
    case AnnotatedFormula::Kind::Leaf: return 5;
  }
  return 5;
}

void render(const AnnotatedFormula& f, std::string& out) {
  auto child = [&](const AnnotatedFormula& c, bool parens) {
    if (parens) out += '(';
    render(c, out);
    if (parens) out += ')';
  };
  switch (f.kind()) {
    case AnnotatedFormula::Kind::Leaf:
      out += "(" + fol::to_string(f.body()) + ")^" + f.env().name;
      return;
    case AnnotatedFormula::Kind::Not:
      out += '~';
      child(f.operand(), precedence(f.operand()) < 4);
      return;
    case AnnotatedFormula::Kind::And:
    case AnnotatedFormula::Kind::Or: {
      const int p = precedence(f);
      child(f.left(), precedence(f.left()) < p);
      out += f.kind() == AnnotatedFormula::Kind::And ? " & " : " | ";
      child(f.right(), precedence(f.right()) <= p);
      return;
    }
    case AnnotatedFormula::Kind::Implies:
      child(f.left(), precedence(f.left()) <= 1);
      out += " -> ";
      child(f.right(), false);
      return;
  }
}

}  // namespace

std::string to_string(const AnnotatedFormula& f) {
  std::string out;
  render(f, out);
  return out;
}

RawAnnotated RawAnnotated::from_formula(const fol::Formula& f) {
  using K = fol::Formula::Kind;
  RawAnnotated r;
  switch (f.kind()) {
    case K::Atom:
    case K::Equality:
      r.kind = Kind::Atom;
      r.atom = f;
      break;
    case K::Top:
      r.kind = Kind::Top;
      break;
    case K::Bottom:
      r.kind = Kind::Bottom;
      break;
    case K::Not:
      r.kind = Kind::Not;
      r.children.push_back(from_formula(f.operand()));
      break;
    case K::And:
    case K::Or:
    case K::Implies:
      r.kind = f.kind() == K::And ? Kind::And : f.kind() == K::Or ? Kind::Or : Kind::Implies;
      r.children.push_back(from_formula(f.left()));
      r.children.push_back(from_formula(f.right()));
      break;
    case K::Forall:
    case K::Exists:
      r.kind = f.kind() == K::Forall ? Kind::Forall : Kind::Exists;
      r.variable = f.variable();
      r.children.push_back(from_formula(f.operand()));
      break;
  }
  return r;
}

RawAnnotated RawAnnotated::annotated(AgentId env) && {
  annotation = std::move(env);
  return std::move(*this);
}

RawAnnotated to_raw(const AnnotatedFormula& f) {
  RawAnnotated r;
  switch (f.kind()) {
    case AnnotatedFormula::Kind::Leaf:
      return RawAnnotated::from_formula(f.body()).annotated(f.env());
    case AnnotatedFormula::Kind::Not:
      r.kind = RawAnnotated::Kind::Not;
      r.children.push_back(to_raw(f.operand()));
      return r;
    case AnnotatedFormula::Kind::And:
      r.kind = RawAnnotated::Kind::And;
      break;
    case AnnotatedFormula::Kind::Or:
      r.kind = RawAnnotated::Kind::Or;
      break;
    case AnnotatedFormula::Kind::Implies:
      r.kind = RawAnnotated::Kind::Implies;
      break;
  }
  r.children.push_back(to_raw(f.left()));
  r.children.push_back(to_raw(f.right()));
  return r;
}

namespace {

std::string path_string(const std::vector<std::size_t>& path) {
  if (path.empty()) return "/";
  std::string out;
  for (std::size_t i : path) out += "/" + std::to_string(i);
  return out;
}

// Converts an annotated body; any further annotation below is rejected.
fol::Formula body_formula(const RawAnnotated& r, std::vector<std::size_t>& path, const AgentId& outer) {
  if (r.annotation) {
    throw LangError(ErrorKind::NestedAnnotation, r.pos,
                    "annotation '^" + r.annotation->name + "' at " + path_string(path) +
                        " lies inside the body annotated with '^" + outer.name + "'");
  }
  auto child = [&](std::size_t i) {
    path.push_back(i);
    fol::Formula f = body_formula(r.children[i], path, outer);
    path.pop_back();
    return f;
  };
  switch (r.kind) {
    case RawAnnotated::Kind::Atom: return *r.atom;
    case RawAnnotated::Kind::Top: return fol::Formula::top();
    case RawAnnotated::Kind::Bottom: return fol::Formula::bottom();
    case RawAnnotated::Kind::Not: return fol::Formula::negation(child(0));
    case RawAnnotated::Kind::And: return fol::Formula::conj(child(0), child(1));
    case RawAnnotated::Kind::Or: return fol::Formula::disj(child(0), child(1));
    case RawAnnotated::Kind::Implies: return fol::Formula::implies(child(0), child(1));
    case RawAnnotated::Kind::Forall: return fol::Formula::forall(r.variable, child(0));
    case RawAnnotated::Kind::Exists: return fol::Formula::exists(r.variable, child(0));
  }
  return fol::Formula::top();
}

AnnotatedFormula skeleton(const RawAnnotated& r, std::vector<std::size_t>& path) {
  if (r.annotation) {
    const AgentId env = *r.annotation;
    RawAnnotated stripped = r;
    stripped.annotation.reset();
    return AnnotatedFormula::leaf(fol::rectify(body_formula(stripped, path, env)), env);
  }
  auto child = [&](std::size_t i) {
    path.push_back(i);
    AnnotatedFormula f = skeleton(r.children[i], path);
    path.pop_back();
    return f;
  };
  switch (r.kind) {
    case RawAnnotated::Kind::Not: return AnnotatedFormula::negation(child(0));
    case RawAnnotated::Kind::And: return AnnotatedFormula::conj(child(0), child(1));
    case RawAnnotated::Kind::Or: return AnnotatedFormula::disj(child(0), child(1));
    case RawAnnotated::Kind::Implies: return AnnotatedFormula::implies(child(0), child(1));
    default:
      throw LangError(ErrorKind::MissingAnnotation, r.pos,
                      "first-order subformula at " + path_string(path) + " carries no agent annotation");
  }
}

}  // namespace

AnnotatedFormula validate_annotated(const RawAnnotated& raw) {
  std::vector<std::size_t> path;
  return skeleton(raw, path);
}

AnnotatedFormula expand_agent(const AgentNetwork& net, const AgentId& a, const fol::Formula& goal) {
  const Agent* agent = net.find(a);
  if (!agent) throw LangError(ErrorKind::UnknownTarget, {}, "agent '" + a.name + "' is not declared");
  std::vector<AnnotatedFormula> leaves;
  for (const KBEntry& e : agent->entries) {
    const AgentId env = e.kind == EntryKind::QueryKnowledge ? *e.provider : a;
    leaves.push_back(AnnotatedFormula::negation(AnnotatedFormula::leaf(entry_formula(net, e), env)));
  }
  AnnotatedFormula out = AnnotatedFormula::leaf(goal, a);
  for (auto it = leaves.rbegin(); it != leaves.rend(); ++it) out = AnnotatedFormula::disj(*it, out);
  return out;
}

}  // namespace lemmaflow::lang
