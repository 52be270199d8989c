#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lemmaflow/agent_id.hpp"
#include "lemmaflow/fol/formula.hpp"
#include "lemmaflow/lang/diagnostics.hpp"
#include "lemmaflow/lang/network.hpp"

namespace lemmaflow::lang {

/// Agent-annotated formula. Annotations live only on first-order leaves,
/// so a service cannot switch environment inside its body.
class AnnotatedFormula {
 public:
  enum class Kind { Leaf, Not, And, Or, Implies };

  static AnnotatedFormula leaf(fol::Formula body, AgentId env);
  static AnnotatedFormula negation(AnnotatedFormula f);
  static AnnotatedFormula conj(AnnotatedFormula a, AnnotatedFormula b);
  static AnnotatedFormula disj(AnnotatedFormula a, AnnotatedFormula b);
  static AnnotatedFormula implies(AnnotatedFormula a, AnnotatedFormula b);

  Kind kind() const noexcept { return node_->kind; }
  const fol::Formula& body() const;
  const AgentId& env() const;
  const AnnotatedFormula& operand() const;
  const AnnotatedFormula& left() const;
  const AnnotatedFormula& right() const;

  std::size_t leaf_count() const;

  friend bool operator==(const AnnotatedFormula& a, const AnnotatedFormula& b);

 private:
  struct Node {
    Kind kind;
    std::optional<fol::Formula> body;
    AgentId env;
    std::vector<AnnotatedFormula> children;
  };
  explicit AnnotatedFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// `(body)^env` leaves joined with the usual connectives.
std::string to_string(const AnnotatedFormula& f);

/// Formula tree where any node may carry an annotation; the input shape
/// for validate_annotated.
struct RawAnnotated {
  enum class Kind { Atom, Top, Bottom, Not, And, Or, Implies, Forall, Exists };

  Kind kind = Kind::Top;
  std::optional<fol::Formula> atom;  // Atom: an Atom or Equality formula
  std::string variable;              // Forall / Exists
  std::vector<RawAnnotated> children;
  std::optional<AgentId> annotation;
  SourcePos pos;

  static RawAnnotated from_formula(const fol::Formula& f);
  RawAnnotated annotated(AgentId env) &&;
};

RawAnnotated to_raw(const AnnotatedFormula& f);

/// Accepts exactly the trees whose annotations sit on maximal first-order
/// subtrees below a connective skeleton of ~ & | ->. Throws LangError with
/// NestedAnnotation (annotation inside an annotated body) or
/// MissingAnnotation (first-order material outside any annotation); the
/// message carries the child-index path of the offending node.
AnnotatedFormula validate_annotated(const RawAnnotated& raw);

/// ~KB_1 | ... | ~KB_m | goal for agent `a`. Axiom and schema leaves are
/// annotated with `a`, query-knowledge leaves with their provider.
AnnotatedFormula expand_agent(const AgentNetwork& net, const AgentId& a, const fol::Formula& goal);

}  // namespace lemmaflow::lang
