#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lemmaflow/agent_id.hpp"
#include "lemmaflow/fol/formula.hpp"
#include "lemmaflow/lang/diagnostics.hpp"

namespace lemmaflow::lang {

enum class EntryKind { Axiom, QueryKnowledge, Schema };

std::string_view entry_kind_name(EntryKind kind) noexcept;

/// One knowledgebase item. QueryKnowledge entries name the agent that must
/// supply the formula; Schema entries list the predicate placeholders they
/// quantify over.
struct KBEntry {
  EntryKind kind = EntryKind::Axiom;
  std::string label;
  fol::Formula body = fol::Formula::top();
  std::optional<AgentId> provider;
  std::vector<std::string> schema_params;

  friend bool operator==(const KBEntry&, const KBEntry&) = default;
};

struct Agent {
  AgentId id;
  std::vector<KBEntry> entries;

  friend bool operator==(const Agent&, const Agent&) = default;
};

/// `let P(x, ...) := body.` A formula with one hole per parameter.
struct PredicateBinding {
  std::string name;
  std::vector<std::string> holes;
  fol::Formula body = fol::Formula::top();

  std::size_t arity() const noexcept { return holes.size(); }
  friend bool operator==(const PredicateBinding&, const PredicateBinding&) = default;
};

struct NetworkQuery {
  fol::Formula goal = fol::Formula::top();
  AgentId target;

  friend bool operator==(const NetworkQuery&, const NetworkQuery&) = default;
};

struct AgentNetwork {
  std::vector<Agent> agents;  // declaration order
  std::map<std::string, PredicateBinding> bindings;
  NetworkQuery query;

  const Agent* find(const AgentId& id) const;
  std::size_t entry_count() const;
  /// Names declared as schema parameters or bound by `let`.
  std::vector<std::string> placeholders() const;

  friend bool operator==(const AgentNetwork&, const AgentNetwork&) = default;
};

/// Source positions recorded by the parser; used only for diagnostics.
struct SourceMap {
  std::map<std::string, SourcePos> agents;
  std::map<std::pair<std::string, std::string>, SourcePos> entries;  // (agent, label)
  std::map<std::string, SourcePos> bindings;
  SourcePos query;
};

/// Every structural check on a network. Empty result means valid.
std::vector<Diagnostic> validate_network(const AgentNetwork& net, const SourceMap* positions = nullptr);

/// Parses and validates `.lfd` text. Throws LangError carrying either the
/// single syntax error or every validation finding.
AgentNetwork parse_network(std::string_view text);

/// Canonical form: bindings, then agents in order, then the query; one
/// declaration per line.
std::string render_network(const AgentNetwork& net);

/// Replaces every application of `binding.name` by the binding body with
/// the arguments in its holes. Throws LangError(ArityMismatch).
fol::Formula instantiate_placeholder(const fol::Formula& f, const PredicateBinding& binding);

/// Schema entry body with one placeholder instantiated.
fol::Formula instantiate_schema(const KBEntry& entry, const PredicateBinding& binding);

/// The first-order content of an entry with all network bindings applied.
/// Throws LangError(UnresolvedSchema) if a placeholder has no binding.
fol::Formula entry_formula(const AgentNetwork& net, const KBEntry& entry);

}  // namespace lemmaflow::lang
