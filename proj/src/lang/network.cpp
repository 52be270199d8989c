#include "lemmaflow/lang/network.hpp"

#include <algorithm>
#include <set>

#include "lemmaflow/fol/clause.hpp"
#include "lemmaflow/fol/signature.hpp"
#include "lemmaflow/fol/substitution.hpp"

namespace lemmaflow::lang {

std::string_view entry_kind_name(EntryKind kind) noexcept {
  switch (kind) {
    case EntryKind::Axiom: return "axiom";
    case EntryKind::QueryKnowledge: return "query";
    case EntryKind::Schema: return "schema";
  }
  return "?";
}

const Agent* AgentNetwork::find(const AgentId& id) const {
  auto it = std::find_if(agents.begin(), agents.end(), [&](const Agent& a) { return a.id == id; });
  return it == agents.end() ? nullptr : &*it;
}

std::size_t AgentNetwork::entry_count() const {
  std::size_t n = 0;
  for (const Agent& a : agents) n += a.entries.size();
  return n;
}

std::vector<std::string> AgentNetwork::placeholders() const {
  std::set<std::string> names;
  for (const auto& [name, b] : bindings) names.insert(name);
  for (const Agent& a : agents) {
    for (const KBEntry& e : a.entries) names.insert(e.schema_params.begin(), e.schema_params.end());
  }
  return {names.begin(), names.end()};
}

namespace {

struct PlaceholderUse {
  std::string name;
  std::size_t arity;
};

void collect_predicate_uses(const fol::Formula& f, const std::set<std::string>& names,
                            std::vector<PlaceholderUse>& out) {
  switch (f.kind()) {
    case fol::Formula::Kind::Atom:
      if (names.contains(f.predicate())) out.push_back({f.predicate(), f.args().size()});
      return;
    case fol::Formula::Kind::Not:
    case fol::Formula::Kind::Forall:
    case fol::Formula::Kind::Exists:
      collect_predicate_uses(f.operand(), names, out);
      return;
    case fol::Formula::Kind::And:
    case fol::Formula::Kind::Or:
    case fol::Formula::Kind::Implies:
      collect_predicate_uses(f.left(), names, out);
      collect_predicate_uses(f.right(), names, out);
      return;
    default:
      return;
  }
}

// Signature of ordinary symbols, skipping placeholder applications.
void add_symbols(const fol::Formula& f, const std::set<std::string>& placeholders, fol::Signature& sig) {
  switch (f.kind()) {
    case fol::Formula::Kind::Atom:
    case fol::Formula::Kind::Equality:
      if (!placeholders.contains(f.predicate())) {
        sig.declare(f.predicate(), fol::SymbolKind::Predicate, f.args().size());
      }
      for (const fol::Term& t : f.args()) sig.add(t);
      return;
    case fol::Formula::Kind::Not:
    case fol::Formula::Kind::Forall:
    case fol::Formula::Kind::Exists:
      add_symbols(f.operand(), placeholders, sig);
      return;
    case fol::Formula::Kind::And:
    case fol::Formula::Kind::Or:
    case fol::Formula::Kind::Implies:
      add_symbols(f.left(), placeholders, sig);
      add_symbols(f.right(), placeholders, sig);
      return;
    default:
      return;
  }
}

void collect_reserved(const fol::Term& t, std::set<std::string>& out) {
  if (t.is_var()) return;
  if (fol::is_reserved_symbol(t.name())) out.insert(t.name());
  for (const fol::Term& a : t.args()) collect_reserved(a, out);
}

void collect_reserved(const fol::Formula& f, std::set<std::string>& out) {
  if (f.is_atomic()) {
    if (fol::is_reserved_symbol(f.predicate())) out.insert(f.predicate());
    for (const fol::Term& t : f.args()) collect_reserved(t, out);
  } else if (f.kind() == fol::Formula::Kind::Not || f.is_quantifier()) {
    collect_reserved(f.operand(), out);
  } else if (f.is_binary()) {
    collect_reserved(f.left(), out);
    collect_reserved(f.right(), out);
  }
}

}  // namespace

std::vector<Diagnostic> validate_network(const AgentNetwork& net, const SourceMap* positions) {
  std::vector<Diagnostic> out;
  auto agent_pos = [&](const AgentId& a) -> SourcePos {
    if (!positions) return {};
    auto it = positions->agents.find(a.name);
    return it == positions->agents.end() ? SourcePos{} : it->second;
  };
  auto entry_pos = [&](const AgentId& a, const std::string& label) -> SourcePos {
    if (!positions) return {};
    auto it = positions->entries.find({a.name, label});
    return it == positions->entries.end() ? agent_pos(a) : it->second;
  };
  auto binding_pos = [&](const std::string& name) -> SourcePos {
    if (!positions) return {};
    auto it = positions->bindings.find(name);
    return it == positions->bindings.end() ? SourcePos{} : it->second;
  };
  const SourcePos query_pos = positions ? positions->query : SourcePos{};

  std::set<AgentId> declared;
  for (const Agent& a : net.agents) {
    if (a.id.name.empty()) {
      out.push_back({ErrorKind::Syntax, agent_pos(a.id), "agent with empty name"});
    } else if (!declared.insert(a.id).second) {
      out.push_back({ErrorKind::DuplicateAgent, agent_pos(a.id), "agent '" + a.id.name + "' declared twice"});
    }
  }

  const auto placeholder_list = net.placeholders();
  const std::set<std::string> placeholders(placeholder_list.begin(), placeholder_list.end());

  for (const auto& [name, b] : net.bindings) {
    const std::set<std::string> holes(b.holes.begin(), b.holes.end());
    if (holes.size() != b.holes.size()) {
      out.push_back({ErrorKind::InvalidBinding, binding_pos(name), "binding '" + name + "' repeats a hole variable"});
    }
    for (const auto& v : fol::free_variables(b.body)) {
      if (!holes.contains(v)) {
        out.push_back({ErrorKind::InvalidBinding, binding_pos(name),
                       "binding '" + name + "' has free variable '" + v + "' that is not a hole"});
      }
    }
    std::vector<PlaceholderUse> uses;
    collect_predicate_uses(b.body, placeholders, uses);
    if (!uses.empty()) {
      out.push_back({ErrorKind::InvalidBinding, binding_pos(name),
                     "binding '" + name + "' mentions placeholder '" + uses.front().name + "'"});
    }
  }

  for (const Agent& a : net.agents) {
    std::set<std::string> labels;
    for (const KBEntry& e : a.entries) {
      const SourcePos pos = entry_pos(a.id, e.label);
      if (!labels.insert(e.label).second) {
        out.push_back({ErrorKind::DuplicateLabel, pos,
                       "label '" + e.label + "' used twice in agent '" + a.id.name + "'"});
      }
      if (e.kind == EntryKind::QueryKnowledge) {
        if (!e.provider) {
          out.push_back({ErrorKind::UnknownProvider, pos, "query '" + e.label + "' has no provider"});
        } else if (*e.provider == a.id) {
          out.push_back({ErrorKind::SelfQuery, pos,
                         "agent '" + a.id.name + "' queries itself in '" + e.label + "'"});
        } else if (!declared.contains(*e.provider)) {
          out.push_back({ErrorKind::UnknownProvider, pos,
                         "agent '" + a.id.name + "' queries undeclared provider '" + e.provider->name + "'"});
        }
      } else if (e.provider) {
        out.push_back({ErrorKind::Syntax, pos, "only query entries may name a provider"});
      }
      if (e.kind != EntryKind::Schema && !e.schema_params.empty()) {
        out.push_back({ErrorKind::Syntax, pos, "only schema entries take parameters"});
      }
      if (e.kind == EntryKind::Schema) {
        if (e.schema_params.empty()) {
          out.push_back({ErrorKind::Syntax, pos, "schema '" + e.label + "' declares no parameters"});
        }
        for (const auto& p : e.schema_params) {
          if (!net.bindings.contains(p)) {
            out.push_back({ErrorKind::UnboundSchemaParameter, pos,
                           "schema parameter '" + p + "' of '" + e.label + "' has no 'let' binding"});
          }
        }
      }

      std::vector<PlaceholderUse> uses;
      collect_predicate_uses(e.body, placeholders, uses);
      std::set<std::string> reported;
      for (const auto& use : uses) {
        if (!reported.insert(use.name).second) continue;
        const bool own_param =
            std::find(e.schema_params.begin(), e.schema_params.end(), use.name) != e.schema_params.end();
        if (e.kind == EntryKind::Axiom || (e.kind == EntryKind::Schema && !own_param)) {
          out.push_back({ErrorKind::MisplacedPlaceholder, pos,
                         "placeholder '" + use.name + "' used in " + std::string(entry_kind_name(e.kind)) +
                             " '" + e.label + "'"});
          continue;
        }
        if (e.kind == EntryKind::QueryKnowledge && !net.bindings.contains(use.name)) {
          out.push_back({ErrorKind::UnboundSchemaParameter, pos,
                         "placeholder '" + use.name + "' in '" + e.label + "' has no 'let' binding"});
        }
      }
      for (const auto& use : uses) {
        auto it = net.bindings.find(use.name);
        if (it != net.bindings.end() && it->second.arity() != use.arity) {
          out.push_back({ErrorKind::ArityMismatch, pos,
                         "placeholder '" + use.name + "' applied to " + std::to_string(use.arity) +
                             " argument(s) but bound with " + std::to_string(it->second.arity())});
          break;
        }
      }
    }
  }

  if (net.query.target.name.empty() || !declared.contains(net.query.target)) {
    out.push_back({ErrorKind::UnknownTarget, query_pos,
                   "query targets undeclared agent '" + net.query.target.name + "'"});
  }
  {
    std::vector<PlaceholderUse> uses;
    collect_predicate_uses(net.query.goal, placeholders, uses);
    if (!uses.empty()) {
      out.push_back({ErrorKind::MisplacedPlaceholder, query_pos,
                     "placeholder '" + uses.front().name + "' used in the query goal"});
    }
  }

  // Arity consistency of ordinary symbols across the whole network.
  fol::Signature sig;
  auto check = [&](const fol::Formula& f, SourcePos pos) {
    try {
      add_symbols(f, placeholders, sig);
    } catch (const fol::ArityError& e) {
      out.push_back({ErrorKind::ArityMismatch, pos, e.what()});
    }
  };
  for (const auto& [name, b] : net.bindings) check(b.body, binding_pos(name));
  for (const Agent& a : net.agents) {
    for (const KBEntry& e : a.entries) check(e.body, entry_pos(a.id, e.label));
  }
  check(net.query.goal, query_pos);
  for (const auto& p : placeholders) {
    if (sig.contains(p)) {
      out.push_back({ErrorKind::MisplacedPlaceholder, {}, "placeholder '" + p + "' also used as an ordinary symbol"});
    }
  }

  std::set<std::string> reserved;
  for (const auto& [name, b] : net.bindings) collect_reserved(b.body, reserved);
  for (const Agent& a : net.agents) {
    for (const KBEntry& e : a.entries) collect_reserved(e.body, reserved);
  }
  collect_reserved(net.query.goal, reserved);
  for (const auto& r : reserved) {
    out.push_back({ErrorKind::ReservedSymbol, {}, "symbol '" + r + "' is reserved for Skolem functions"});
  }
  return out;
}

std::string render_network(const AgentNetwork& net) {
  std::string out;
  for (const auto& [name, b] : net.bindings) {
    out += "let " + name;
    if (!b.holes.empty()) {
      out += '(';
      for (std::size_t i = 0; i < b.holes.size(); ++i) {
        if (i) out += ", ";
        out += b.holes[i];
      }
      out += ')';
    }
    out += " := " + fol::to_string(b.body) + ".\n";
  }
  for (const Agent& a : net.agents) {
    out += "agent " + a.id.name + ".\n";
    for (const KBEntry& e : a.entries) {
      out += "  ";
      switch (e.kind) {
        case EntryKind::Axiom:
          out += "axiom " + e.label + ": ";
          break;
        case EntryKind::QueryKnowledge:
          out += "query " + e.label + " from " + (e.provider ? e.provider->name : std::string("?")) + ": ";
          break;
        case EntryKind::Schema: {
          out += "schema " + e.label + "(";
          for (std::size_t i = 0; i < e.schema_params.size(); ++i) {
            if (i) out += ", ";
            out += e.schema_params[i];
          }
          out += "): ";
          break;
        }
      }
      out += fol::to_string(e.body) + ".\n";
    }
    out += "end.\n";
  }
  out += "?- " + fol::to_string(net.query.goal) + " @ " + net.query.target.name + ".\n";
  return out;
}

namespace {

fol::Formula instantiate_impl(const fol::Formula& f, const PredicateBinding& b) {
  using K = fol::Formula::Kind;
  switch (f.kind()) {
    case K::Atom: {
      if (f.predicate() != b.name) return f;
      if (f.args().size() != b.arity()) {
        throw LangError(ErrorKind::ArityMismatch, {},
                        "placeholder '" + b.name + "' applied to " + std::to_string(f.args().size()) +
                            " argument(s) but the binding has " + std::to_string(b.arity()) + " hole(s)");
      }
      fol::Substitution s;
      for (std::size_t i = 0; i < b.holes.size(); ++i) s.bind(b.holes[i], f.args()[i]);
      return fol::substitute(b.body, s);
    }
    case K::Not:
      return fol::Formula::negation(instantiate_impl(f.operand(), b));
    case K::And:
      return fol::Formula::conj(instantiate_impl(f.left(), b), instantiate_impl(f.right(), b));
    case K::Or:
      return fol::Formula::disj(instantiate_impl(f.left(), b), instantiate_impl(f.right(), b));
    case K::Implies:
      return fol::Formula::implies(instantiate_impl(f.left(), b), instantiate_impl(f.right(), b));
    case K::Forall:
      return fol::Formula::forall(f.variable(), instantiate_impl(f.operand(), b));
    case K::Exists:
      return fol::Formula::exists(f.variable(), instantiate_impl(f.operand(), b));
    default:
      return f;
  }
}

}  // namespace

fol::Formula instantiate_placeholder(const fol::Formula& f, const PredicateBinding& binding) {
  return fol::rectify(instantiate_impl(f, binding));
}

fol::Formula instantiate_schema(const KBEntry& entry, const PredicateBinding& binding) {
  if (entry.kind != EntryKind::Schema) {
    throw LangError(ErrorKind::Syntax, {}, "entry '" + entry.label + "' is not a schema");
  }
  if (std::find(entry.schema_params.begin(), entry.schema_params.end(), binding.name) ==
      entry.schema_params.end()) {
    throw LangError(ErrorKind::UnresolvedSchema, {},
                    "'" + binding.name + "' is not a parameter of schema '" + entry.label + "'");
  }
  return instantiate_placeholder(entry.body, binding);
}

fol::Formula entry_formula(const AgentNetwork& net, const KBEntry& entry) {
  const auto names = net.placeholders();
  std::vector<PlaceholderUse> uses;
  collect_predicate_uses(entry.body, {names.begin(), names.end()}, uses);
  std::set<std::string> needed(entry.schema_params.begin(), entry.schema_params.end());
  for (const auto& u : uses) needed.insert(u.name);
  fol::Formula out = entry.body;
  for (const auto& name : needed) {
    auto it = net.bindings.find(name);
    if (it == net.bindings.end()) {
      throw LangError(ErrorKind::UnresolvedSchema, {},
                      "placeholder '" + name + "' in '" + entry.label + "' has no binding");
    }
    out = instantiate_placeholder(out, it->second);
  }
  return out;
}

}  // namespace lemmaflow::lang
