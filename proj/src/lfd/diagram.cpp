#include <algorithm>
#include <sstream>

#include "lemmaflow/lfd/diagram.hpp"

namespace lemmaflow::lfd {

using lang::EntryKind;

namespace {

std::string agent_node(const AgentId& a) { return "agent:" + a.name; }

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

Diagram build_diagram(const lang::AgentNetwork& net) {
  Diagram d;
  for (const auto& agent : net.agents) d.boxes.push_back({agent.id, {}});

  auto box = [&](const AgentId& id) -> Box& {
    return *std::find_if(d.boxes.begin(), d.boxes.end(), [&](const Box& b) { return b.agent == id; });
  };
  auto find_circle = [&](const std::string& id) -> const Circle* {
    auto it = std::find_if(d.circles.begin(), d.circles.end(), [&](const Circle& c) { return c.id == id; });
    return it == d.circles.end() ? nullptr : &*it;
  };

  for (const auto& agent : net.agents) {
    for (const auto& e : agent.entries) {
      const std::string text = e.label + ": " + fol::to_string(lang::entry_formula(net, e));
      std::string id;
      std::optional<AgentId> source;
      if (e.kind == EntryKind::QueryKnowledge) {
        id = "lemma:" + e.provider->name + ":" + e.label;
        source = e.provider;
        // Same label, different lemma: not a shared cut.
        if (const Circle* c = find_circle(id); c && c->text != text) id += ":" + agent.id.name;
      } else {
        id = "svc:" + agent.id.name + ":" + e.label;
      }
      if (!find_circle(id)) d.circles.push_back({id, text, true});
      d.edges.push_back({source, id, agent.id});
      box(agent.id).services.push_back(id);
    }
  }

  if (net.find(net.query.target)) {
    d.query = "query";
    d.circles.push_back({d.query, fol::to_string(net.query.goal), false});
    d.edges.push_back({std::nullopt, d.query, net.query.target});
    box(net.query.target).services.push_back(d.query);
  }
  return d;
}

std::string emit_dot(const Diagram& d) {
  std::ostringstream out;
  out << "digraph lfd {\n";
  for (const auto& b : d.boxes) {
    out << "  " << quoted(agent_node(b.agent)) << " [shape=box, label=" << quoted(b.agent.name) << "];\n";
  }
  for (const auto& c : d.circles) {
    out << "  " << quoted(c.id) << " [shape=ellipse, label=" << quoted((c.bulleted ? "• " : "") + c.text)
        << "];\n";
  }
  for (const auto& e : d.edges) {
    out << "  ";
    if (e.source) out << quoted(agent_node(*e.source)) << " -> ";
    out << quoted(e.via) << " -> " << quoted(agent_node(e.target)) << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace lemmaflow::lfd
