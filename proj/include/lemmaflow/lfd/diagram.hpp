#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lemmaflow/agent_id.hpp"
#include "lemmaflow/lang/network.hpp"

namespace lemmaflow::lfd {

/// A service: one KB entry, one shared lemma, or the query itself.
struct Circle {
  std::string id;
  std::string text;
  bool bulleted = false;

  friend bool operator==(const Circle&, const Circle&) = default;
};

struct Box {
  AgentId agent;
  std::vector<std::string> services;  // circle ids on edges into this box

  friend bool operator==(const Box&, const Box&) = default;
};

/// `source` is empty for services provided by Nature.
struct Edge {
  std::optional<AgentId> source;
  std::string via;
  AgentId target;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Diagram {
  std::vector<Box> boxes;      // declaration order
  std::vector<Circle> circles;  // declaration order, query last
  std::vector<Edge> edges;
  std::string query;  // id of the query circle; empty for an empty diagram

  friend bool operator==(const Diagram&, const Diagram&) = default;
};

/// One box per agent. Axioms and instantiated schemas are bulleted
/// circles from Nature; query-knowledge entries are bulleted circles from
/// their provider, drawn once per (provider, label, lemma) however many agents
/// consume them; the query is an unbulleted circle into the target.
Diagram build_diagram(const lang::AgentNetwork& net);

/// Graphviz DOT. Agents are boxes, services ellipses. Nature edges start
/// at the circle; agent edges are written as one chain `a -> circle -> b`.
std::string emit_dot(const Diagram& d);

}  // namespace lemmaflow::lfd
