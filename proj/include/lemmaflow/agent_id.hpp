#pragma once

#include <compare>
#include <string>

namespace lemmaflow {

struct AgentId {
  std::string name;

  friend auto operator<=>(const AgentId&, const AgentId&) = default;
  friend bool operator==(const AgentId&, const AgentId&) = default;
};

inline const std::string& to_string(const AgentId& a) { return a.name; }

}  // namespace lemmaflow
