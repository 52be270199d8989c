#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lemmaflow::testkit {

/// What a DOT file declares, as read by a small standalone grammar
/// checker (graph, node, edge and attribute statements; quoted and
/// bare IDs; comments are not accepted).
struct DotGraph {
  bool directed = false;
  std::string name;
  struct Node {
    std::string id;
    std::map<std::string, std::string> attrs;
  };
  std::vector<Node> nodes;
  /// One entry per edge statement: the node ids along the chain.
  std::vector<std::vector<std::string>> edges;

  const Node* node(const std::string& id) const;
};

struct DotParse {
  std::optional<DotGraph> graph;
  std::string error;  // set when graph is empty
};

DotParse parse_dot(std::string_view text);

}  // namespace lemmaflow::testkit
