#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lemmaflow/agent_id.hpp"
#include "lemmaflow/fol/formula.hpp"
#include "lemmaflow/lang/network.hpp"

namespace lemmaflow::flow {

enum class TaskStatus { Pending, Running, Proved, Failed };

std::string_view status_name(TaskStatus s) noexcept;

/// A shared lemma: proved once by its provider, used by every consumer.
struct LemmaTask {
  std::string label;
  fol::Formula lemma = fol::Formula::top();
  AgentId provider;
  std::vector<AgentId> consumers;  // first-use order
  TaskStatus status = TaskStatus::Pending;
};

struct RootTask {
  fol::Formula goal = fol::Formula::top();
  AgentId target;
};

/// Tasks are in discovery order from the query target. `edges` holds
/// (before, after) task indices; the root runs after every task.
struct LemmaFlowPlan {
  std::vector<LemmaTask> tasks;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  RootTask root;
  std::vector<std::size_t> order;  // topological, ties by task index

  /// Indices of the tasks whose lemmas `agent` consumes.
  std::vector<std::size_t> consumed_by(const AgentId& agent) const;
  /// Label, or label@provider when two tasks share a label.
  std::string task_name(std::size_t index) const;
};

/// Cycles among querying agents, or one lemma declared with two formulas.
class PlanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One task per query-knowledge entry reachable from the query target.
/// `net` must be valid. Throws PlanError.
LemmaFlowPlan plan(const lang::AgentNetwork& net);

/// Equal exactly for alpha-equivalent formulas: bound variables are
/// written by binder distance, everything else verbatim.
std::string canonical_lemma_key(const fol::Formula& f);

}  // namespace lemmaflow::flow
