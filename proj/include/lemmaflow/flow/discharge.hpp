#pragma once

#include <cstddef>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lemmaflow/flow/plan.hpp"
#include "lemmaflow/lang/network.hpp"
#include "lemmaflow/prover/prover.hpp"

namespace lemmaflow::flow {

using ProverFn = std::function<prover::ProofResult(const prover::Sequent&, const prover::ResourceLimits&)>;

/// Proof-once store keyed by (provider, canonical lemma key). The first
/// caller for a key runs the prover; later callers wait on its result.
class LemmaCache {
 public:
  using Key = std::pair<AgentId, std::string>;

  struct Audit {
    Key key;
    std::string label;  // task that triggered the prover call
  };

  /// `compute` runs at most once per key across all threads.
  prover::ProofResult get_or_prove(const Key& key, const std::string& label,
                                   const std::function<prover::ProofResult()>& compute);

  /// Every prover invocation, in the order they started.
  std::vector<Audit> audit() const;
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::map<Key, std::shared_future<prover::ProofResult>> entries_;
  std::vector<Audit> audit_;
};

struct TaskOutcome {
  TaskStatus status = TaskStatus::Pending;
  std::optional<prover::ProofResult> result;  // absent if never attempted
  std::string reason;                        // why it failed
};

/// The final cut: the root sequent's own entries and the lemmas that
/// joined it as hypotheses.
struct CompositionRecord {
  AgentId target;
  fol::Formula goal = fol::Formula::top();
  std::vector<std::string> own_entries;
  std::vector<std::string> lemmas;  // task names
};

struct LemmaFlowProof {
  LemmaFlowPlan plan;
  std::vector<TaskOutcome> lemmas;  // parallel to plan.tasks
  TaskOutcome root;
  CompositionRecord composition;

  bool proved() const noexcept { return root.status == TaskStatus::Proved; }
};

struct DischargeOptions {
  prover::ResourceLimits limits;
  std::size_t jobs = 1;
  ProverFn prover;             // defaults to prover::prove
  LemmaCache* cache = nullptr;  // defaults to a fresh cache per call
};

/// Sequent for lemma task `index`: the provider's axioms and instantiated
/// schemas, then the lemmas the provider itself consumes.
prover::Sequent lemma_sequent(const lang::AgentNetwork& net, const LemmaFlowPlan& plan, std::size_t index);

/// Sequent for the root: the target's axioms and schemas plus every lemma
/// in plan order.
prover::Sequent root_sequent(const lang::AgentNetwork& net, const LemmaFlowPlan& plan);

/// Runs every lemma task, then the root. A task whose dependency failed is
/// marked Failed without calling the prover. The outcome does not depend
/// on `jobs`.
LemmaFlowProof discharge(const lang::AgentNetwork& net, const LemmaFlowPlan& plan, const DischargeOptions& options);

}  // namespace lemmaflow::flow
