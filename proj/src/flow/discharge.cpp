#include <algorithm>
#include <condition_variable>
#include <exception>
#include <queue>
#include <thread>

#include "lemmaflow/flow/discharge.hpp"

namespace lemmaflow::flow {

using lang::AgentNetwork;
using lang::EntryKind;

prover::ProofResult LemmaCache::get_or_prove(const Key& key, const std::string& label,
                                             const std::function<prover::ProofResult()>& compute) {
  std::promise<prover::ProofResult> promise;
  std::shared_future<prover::ProofResult> future;
  bool owner = false;
  {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      future = promise.get_future().share();
      entries_.emplace(key, future);
      audit_.push_back({key, label});
      owner = true;
    } else {
      future = it->second;
    }
  }
  if (owner) {
    try {
      promise.set_value(compute());
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
  }
  return future.get();
}

std::vector<LemmaCache::Audit> LemmaCache::audit() const {
  std::lock_guard lock(mutex_);
  return audit_;
}

std::size_t LemmaCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

namespace {

void add_own_entries(const AgentNetwork& net, const AgentId& id, std::vector<fol::Formula>& out) {
  const auto* agent = net.find(id);
  if (!agent) return;
  for (const auto& e : agent->entries) {
    if (e.kind != EntryKind::QueryKnowledge) out.push_back(lang::entry_formula(net, e));
  }
}

TaskOutcome outcome_of(prover::ProofResult result) {
  TaskOutcome out;
  switch (result.status) {
    case prover::ProofStatus::Proved:
      out.status = TaskStatus::Proved;
      break;
    case prover::ProofStatus::Exhausted:
      out.status = TaskStatus::Failed;
      out.reason = "exhausted";
      break;
    case prover::ProofStatus::Timeout:
      out.status = TaskStatus::Failed;
      out.reason = result.stats.budget == prover::BudgetHit::WallClock ? "timeout budget=time" : "timeout budget=clauses";
      break;
  }
  out.result = std::move(result);
  return out;
}

template <typename Run>
TaskOutcome guarded(Run&& run) {
  try {
    return outcome_of(run());
  } catch (const std::exception& e) {
    TaskOutcome out;
    out.status = TaskStatus::Failed;
    out.reason = std::string("error: ") + e.what();
    return out;
  }
}

std::string dependency_reason(const LemmaFlowPlan& plan, const std::vector<TaskOutcome>& outcomes,
                              const std::vector<std::size_t>& deps) {
  std::string names;
  for (std::size_t d : deps) {
    if (outcomes[d].status == TaskStatus::Proved) continue;
    names += (names.empty() ? "" : ", ") + plan.task_name(d);
  }
  return "dependency " + names;
}

}  // namespace

prover::Sequent lemma_sequent(const AgentNetwork& net, const LemmaFlowPlan& plan, std::size_t index) {
  const LemmaTask& task = plan.tasks.at(index);
  prover::Sequent s;
  s.goal = task.lemma;
  s.owner = task.provider;
  add_own_entries(net, task.provider, s.hypotheses);
  for (std::size_t d : plan.consumed_by(task.provider)) s.hypotheses.push_back(plan.tasks[d].lemma);
  return s;
}

prover::Sequent root_sequent(const AgentNetwork& net, const LemmaFlowPlan& plan) {
  prover::Sequent s;
  s.goal = plan.root.goal;
  s.owner = plan.root.target;
  add_own_entries(net, plan.root.target, s.hypotheses);
  for (std::size_t t : plan.order) s.hypotheses.push_back(plan.tasks[t].lemma);
  return s;
}

LemmaFlowProof discharge(const AgentNetwork& net, const LemmaFlowPlan& plan, const DischargeOptions& options) {
  LemmaFlowProof proof;
  proof.plan = plan;
  const std::size_t n = plan.tasks.size();
  proof.lemmas.resize(n);

  const ProverFn prove = options.prover ? options.prover : ProverFn(&prover::prove);
  LemmaCache local_cache;
  LemmaCache& cache = options.cache ? *options.cache : local_cache;

  std::vector<std::vector<std::size_t>> deps(n), dependents(n);
  for (const auto& [from, to] : plan.edges) {
    deps[to].push_back(from);
    dependents[from].push_back(to);
  }
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < plan.order.size(); ++i) rank[plan.order[i]] = i;

  std::mutex mutex;
  std::condition_variable changed;
  std::vector<std::size_t> waiting(n);
  auto by_rank = [&](std::size_t a, std::size_t b) { return rank[a] > rank[b]; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_rank)> ready(by_rank);
  std::size_t settled = 0;
  for (std::size_t i = 0; i < n; ++i) {
    waiting[i] = deps[i].size();
    if (waiting[i] == 0) ready.push(i);
  }

  // Called with the lock held. A task settles once all its dependencies
  // have; if any failed it fails too, without a prover call.
  std::function<void(std::size_t)> settle = [&](std::size_t t) {
    ++settled;
    for (std::size_t d : dependents[t]) {
      if (--waiting[d] > 0) continue;
      const bool ok = std::all_of(deps[d].begin(), deps[d].end(),
                                  [&](std::size_t p) { return proof.lemmas[p].status == TaskStatus::Proved; });
      if (ok) {
        ready.push(d);
      } else {
        proof.lemmas[d].status = TaskStatus::Failed;
        proof.lemmas[d].reason = dependency_reason(plan, proof.lemmas, deps[d]);
        settle(d);
      }
    }
    changed.notify_all();
  };

  auto worker = [&] {
    std::unique_lock lock(mutex);
    while (true) {
      changed.wait(lock, [&] { return !ready.empty() || settled == n; });
      if (ready.empty()) return;
      const std::size_t t = ready.top();
      ready.pop();
      proof.lemmas[t].status = TaskStatus::Running;
      lock.unlock();
      TaskOutcome out = guarded([&] {
        const prover::Sequent s = lemma_sequent(net, plan, t);
        const LemmaCache::Key key{plan.tasks[t].provider, canonical_lemma_key(plan.tasks[t].lemma)};
        return cache.get_or_prove(key, plan.task_name(t), [&] { return prove(s, options.limits); });
      });
      lock.lock();
      proof.lemmas[t] = std::move(out);
      settle(t);
    }
  };

  if (n > 0) {
    const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, n);
    std::vector<std::thread> threads;
    for (std::size_t i = 1; i < jobs; ++i) threads.emplace_back(worker);
    worker();
    for (auto& th : threads) th.join();
  }

  for (std::size_t i = 0; i < n; ++i) proof.plan.tasks[i].status = proof.lemmas[i].status;

  CompositionRecord& comp = proof.composition;
  comp.target = plan.root.target;
  comp.goal = plan.root.goal;
  if (const auto* agent = net.find(plan.root.target)) {
    for (const auto& e : agent->entries) {
      if (e.kind != EntryKind::QueryKnowledge) comp.own_entries.push_back(e.label);
    }
  }
  for (std::size_t i : plan.order) comp.lemmas.push_back(plan.task_name(i));

  const std::vector<std::size_t> direct = plan.consumed_by(plan.root.target);
  const bool ready_for_root = std::all_of(proof.lemmas.begin(), proof.lemmas.end(),
                                          [](const TaskOutcome& o) { return o.status == TaskStatus::Proved; });
  if (ready_for_root) {
    proof.root = guarded([&] { return prove(root_sequent(net, plan), options.limits); });
  } else {
    proof.root.status = TaskStatus::Failed;
    proof.root.reason = dependency_reason(plan, proof.lemmas, direct);
  }
  return proof;
}

}  // namespace lemmaflow::flow
