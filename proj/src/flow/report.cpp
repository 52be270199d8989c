#include <algorithm>
#include <sstream>

#include "lemmaflow/flow/report.hpp"

namespace lemmaflow::flow {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

std::string detail(const TaskOutcome& o) {
  if (o.status == TaskStatus::Proved && o.result && o.result->trace) {
    return "steps=" + std::to_string(o.result->trace->steps.size()) +
           " clauses=" + std::to_string(o.result->stats.kept);
  }
  if (o.reason == "exhausted" && o.result) return "exhausted clauses=" + std::to_string(o.result->stats.kept);
  return o.reason.empty() ? "-" : o.reason;
}

}  // namespace

std::string render_report(const LemmaFlowProof& proof, Verbosity verbosity) {
  const LemmaFlowPlan& plan = proof.plan;
  std::vector<std::vector<std::string>> rows{{"task", "provider", "consumers", "status", "detail"}};
  for (std::size_t i : plan.order) {
    std::vector<std::string> consumers;
    for (const auto& c : plan.tasks[i].consumers) consumers.push_back(c.name);
    rows.push_back({plan.task_name(i), plan.tasks[i].provider.name, join(consumers),
                    std::string(status_name(proof.lemmas[i].status)), detail(proof.lemmas[i])});
  }
  rows.push_back({"root", plan.root.target.name, "-", std::string(status_name(proof.root.status)), detail(proof.root)});

  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }

  std::ostringstream out;
  out << "goal: " << fol::to_string(plan.root.goal) << " @ " << plan.root.target.name << '\n';
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      line += r[c];
      if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
    }
    out << line << '\n';
  }
  const CompositionRecord& comp = proof.composition;
  out << "composition: " << comp.target.name << " proves the goal from [" << join(comp.own_entries)
      << "] with lemmas [" << join(comp.lemmas) << "]\n";
  out << "overall: " << (proof.proved() ? "Proved" : "Failed") << '\n';

  if (verbosity == Verbosity::Full) {
    auto emit = [&](const std::string& name, const AgentId& owner, const TaskOutcome& o) {
      if (!o.result || !o.result->trace) return;
      out << "\ntrace " << name << " at " << owner.name << ":\n" << prover::to_string(*o.result->trace);
    };
    for (std::size_t i : plan.order) emit(plan.task_name(i), plan.tasks[i].provider, proof.lemmas[i]);
    emit("root", plan.root.target, proof.root);
  }
  return out.str();
}

std::string render_check(const lang::AgentNetwork& net, const LemmaFlowPlan& plan) {
  std::vector<std::string> order;
  for (std::size_t t : plan.order) order.push_back(plan.task_name(t));
  order.push_back("root");
  std::ostringstream out;
  out << net.agents.size() << (net.agents.size() == 1 ? " agent, " : " agents, ") << net.entry_count()
      << (net.entry_count() == 1 ? " entry, " : " entries, ") << plan.tasks.size()
      << (plan.tasks.size() == 1 ? " lemma task" : " lemma tasks") << ", order: [" << join(order) << "]";
  return out.str();
}

}  // namespace lemmaflow::flow
