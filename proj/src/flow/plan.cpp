#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>

#include "lemmaflow/flow/plan.hpp"

namespace lemmaflow::flow {

using lang::AgentNetwork;
using lang::EntryKind;

std::string_view status_name(TaskStatus s) noexcept {
  switch (s) {
    case TaskStatus::Pending: return "Pending";
    case TaskStatus::Running: return "Running";
    case TaskStatus::Proved: return "Proved";
    case TaskStatus::Failed: return "Failed";
  }
  return "?";
}

std::vector<std::size_t> LemmaFlowPlan::consumed_by(const AgentId& agent) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& c = tasks[i].consumers;
    if (std::find(c.begin(), c.end(), agent) != c.end()) out.push_back(i);
  }
  return out;
}

std::string LemmaFlowPlan::task_name(std::size_t index) const {
  const LemmaTask& t = tasks.at(index);
  const auto same = std::count_if(tasks.begin(), tasks.end(), [&](const LemmaTask& o) { return o.label == t.label; });
  return same > 1 ? t.label + "@" + t.provider.name : t.label;
}

namespace {

void check_acyclic(const AgentNetwork& net) {
  enum class Mark { New, Open, Done };
  std::map<std::string, Mark> marks;
  std::vector<std::string> stack;

  std::function<void(const AgentId&)> visit = [&](const AgentId& id) {
    marks[id.name] = Mark::Open;
    stack.push_back(id.name);
    if (const auto* agent = net.find(id)) {
      for (const auto& e : agent->entries) {
        if (e.kind != EntryKind::QueryKnowledge || !e.provider) continue;
        const Mark m = marks.contains(e.provider->name) ? marks[e.provider->name] : Mark::New;
        if (m == Mark::Open) {
          const auto from = std::find(stack.begin(), stack.end(), e.provider->name);
          std::string cycle;
          for (auto it = from; it != stack.end(); ++it) cycle += *it + " -> ";
          throw PlanError("agent cycle: " + cycle + e.provider->name);
        }
        if (m == Mark::New) visit(*e.provider);
      }
    }
    stack.pop_back();
    marks[id.name] = Mark::Done;
  };
  visit(net.query.target);
}

}  // namespace

LemmaFlowPlan plan(const AgentNetwork& net) {
  check_acyclic(net);

  LemmaFlowPlan out;
  out.root = {net.query.goal, net.query.target};

  std::map<std::pair<AgentId, std::string>, std::size_t> index;
  std::vector<std::string> keys;
  std::set<AgentId> seen{net.query.target};
  std::queue<AgentId> agents;
  agents.push(net.query.target);
  while (!agents.empty()) {
    const AgentId consumer = agents.front();
    agents.pop();
    const auto* agent = net.find(consumer);
    if (!agent) continue;
    for (const auto& e : agent->entries) {
      if (e.kind != EntryKind::QueryKnowledge || !e.provider) continue;
      const fol::Formula lemma = lang::entry_formula(net, e);
      const std::string key = canonical_lemma_key(lemma);
      auto [it, fresh] = index.try_emplace({*e.provider, e.label}, out.tasks.size());
      if (fresh) {
        out.tasks.push_back({e.label, lemma, *e.provider, {}, TaskStatus::Pending});
        keys.push_back(key);
      } else if (keys[it->second] != key) {
        throw PlanError("lemma " + e.label + " from " + e.provider->name + " is declared with two different formulas");
      }
      auto& consumers = out.tasks[it->second].consumers;
      if (std::find(consumers.begin(), consumers.end(), consumer) == consumers.end()) consumers.push_back(consumer);
      if (seen.insert(*e.provider).second) agents.push(*e.provider);
    }
  }

  for (std::size_t t = 0; t < out.tasks.size(); ++t) {
    for (std::size_t dep : out.consumed_by(out.tasks[t].provider)) out.edges.emplace_back(dep, t);
  }

  std::vector<std::size_t> indegree(out.tasks.size(), 0);
  for (const auto& [from, to] : out.edges) ++indegree[to];
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t t = 0; t < out.tasks.size(); ++t) {
    if (indegree[t] == 0) ready.push(t);
  }
  while (!ready.empty()) {
    const std::size_t t = ready.top();
    ready.pop();
    out.order.push_back(t);
    for (const auto& [from, to] : out.edges) {
      if (from == t && --indegree[to] == 0) ready.push(to);
    }
  }
  return out;
}

namespace {

void key_term(const fol::Term& t, const std::vector<std::string>& bound, std::string& out) {
  if (t.is_var()) {
    for (std::size_t i = bound.size(); i-- > 0;) {
      if (bound[i] == t.name()) {
        out += '#' + std::to_string(bound.size() - 1 - i);
        return;
      }
    }
    out += '?' + t.name();
    return;
  }
  out += t.name();
  if (t.args().empty()) return;
  out += '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ',';
    key_term(t.args()[i], bound, out);
  }
  out += ')';
}

void key_formula(const fol::Formula& f, std::vector<std::string>& bound, std::string& out) {
  using K = fol::Formula::Kind;
  switch (f.kind()) {
    case K::Top: out += 'T'; return;
    case K::Bottom: out += 'F'; return;
    case K::Atom:
    case K::Equality:
      out += f.kind() == K::Equality ? "=(" : "P" + f.predicate() + "(";
      for (std::size_t i = 0; i < f.args().size(); ++i) {
        if (i) out += ',';
        key_term(f.args()[i], bound, out);
      }
      out += ')';
      return;
    case K::Not:
      out += "~";
      key_formula(f.operand(), bound, out);
      return;
    case K::And:
    case K::Or:
    case K::Implies:
      out += f.kind() == K::And ? "&(" : f.kind() == K::Or ? "|(" : ">(";
      key_formula(f.left(), bound, out);
      out += ',';
      key_formula(f.right(), bound, out);
      out += ')';
      return;
    case K::Forall:
    case K::Exists:
      out += f.kind() == K::Forall ? "A." : "E.";
      bound.push_back(f.variable());
      key_formula(f.operand(), bound, out);
      bound.pop_back();
      return;
  }
}

}  // namespace

std::string canonical_lemma_key(const fol::Formula& f) {
  std::vector<std::string> bound;
  std::string out;
  key_formula(f, bound, out);
  return out;
}

}  // namespace lemmaflow::flow
