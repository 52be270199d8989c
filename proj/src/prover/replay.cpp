#include <map>
#include <sstream>

#include "lemmaflow/prover/prover.hpp"

namespace lemmaflow::prover {

using fol::Clause;

std::string to_string(const ProofTrace& trace) {
  std::ostringstream out;
  for (const TraceStep& step : trace.steps) {
    out << step.id << '\t' << rule_name(step.rule) << '\t';
    if (step.parents.empty()) {
      out << '-';
    } else {
      for (std::size_t i = 0; i < step.parents.size(); ++i) out << (i ? "," : "") << step.parents[i];
    }
    out << '\t' << fol::to_string(step.unifier) << '\t' << fol::to_string(step.clause) << '\n';
  }
  return out.str();
}

namespace {

bool rederives(const std::vector<Inference>& candidates, const TraceStep& step) {
  for (const Inference& inf : candidates) {
    if (inf.unifier == step.unifier && fol::normalize_variables(inf.clause) == step.clause) return true;
  }
  return false;
}

}  // namespace

ReplayReport replay(const ProofTrace& trace, const Sequent& s) {
  auto fail = [](std::size_t index, std::string reason) {
    return ReplayReport{false, index, std::move(reason)};
  };
  if (trace.steps.empty()) return ReplayReport{false, std::nullopt, "empty trace"};

  std::vector<ProblemClause> inputs;
  try {
    inputs = problem_clauses(s);
  } catch (const IllFormedSequent& e) {
    return ReplayReport{false, std::nullopt, e.what()};
  }

  std::map<std::size_t, const Clause*> derived;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& step = trace.steps[i];
    if (derived.contains(step.id)) return fail(i, "duplicate step id");
    if (!derived.empty() && step.id <= derived.rbegin()->first) return fail(i, "step ids out of order");

    std::vector<const Clause*> parents;
    for (std::size_t p : step.parents) {
      auto it = derived.find(p);
      if (it == derived.end()) return fail(i, "parent " + std::to_string(p) + " is not an earlier step");
      parents.push_back(it->second);
    }

    switch (step.rule) {
      case StepRule::Input:
      case StepRule::EqualityAxiom: {
        if (!parents.empty()) return fail(i, "input step with parents");
        const bool found = std::any_of(inputs.begin(), inputs.end(), [&](const ProblemClause& pc) {
          return pc.rule == step.rule && pc.clause == step.clause;
        });
        if (!found) return fail(i, "clause is not part of the problem");
        break;
      }
      case StepRule::Factor:
        if (parents.size() != 1) return fail(i, "factor needs one parent");
        if (!rederives(factors(*parents[0]), step)) return fail(i, "factor does not follow from its parent");
        break;
      case StepRule::Resolve:
        if (parents.size() != 2) return fail(i, "resolution needs two parents");
        if (!rederives(resolvents(*parents[0], fol::normalize_variables(*parents[1], "y")), step)) {
          return fail(i, "resolvent does not follow from its parents");
        }
        break;
    }
    derived.emplace(step.id, &step.clause);
  }
  if (!trace.steps.back().clause.empty()) return fail(trace.steps.size() - 1, "last step is not the empty clause");
  return ReplayReport{true, std::nullopt, ""};
}

}  // namespace lemmaflow::prover
