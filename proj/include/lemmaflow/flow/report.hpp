#pragma once

#include <string>

#include "lemmaflow/flow/discharge.hpp"

namespace lemmaflow::flow {

enum class Verbosity { Summary, Full };

/// Plain-text table, one row per task and one for the root, followed by
/// the composition and the overall verdict. Full adds every trace.
/// Contains nothing that varies between runs with identical outcomes.
std::string render_report(const LemmaFlowProof& proof, Verbosity verbosity);

/// "2 agents, 10 entries, 2 lemma tasks, order: [Q0, Step, root]"
std::string render_check(const lang::AgentNetwork& net, const LemmaFlowPlan& plan);

}  // namespace lemmaflow::flow
