#include <doctest.h>

#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "fixtures.hpp"
#include "lemmaflow/flow/discharge.hpp"
#include "lemmaflow/flow/plan.hpp"
#include "lemmaflow/flow/report.hpp"
#include "lemmaflow/lang/parser.hpp"
#include "models.hpp"

using namespace lemmaflow;
using flow::TaskStatus;
using lang::parse_formula;

namespace {

lang::AgentNetwork fixture(const std::string& name) { return lang::parse_network(testkit::read_fixture(name)); }

prover::ResourceLimits fixed_limits(std::size_t clauses = 5000) {
  prover::ResourceLimits l;
  l.max_clauses = clauses;
  l.max_millis.reset();
  return l;
}

// Counts prover calls per goal; answers Proved unless the goal is listed.
struct ScriptedProver {
  std::map<std::string, prover::ProofStatus> verdicts;
  std::mutex mutex;
  std::map<std::string, int> calls;

  flow::ProverFn fn() {
    return [this](const prover::Sequent& s, const prover::ResourceLimits&) {
      const std::string goal = fol::to_string(s.goal);
      {
        std::lock_guard lock(mutex);
        ++calls[goal];
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(2));
      prover::ProofResult r;
      auto it = verdicts.find(goal);
      r.status = it == verdicts.end() ? prover::ProofStatus::Proved : it->second;
      if (r.status == prover::ProofStatus::Proved) r.trace = prover::ProofTrace{};
      if (r.status == prover::ProofStatus::Timeout) r.stats.budget = prover::BudgetHit::Clauses;
      return r;
    };
  }
  int total() {
    int n = 0;
    for (const auto& [g, c] : calls) n += c;
    return n;
  }
};

}  // namespace

TEST_SUITE("plan") {
  TEST_CASE("Peano plan") {
    const auto p = flow::plan(fixture("peano.lfd"));
    REQUIRE(p.tasks.size() == 2);
    CHECK(p.tasks[0].label == "Q0");
    CHECK(p.tasks[1].label == "Step");
    for (const auto& t : p.tasks) {
      CHECK(t.provider == AgentId{"m1"});
      CHECK(t.consumers == std::vector<AgentId>{AgentId{"m"}});
      CHECK(t.status == TaskStatus::Pending);
    }
    CHECK(p.tasks[0].lemma == parse_formula("0 + 1 = 1 + 0"));
    CHECK(p.edges.empty());
    CHECK(p.order == std::vector<std::size_t>{0, 1});
    CHECK(p.root.target == AgentId{"m"});
  }

  TEST_CASE("no query knowledge means no tasks") {
    const auto p = flow::plan(fixture("minimal.lfd"));
    CHECK(p.tasks.empty());
    CHECK(p.order.empty());
  }

  TEST_CASE("cycles are named") {
    try {
      flow::plan(fixture("cyclic.lfd"));
      FAIL("cycle accepted");
    } catch (const flow::PlanError& e) {
      CHECK(std::string(e.what()) == "agent cycle: a -> b -> a");
    }
  }

  TEST_CASE("a shared lemma is one task with two consumers") {
    const auto p = flow::plan(fixture("shared.lfd"));
    REQUIRE(p.tasks.size() == 3);
    std::size_t s = p.tasks.size();
    for (std::size_t i = 0; i < p.tasks.size(); ++i) {
      if (p.tasks[i].label == "S") s = i;
    }
    REQUIRE(s < p.tasks.size());
    CHECK(p.tasks[s].consumers.size() == 2);
    CHECK(p.order.front() == s);
    CHECK(p.edges.size() == 2);
  }

  TEST_CASE("providers come before consumers") {
    const auto p = flow::plan(fixture("nested.lfd"));
    REQUIRE(p.tasks.size() == 2);
    std::map<std::size_t, std::size_t> pos;
    for (std::size_t i = 0; i < p.order.size(); ++i) pos[p.order[i]] = i;
    for (const auto& [before, after] : p.edges) CHECK(pos[before] < pos[after]);
    CHECK(p.task_name(p.order[0]) == "Pd");
  }

  TEST_CASE("one label with two formulas is rejected") {
    const auto net = lang::parse_network(
        "agent b. axiom p(c). axiom q(c). end.\n"
        "agent x1. query L from b: p(c). end.\n"
        "agent top. query L from b: q(c). query X from x1: p(c). end.\n"
        "?- p(c) @ top.");
    CHECK_THROWS_AS(flow::plan(net), flow::PlanError);
  }

  TEST_CASE("duplicate labels from different providers are qualified") {
    const auto net = lang::parse_network(
        "agent b. axiom p(c). end. agent d. axiom q(c). end.\n"
        "agent top. query L from b: p(c). end.\n"
        "agent mid. query L from d: q(c). end.\n"
        "agent root. query A from top: p(c). query B from mid: q(c). end.\n"
        "?- p(c) & q(c) @ root.");
    const auto p = flow::plan(net);
    std::set<std::string> names;
    for (std::size_t i = 0; i < p.tasks.size(); ++i) names.insert(p.task_name(i));
    CHECK(names.contains("L@b"));
    CHECK(names.contains("L@d"));
  }

  TEST_CASE("canonical keys") {
    CHECK(flow::canonical_lemma_key(parse_formula("forall x p(x)")) ==
          flow::canonical_lemma_key(parse_formula("forall y p(y)")));
    CHECK(flow::canonical_lemma_key(parse_formula("p(a)")) != flow::canonical_lemma_key(parse_formula("p(b)")));
    CHECK(flow::canonical_lemma_key(parse_formula("forall x forall y r(x, y)")) !=
          flow::canonical_lemma_key(parse_formula("forall y forall x r(x, y)")));
    CHECK(flow::canonical_lemma_key(parse_formula("forall x exists y r(x, y)")) ==
          flow::canonical_lemma_key(parse_formula("forall u exists v r(u, v)")));
    const auto p = flow::plan(fixture("peano.lfd"));
    CHECK(flow::canonical_lemma_key(p.tasks[0].lemma) != flow::canonical_lemma_key(p.tasks[1].lemma));
  }
}

TEST_SUITE("discharge") {
  TEST_CASE("Peano proves with three subproofs") {
    const auto net = fixture("peano.lfd");
    const auto proof = flow::discharge(net, flow::plan(net), {});
    CHECK(proof.proved());
    for (const auto& l : proof.lemmas) {
      CHECK(l.status == TaskStatus::Proved);
      REQUIRE(l.result);
    }
    REQUIRE(proof.root.result);
    CHECK(proof.composition.lemmas == std::vector<std::string>{"Q0", "Step"});
    CHECK(proof.composition.own_entries == std::vector<std::string>{"induction"});
    // Every trace checks against the sequent it claims to prove.
    for (std::size_t i = 0; i < proof.lemmas.size(); ++i) {
      CHECK(prover::replay(*proof.lemmas[i].result->trace, flow::lemma_sequent(net, proof.plan, i)));
    }
    CHECK(prover::replay(*proof.root.result->trace, flow::root_sequent(net, proof.plan)));
  }

  TEST_CASE("without x + 0 = x the base case fails and the root is never tried") {
    const auto net = fixture("peano_no_ax4.lfd");
    const auto proof = flow::discharge(net, flow::plan(net), {fixed_limits(), 1, {}, nullptr});
    CHECK_FALSE(proof.proved());
    CHECK(proof.lemmas[0].status == TaskStatus::Failed);
    CHECK(proof.lemmas[0].reason == "timeout budget=clauses");
    CHECK(proof.root.status == TaskStatus::Failed);
    CHECK_FALSE(proof.root.result);
    CHECK(proof.root.reason == "dependency Q0");
  }

  TEST_CASE("zero tasks is one prover call at the target") {
    const auto net = fixture("minimal.lfd");
    const auto p = flow::plan(net);
    const auto proof = flow::discharge(net, p, {});
    const auto direct = prover::prove(flow::root_sequent(net, p), {});
    REQUIRE(proof.root.result);
    CHECK(proof.root.result->status == direct.status);
    CHECK(proof.root.result->trace == direct.trace);
  }

  TEST_CASE("lemma sequents use the provider's own lemmas") {
    const auto net = fixture("nested.lfd");
    const auto p = flow::plan(net);
    std::size_t qg = p.tasks[0].label == "Qg" ? 0 : 1;
    const auto s = flow::lemma_sequent(net, p, qg);
    CHECK(s.owner == AgentId{"middle"});
    CHECK(s.hypotheses.size() == 2);
    CHECK(s.hypotheses.back() == parse_formula("p(f(c))"));
  }

  TEST_CASE("a shared lemma is proved once") {
    const auto net = fixture("shared.lfd");
    for (std::size_t jobs : {1u, 4u}) {
      ScriptedProver sp;
      flow::LemmaCache cache;
      const auto proof = flow::discharge(net, flow::plan(net), {fixed_limits(), jobs, sp.fn(), &cache});
      CHECK(proof.proved());
      CHECK(sp.calls["s(c)"] == 1);
      CHECK(cache.audit().size() == 3);
      std::set<std::pair<AgentId, std::string>> keys;
      for (const auto& a : cache.audit()) CHECK(keys.insert(a.key).second);
    }
  }

  TEST_CASE("alpha-variant lemmas from one provider share a proof") {
    const auto net = lang::parse_network(
        "agent b. axiom forall x p(x). end.\n"
        "agent l. query A from b: forall x p(x). end.\n"
        "agent r. query B from b: forall y p(y). end.\n"
        "agent top. query P from l: p(c). query R from r: p(d). end.\n"
        "?- p(c) & p(d) @ top.");
    ScriptedProver sp;
    flow::LemmaCache cache;
    const auto proof = flow::discharge(net, flow::plan(net), {fixed_limits(), 2, sp.fn(), &cache});
    CHECK(proof.proved());
    CHECK(sp.total() == 3 + 1);
    CHECK(cache.audit().size() == 3);
  }

  TEST_CASE("a failed lemma blocks its dependents without prover calls") {
    const auto net = fixture("nested.lfd");
    for (std::size_t jobs : {1u, 8u}) {
      ScriptedProver sp;
      sp.verdicts["p(f(c))"] = prover::ProofStatus::Exhausted;
      const auto proof = flow::discharge(net, flow::plan(net), {fixed_limits(), jobs, sp.fn(), nullptr});
      CHECK_FALSE(proof.proved());
      CHECK(sp.total() == 1);
      const auto& p = proof.plan;
      for (std::size_t i = 0; i < p.tasks.size(); ++i) {
        CHECK(proof.lemmas[i].status == TaskStatus::Failed);
        if (p.tasks[i].label == "Qg") {
          CHECK_FALSE(proof.lemmas[i].result);
          CHECK(proof.lemmas[i].reason == "dependency Pd");
        } else {
          CHECK(proof.lemmas[i].reason == "exhausted");
        }
      }
      CHECK(proof.root.reason == "dependency Qg");
    }
  }

  TEST_CASE("independent lemmas still run when a sibling fails") {
    const auto net = fixture("shared.lfd");
    ScriptedProver sp;
    sp.verdicts["p(c)"] = prover::ProofStatus::Timeout;
    const auto proof = flow::discharge(net, flow::plan(net), {fixed_limits(), 3, sp.fn(), nullptr});
    CHECK(sp.calls["q(c)"] == 1);
    CHECK(sp.calls["p(c) & q(c)"] == 0);
    CHECK(proof.root.reason == "dependency P");
  }

  TEST_CASE("prover exceptions become failed tasks") {
    const auto net = fixture("shared.lfd");
    flow::ProverFn boom = [](const prover::Sequent&, const prover::ResourceLimits&) -> prover::ProofResult {
      throw std::runtime_error("disk on fire");
    };
    const auto proof = flow::discharge(net, flow::plan(net), {fixed_limits(), 2, boom, nullptr});
    CHECK_FALSE(proof.proved());
    bool saw = false;
    for (const auto& l : proof.lemmas) saw = saw || l.reason == "error: disk on fire";
    CHECK(saw);
  }

  TEST_CASE("reports do not depend on the number of jobs") {
    for (const char* name : {"peano.lfd", "peano_no_ax4.lfd", "shared.lfd", "nested.lfd", "minimal.lfd"}) {
      CAPTURE(name);
      const auto net = fixture(name);
      const auto p = flow::plan(net);
      const auto one = flow::discharge(net, p, {fixed_limits(), 1, {}, nullptr});
      const auto many = flow::discharge(net, p, {fixed_limits(), 8, {}, nullptr});
      CHECK(flow::render_report(one, flow::Verbosity::Full) == flow::render_report(many, flow::Verbosity::Full));
    }
  }

  TEST_CASE("the cache computes once under contention") {
    flow::LemmaCache cache;
    std::atomic<int> calls{0};
    std::vector<std::thread> threads;
    for (int i = 0; i < 8; ++i) {
      threads.emplace_back([&] {
        cache.get_or_prove({AgentId{"b"}, "k"}, "L", [&] {
          ++calls;
          std::this_thread::sleep_for(std::chrono::milliseconds(20));
          return prover::ProofResult{};
        });
      });
    }
    for (auto& t : threads) t.join();
    CHECK(calls == 1);
    CHECK(cache.size() == 1);
    CHECK(cache.audit().size() == 1);
  }

  TEST_CASE("proved compositions are entailed in every small model") {
    for (const char* name : {"shared.lfd", "nested.lfd", "minimal.lfd"}) {
      CAPTURE(name);
      const auto net = fixture(name);
      const auto proof = flow::discharge(net, flow::plan(net), {fixed_limits(), 2, {}, nullptr});
      REQUIRE(proof.proved());
      std::vector<fol::Formula> axioms;
      for (const auto& a : net.agents) {
        for (const auto& e : a.entries) {
          if (e.kind != lang::EntryKind::QueryKnowledge) axioms.push_back(lang::entry_formula(net, e));
        }
      }
      CHECK_FALSE(testkit::find_countermodel(axioms, net.query.goal, 3));
    }
  }
}

TEST_SUITE("report") {
  TEST_CASE("table layout") {
    const auto net = fixture("shared.lfd");
    const auto proof = flow::discharge(net, flow::plan(net), {fixed_limits(), 1, {}, nullptr});
    const std::string text = flow::render_report(proof, flow::Verbosity::Summary);
    CHECK(text.rfind("goal: p(c) & q(c) @ top\n", 0) == 0);
    CHECK(text.find("S     base      left, right  Proved") != std::string::npos);
    CHECK(text.find("composition: top proves the goal from [] with lemmas [S, P, R]") != std::string::npos);
    CHECK(text.find("overall: Proved\n") != std::string::npos);
    CHECK(text.find("trace") == std::string::npos);
    CHECK(flow::render_report(proof, flow::Verbosity::Full).find("trace S at base:\n") != std::string::npos);
  }

  TEST_CASE("check summary") {
    const auto net = fixture("peano.lfd");
    CHECK(flow::render_check(net, flow::plan(net)) == "2 agents, 10 entries, 2 lemma tasks, order: [Q0, Step, root]");
    const auto one = fixture("minimal.lfd");
    CHECK(flow::render_check(one, flow::plan(one)) == "1 agent, 1 entry, 0 lemma tasks, order: [root]");
  }
}
