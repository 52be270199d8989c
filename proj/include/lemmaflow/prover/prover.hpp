#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lemmaflow/agent_id.hpp"
#include "lemmaflow/fol/clause.hpp"
#include "lemmaflow/fol/formula.hpp"
#include "lemmaflow/fol/signature.hpp"
#include "lemmaflow/fol/substitution.hpp"

namespace lemmaflow::prover {

/// Δ ⊢ B for one agent. Free variables are read universally.
struct Sequent {
  std::vector<fol::Formula> hypotheses;
  fol::Formula goal = fol::Formula::top();
  AgentId owner;
};

struct ResourceLimits {
  std::size_t max_clauses = 50'000;
  std::size_t max_depth = 30;
  /// nullopt disables the wall-clock budget.
  std::optional<std::chrono::milliseconds> max_millis = std::chrono::milliseconds(10'000);

  /// Throws std::invalid_argument unless every limit is positive.
  void validate() const;

  friend bool operator==(const ResourceLimits&, const ResourceLimits&) = default;
};

enum class ProofStatus { Proved, Exhausted, Timeout };
enum class BudgetHit { None, Clauses, WallClock };

std::string_view status_name(ProofStatus s) noexcept;

struct ProofStats {
  std::size_t generated = 0;
  std::size_t kept = 0;
  std::size_t given = 0;
  std::size_t depth_reached = 0;
  std::size_t iterations = 0;
  BudgetHit budget = BudgetHit::None;
  std::chrono::milliseconds elapsed{0};
};

enum class StepRule { Input, EqualityAxiom, Resolve, Factor };

std::string_view rule_name(StepRule r) noexcept;

struct TraceStep {
  std::size_t id = 0;
  StepRule rule = StepRule::Input;
  std::vector<std::size_t> parents;
  fol::Substitution unifier;
  fol::Clause clause;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

/// Steps in id order; the last one derives the empty clause. For Resolve
/// the second parent's variables are renamed with prefix "y" before
/// unification (normalize_variables(parent, "y")).
struct ProofTrace {
  std::vector<TraceStep> steps;

  friend bool operator==(const ProofTrace&, const ProofTrace&) = default;
};

/// One line per step: id, rule, parents, unifier, clause, tab separated.
std::string to_string(const ProofTrace& trace);

struct ProofResult {
  ProofStatus status = ProofStatus::Exhausted;
  std::optional<ProofTrace> trace;  // present iff Proved
  ProofStats stats;
};

class IllFormedSequent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reflexivity, symmetry, transitivity, then one congruence axiom per
/// argument position of each function and non-equality predicate.
std::vector<fol::Formula> equality_axioms(const fol::Signature& signature);

struct ProblemClause {
  fol::Clause clause;  // variables normalized with prefix "x"
  StepRule rule;       // Input or EqualityAxiom
};

/// Clauses of Δ ∧ ¬B, followed by equality axioms when "=" occurs.
/// Throws IllFormedSequent on arity conflicts or reserved symbols.
std::vector<ProblemClause> problem_clauses(const Sequent& s);

/// Given-clause resolution with iterative deepening on inference depth.
/// Exhausted: no refutation exists within max_depth. Timeout: the clause
/// or wall-clock budget ran out first.
ProofResult prove(const Sequent& s, const ResourceLimits& limits);

struct Inference {
  fol::Clause clause;
  fol::Substitution unifier;
};

/// Binary resolvents on every complementary pair; c1 and c2 must not
/// share variables.
std::vector<Inference> resolvents(const fol::Clause& c1, const fol::Clause& c2);
std::vector<fol::Clause> resolve(const fol::Clause& c1, const fol::Clause& c2);

/// Positive and negative factors from unifying two same-signed literals.
std::vector<Inference> factors(const fol::Clause& c);

/// True iff one substitution maps the literals of `general` onto distinct
/// literals of `specific` (multiset subsumption).
bool subsumes(const fol::Clause& general, const fol::Clause& specific);

struct ReplayReport {
  bool ok = false;
  std::optional<std::size_t> failed_step;  // index into trace.steps
  std::string reason;

  explicit operator bool() const noexcept { return ok; }
};

/// Independent re-check: every step re-derives its clause from earlier
/// steps (or from the sequent's own clauses) and the last step is empty.
ReplayReport replay(const ProofTrace& trace, const Sequent& s);

}  // namespace lemmaflow::prover
