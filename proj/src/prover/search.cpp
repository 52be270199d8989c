#include <algorithm>
#include <array>
#include <cstdint>
#include <tuple>
#include <functional>
#include <queue>
#include <unordered_map>

#include "lemmaflow/prover/prover.hpp"

namespace lemmaflow::prover {

using fol::Clause;
using fol::Literal;
using fol::Substitution;
using Clock = std::chrono::steady_clock;

void ResourceLimits::validate() const {
  if (max_clauses == 0) throw std::invalid_argument("max_clauses must be positive");
  if (max_depth == 0) throw std::invalid_argument("max_depth must be positive");
  if (max_millis && max_millis->count() <= 0) throw std::invalid_argument("max_millis must be positive");
}

std::string_view status_name(ProofStatus s) noexcept {
  switch (s) {
    case ProofStatus::Proved: return "Proved";
    case ProofStatus::Exhausted: return "Exhausted";
    case ProofStatus::Timeout: return "Timeout";
  }
  return "?";
}

std::string_view rule_name(StepRule r) noexcept {
  switch (r) {
    case StepRule::Input: return "input";
    case StepRule::EqualityAxiom: return "equality-axiom";
    case StepRule::Resolve: return "resolve";
    case StepRule::Factor: return "factor";
  }
  return "?";
}

namespace {

struct ClauseHash {
  std::size_t operator()(const Clause& c) const noexcept {
    std::size_t h = c.size();
    for (const Literal& l : c.literals()) {
      h = h * 31 + (l.positive ? 17 : 3) + std::hash<std::string>{}(l.predicate);
      for (const auto& t : l.args) h = h * 131 + t.hash();
    }
    return h;
  }
};

struct Record {
  Clause clause;
  std::size_t depth;
  StepRule rule;
  std::vector<std::size_t> parents;
  Substitution unifier;
  std::size_t weight;
};

struct SharedBudget {
  std::size_t kept = 0;
  std::size_t max_clauses = 0;
  std::optional<Clock::time_point> deadline;
  BudgetHit hit = BudgetHit::None;
  ProofStats& stats;
};

/// Discrimination tree over literals, queried for possible generalizations.
/// Variables are collapsed to one wildcard, so hits still need matching.
class GeneralizationIndex {
 public:
  void insert(const Literal& lit, std::size_t id) {
    std::vector<std::string> keys;
    flatten(lit, keys, nullptr);
    std::size_t node = 0;
    for (const std::string& k : keys) {
      auto it = nodes_[node].children.find(k);
      if (it == nodes_[node].children.end()) {
        const std::size_t next = nodes_.size();
        nodes_[node].children.emplace(k, next);
        nodes_.emplace_back();
        node = next;
      } else {
        node = it->second;
      }
    }
    nodes_[node].ids.push_back(id);
  }

  template <typename Visit>
  void generalizations(const Literal& lit, Visit&& visit) const {
    std::vector<std::string> keys;
    std::vector<std::size_t> ends;
    flatten(lit, keys, &ends);
    walk(0, 0, keys, ends, visit);
  }

 private:
  // Not a legal symbol name; "*" is multiplication.
  inline static const std::string kWildcard = "\x01";

  struct Node {
    std::unordered_map<std::string, std::size_t> children;
    std::vector<std::size_t> ids;
  };

  static void flatten_term(const fol::Term& t, std::vector<std::string>& keys, std::vector<std::size_t>* ends) {
    const std::size_t at = keys.size();
    keys.push_back(t.is_var() ? std::string(kWildcard) : t.name());
    if (ends) ends->push_back(0);
    for (const auto& a : t.args()) flatten_term(a, keys, ends);
    if (ends) (*ends)[at] = keys.size();
  }

  static void flatten(const Literal& lit, std::vector<std::string>& keys, std::vector<std::size_t>* ends) {
    keys.push_back((lit.positive ? "+" : "-") + lit.predicate);
    if (ends) ends->push_back(1);
    for (const auto& a : lit.args) flatten_term(a, keys, ends);
  }

  template <typename Visit>
  void walk(std::size_t node, std::size_t pos, const std::vector<std::string>& keys,
            const std::vector<std::size_t>& ends, Visit& visit) const {
    const Node& n = nodes_[node];
    if (pos == keys.size()) {
      for (std::size_t id : n.ids) visit(id);
      return;
    }
    if (pos > 0) {
      if (auto it = n.children.find(kWildcard); it != n.children.end()) walk(it->second, ends[pos], keys, ends, visit);
      if (keys[pos] == kWildcard) return;
    }
    if (auto it = n.children.find(keys[pos]); it != n.children.end()) walk(it->second, pos + 1, keys, ends, visit);
  }

  std::vector<Node> nodes_{1};
};

std::size_t function_symbols(const fol::Term& t) {
  if (t.is_var()) return 0;
  std::size_t n = 1;
  for (const auto& a : t.args()) n += function_symbols(a);
  return n;
}

/// Index a clause under its most specific literal.
const Literal& index_literal(const Clause& c) {
  const Literal* best = nullptr;
  std::size_t best_score = 0;
  for (const Literal& l : c.literals()) {
    std::size_t score = 0;
    for (const auto& a : l.args) score += function_symbols(a);
    if (!best || score > best_score) {
      best = &l;
      best_score = score;
    }
  }
  return *best;
}

/// Counts that cannot decrease from a subsuming clause to a subsumed one
/// (under multiset subsumption). Saturating, so the order survives.
using Features = std::array<std::uint8_t, 16>;

void count_symbols(const fol::Term& t, Features& f) {
  if (t.is_var()) return;
  auto& slot = f[4 + std::hash<std::string>{}(t.name()) % 12];
  if (slot < 255) ++slot;
  for (const auto& a : t.args()) count_symbols(a, f);
}

Features features(const Clause& c) {
  Features f{};
  for (const Literal& l : c.literals()) {
    auto& slot = f[(l.positive ? 0 : 1) + (l.is_equality() ? 2 : 0)];
    if (slot < 255) ++slot;
    for (const auto& a : l.args) count_symbols(a, f);
  }
  return f;
}

bool features_below(const Features& a, const Features& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

enum class Outcome { Proved, Saturated, Budget };

/// One saturation pass with clauses deeper than `bound_` never selected.
class Search {
 public:
  Search(const std::vector<ProblemClause>& inputs, std::size_t bound, bool equality, SharedBudget& budget)
      : inputs_(inputs), bound_(bound), equality_(equality), budget_(budget) {}

  Outcome run() {
    // Equality axioms are the background: always satisfiable, so only
    // clauses descending from the problem itself are ever selected.
    for (const auto& pc : inputs_) {
      if (pc.rule == StepRule::EqualityAxiom) {
        if (equality_) add_background(pc.clause);
      } else if (add(pc.clause, 0, pc.rule, {}, {})) {
        return Outcome::Proved;
      }
    }
    while (true) {
      const std::optional<std::size_t> given = next_given();
      if (!given) break;
      if (budget_.kept >= budget_.max_clauses) {
        budget_.hit = BudgetHit::Clauses;
        return Outcome::Budget;
      }
      if (budget_.deadline && Clock::now() >= *budget_.deadline) {
        budget_.hit = BudgetHit::WallClock;
        return Outcome::Budget;
      }
      ++budget_.stats.given;
      if (process(*given)) return Outcome::Proved;
    }
    return Outcome::Saturated;
  }

  bool cut() const { return cut_; }
  std::size_t empty_id() const { return empty_id_; }
  const std::vector<Record>& store() const { return store_; }
  std::size_t max_depth_seen() const { return max_depth_seen_; }

 private:
  using LitRef = std::pair<std::size_t, std::size_t>;  // record id, literal index

  bool process(std::size_t gid) {
    const std::size_t depth = store_[gid].depth + 1;
    {
      const Clause given = store_[gid].clause;
      for (auto& f : factors(given)) {
        if (add(fol::normalize_variables(f.clause), depth, StepRule::Factor, {gid}, std::move(f.unifier))) {
          return true;
        }
      }
    }
    // Activate, then resolve against everything active including itself.
    activate(gid);
    const Clause given = store_[gid].clause;
    for (std::size_t i = 0; i < given.size(); ++i) {
      const Literal& lit = given.literals()[i];
      auto bucket = active_.find((lit.positive ? "-" : "+") + lit.predicate);
      if (bucket == active_.end()) continue;
      const std::vector<LitRef> partners = bucket->second;
      for (const auto& [pid, j] : partners) {
        const Clause& renamed = renamed_apart(pid);
        const Literal& other = renamed.literals()[j];
        if (!quick_compatible(lit, other)) continue;
        Substitution tri;
        if (!fol::unify_args(lit.args, other.args, tri)) continue;
        Substitution mgu = fol::resolved(tri);
        std::vector<Literal> lits;
        lits.reserve(given.size() + renamed.size() - 2);
        for (std::size_t k = 0; k < given.size(); ++k) {
          if (k != i) lits.push_back(given.literals()[k].apply(mgu));
        }
        for (std::size_t k = 0; k < renamed.size(); ++k) {
          if (k != j) lits.push_back(renamed.literals()[k].apply(mgu));
        }
        const std::size_t d = std::max(store_[gid].depth, store_[pid].depth) + 1;
        if (add(fol::normalize_variables(Clause(std::move(lits))), d, StepRule::Resolve, {gid, pid},
                std::move(mgu))) {
          return true;
        }
      }
    }
    return false;
  }

  void activate(std::size_t id) {
    const auto& lits = store_[id].clause.literals();
    for (std::size_t i = 0; i < lits.size(); ++i) {
      active_[(lits[i].positive ? "+" : "-") + lits[i].predicate].push_back({id, i});
    }
  }

  void add_background(const Clause& c) {
    ++budget_.stats.generated;
    ++budget_.kept;
    store_.push_back({c, 0, StepRule::EqualityAxiom, {}, {}, c.weight()});
    seen_stamp_.push_back(0);
    features_.push_back(features(store_.back().clause));
    activate(store_.size() - 1);
  }

  std::optional<std::size_t> next_given() {
    if (passive_.empty()) return std::nullopt;
    const std::size_t id = std::get<2>(passive_.top());
    passive_.pop();
    return id;
  }

  static bool quick_compatible(const Literal& a, const Literal& b) {
    for (std::size_t k = 0; k < a.args.size(); ++k) {
      const auto& x = a.args[k];
      const auto& y = b.args[k];
      if (!x.is_var() && !y.is_var() && (x.name() != y.name() || x.args().size() != y.args().size())) {
        return false;
      }
    }
    return true;
  }

  const Clause& renamed_apart(std::size_t id) {
    auto it = renamed_.find(id);
    if (it == renamed_.end()) {
      it = renamed_.emplace(id, fol::normalize_variables(store_[id].clause, "y")).first;
    }
    return it->second;
  }

  bool subsumed(const Clause& c, std::size_t depth) {
    ++stamp_;
    const Features fc = features(c);
    bool found = false;
    for (const Literal& l : c.literals()) {
      subsumption_index_.generalizations(l, [&](std::size_t id) {
        if (found || seen_stamp_[id] == stamp_) return;
        seen_stamp_[id] = stamp_;
        const Record& r = store_[id];
        if (r.depth <= depth && features_below(features_[id], fc) && subsumes(r.clause, c)) found = true;
      });
      if (found) return true;
    }
    return false;
  }

  /// Returns true when the empty clause was derived.
  bool add(Clause c, std::size_t depth, StepRule rule, std::vector<std::size_t> parents, Substitution unifier) {
    ++budget_.stats.generated;
    if (!c.empty()) {
      if (c.is_tautology()) return false;
      auto dup = seen_.find(c);
      if (dup != seen_.end() && dup->second <= depth) return false;
      if (subsumed(c, depth)) return false;
    }
    const std::size_t id = store_.size();
    const std::size_t weight = c.weight();
    store_.push_back({std::move(c), depth, rule, std::move(parents), std::move(unifier), weight});
    seen_stamp_.push_back(0);
    features_.push_back(features(store_.back().clause));
    max_depth_seen_ = std::max(max_depth_seen_, depth);
    const Record& r = store_.back();
    if (r.clause.empty()) {
      empty_id_ = id;
      return true;
    }
    ++budget_.kept;
    seen_[r.clause] = depth;
    subsumption_index_.insert(index_literal(r.clause), id);
    if (depth < bound_) {
      passive_.push({r.clause.size(), r.weight, id});
    } else {
      cut_ = true;
    }
    return false;
  }

  const std::vector<ProblemClause>& inputs_;
  std::size_t bound_;
  bool equality_;
  SharedBudget& budget_;
  std::vector<Record> store_;
  // Smallest first: fewest literals, then fewest symbols, then oldest.
  using Key = std::tuple<std::size_t, std::size_t, std::size_t>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> passive_;
  std::unordered_map<std::string, std::vector<LitRef>> active_;
  GeneralizationIndex subsumption_index_;
  std::vector<std::size_t> seen_stamp_;
  std::vector<Features> features_;
  std::size_t stamp_ = 0;
  std::unordered_map<Clause, std::size_t, ClauseHash> seen_;
  std::unordered_map<std::size_t, Clause> renamed_;
  bool cut_ = false;
  std::size_t empty_id_ = 0;
  std::size_t max_depth_seen_ = 0;
};

ProofTrace extract_trace(const std::vector<Record>& store, std::size_t empty_id) {
  std::vector<bool> needed(store.size(), false);
  std::vector<std::size_t> stack{empty_id};
  while (!stack.empty()) {
    const std::size_t id = stack.back();
    stack.pop_back();
    if (needed[id]) continue;
    needed[id] = true;
    for (std::size_t p : store[id].parents) stack.push_back(p);
  }
  ProofTrace trace;
  for (std::size_t id = 0; id < store.size(); ++id) {
    if (!needed[id]) continue;
    const Record& r = store[id];
    trace.steps.push_back({id, r.rule, r.parents, r.unifier, r.clause});
  }
  return trace;
}

}  // namespace

ProofResult prove(const Sequent& s, const ResourceLimits& limits) {
  limits.validate();
  const auto start = Clock::now();
  const std::vector<ProblemClause> inputs = problem_clauses(s);
  const bool has_equality = std::any_of(inputs.begin(), inputs.end(), [](const ProblemClause& pc) {
    return pc.rule == StepRule::EqualityAxiom;
  });

  ProofResult result;
  std::optional<Clock::time_point> deadline;
  if (limits.max_millis) deadline = start + *limits.max_millis;
  SharedBudget full{0, limits.max_clauses, deadline, BudgetHit::None, result.stats};
  // Passes that treat "=" as an ordinary predicate search a subset of the
  // clause set, so any refutation they find stands. They draw on their own
  // clause budget so the full passes behave the same with or without them.
  SharedBudget plain{0, limits.max_clauses, deadline, BudgetHit::None, result.stats};
  bool plain_open = has_equality;

  auto finish = [&](ProofStatus status, BudgetHit hit = BudgetHit::None) {
    result.status = status;
    result.stats.budget = hit;
    result.stats.kept = full.kept + plain.kept;
    result.stats.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
    return result;
  };

  enum class Step { Continue, Closed, Done };
  auto pass = [&](std::size_t bound, bool equality, SharedBudget& budget) {
    Search search(inputs, bound, equality, budget);
    const Outcome outcome = search.run();
    result.stats.depth_reached = std::max(result.stats.depth_reached, search.max_depth_seen());
    switch (outcome) {
      case Outcome::Proved:
        result.trace = extract_trace(search.store(), search.empty_id());
        finish(ProofStatus::Proved);
        return Step::Done;
      case Outcome::Budget:
        if (&budget == &plain && budget.hit == BudgetHit::Clauses) return Step::Closed;
        finish(ProofStatus::Timeout, budget.hit);
        return Step::Done;
      case Outcome::Saturated:
        // Nothing was held back by the depth bound: deeper passes add nothing.
        return search.cut() ? Step::Continue : Step::Closed;
    }
    return Step::Continue;
  };
  auto plain_pass = [&](std::size_t bound) {
    if (!plain_open || bound > limits.max_depth) return false;
    const Step step = pass(bound, false, plain);
    if (step == Step::Closed) plain_open = false;
    return step == Step::Done;
  };

  // The plain passes run one bound ahead of the full ones.
  if (plain_pass(1)) return result;
  for (std::size_t bound = 1; bound <= limits.max_depth; ++bound) {
    ++result.stats.iterations;
    if (plain_pass(bound + 1)) return result;
    const Step step = pass(bound, has_equality, full);
    if (step == Step::Done) return result;
    if (step == Step::Closed) return finish(ProofStatus::Exhausted);
  }
  return finish(ProofStatus::Exhausted);
}

}  // namespace lemmaflow::prover
