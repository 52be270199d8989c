#include "models.hpp"

#include <cmath>

#include "lemmaflow/fol/signature.hpp"

namespace lemmaflow::testkit {

Vocabulary vocabulary_of(const std::vector<fol::Formula>& formulas) {
  fol::Signature sig;
  for (const auto& f : formulas) sig.add(f);
  Vocabulary v;
  for (const auto& [name, info] : sig.symbols()) {
    if (name == "=") continue;
    auto& list = info.kind == fol::SymbolKind::Function ? v.functions : v.predicates;
    list.emplace_back(name, info.arity);
  }
  return v;
}

namespace {

std::size_t power(int base, std::size_t exp) {
  std::size_t r = 1;
  while (exp--) r *= static_cast<std::size_t>(base);
  return r;
}

}  // namespace

double model_count(const Vocabulary& v, int n) {
  double log_total = 0;
  for (const auto& [name, arity] : v.functions) log_total += std::log(n) * static_cast<double>(power(n, arity));
  for (const auto& [name, arity] : v.predicates) log_total += std::log(2.0) * static_cast<double>(power(n, arity));
  return std::exp(log_total);
}

bool for_each_model(const Vocabulary& v, int n, const std::function<bool(const fol::Interpretation&)>& visit) {
  fol::Interpretation m;
  m.domain_size = n;
  // One odometer digit per table cell.
  struct Cell {
    std::vector<int>* function;
    std::vector<bool>* predicate;
    std::size_t index;
  };
  std::vector<Cell> cells;
  for (const auto& [name, arity] : v.functions) {
    const std::size_t size = power(n, arity);
    auto& table = m.functions[name];
    table.assign(size, 0);
    for (std::size_t i = 0; i < size; ++i) cells.push_back({&table, nullptr, i});
  }
  for (const auto& [name, arity] : v.predicates) {
    const std::size_t size = power(n, arity);
    auto& table = m.predicates[name];
    table.assign(size, false);
    for (std::size_t i = 0; i < size; ++i) cells.push_back({nullptr, &table, i});
  }
  while (true) {
    if (!visit(m)) return false;
    std::size_t k = 0;
    for (; k < cells.size(); ++k) {
      const Cell& c = cells[k];
      if (c.predicate) {
        const bool was_set = (*c.predicate)[c.index];
        (*c.predicate)[c.index] = !was_set;
        if (!was_set) break;
      } else {
        int& value = (*c.function)[c.index];
        if (++value < n) break;
        value = 0;
      }
    }
    if (k == cells.size()) return true;
  }
}

bool holds(const fol::Formula& f, const fol::Interpretation& m) {
  return fol::ground_eval(fol::universal_closure(f), m);
}

std::optional<fol::Interpretation> find_countermodel(const std::vector<fol::Formula>& hypotheses,
                                                     const fol::Formula& goal, int max_domain) {
  std::vector<fol::Formula> all = hypotheses;
  all.push_back(goal);
  const Vocabulary v = vocabulary_of(all);
  std::optional<fol::Interpretation> found;
  for (int n = 1; n <= max_domain && !found; ++n) {
    for_each_model(v, n, [&](const fol::Interpretation& m) {
      for (const auto& h : hypotheses) {
        if (!holds(h, m)) return true;
      }
      if (holds(goal, m)) return true;
      found = m;
      return false;
    });
  }
  return found;
}

std::optional<fol::Interpretation> find_model(const std::vector<fol::Formula>& formulas, int max_domain) {
  return find_countermodel(formulas, fol::Formula::bottom(), max_domain);
}

}  // namespace lemmaflow::testkit
