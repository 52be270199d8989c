#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lemmaflow/fol/formula.hpp"
#include "lemmaflow/fol/ground_eval.hpp"

namespace lemmaflow::testkit {

/// Symbols to interpret; "=" is never listed since it is always identity.
struct Vocabulary {
  std::vector<std::pair<std::string, std::size_t>> functions;
  std::vector<std::pair<std::string, std::size_t>> predicates;
};

Vocabulary vocabulary_of(const std::vector<fol::Formula>& formulas);

/// Number of interpretations of `v` over a domain of `n` elements.
double model_count(const Vocabulary& v, int n);

/// Visits every interpretation over {0..n-1} until `visit` returns false.
/// Returns false iff the walk was cut short.
bool for_each_model(const Vocabulary& v, int n, const std::function<bool(const fol::Interpretation&)>& visit);

/// Truth of the universal closure.
bool holds(const fol::Formula& f, const fol::Interpretation& m);

/// A structure of size 1..max_domain satisfying every hypothesis and
/// falsifying the goal.
std::optional<fol::Interpretation> find_countermodel(const std::vector<fol::Formula>& hypotheses,
                                                     const fol::Formula& goal, int max_domain);

/// Some structure of size 1..max_domain satisfying every formula.
std::optional<fol::Interpretation> find_model(const std::vector<fol::Formula>& formulas, int max_domain);

}  // namespace lemmaflow::testkit
