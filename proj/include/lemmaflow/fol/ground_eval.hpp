#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lemmaflow/fol/formula.hpp"

namespace lemmaflow::fol {

/// Finite structure over the domain {0, ..., domain_size - 1}. Tables are
/// indexed by the argument tuple read as a base-domain_size number with
/// the first argument least significant.
struct Interpretation {
  int domain_size = 1;
  std::map<std::string, std::vector<int>> functions;
  std::map<std::string, std::vector<bool>> predicates;

  static std::size_t index(std::span<const int> args, int domain_size);
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Assignment = std::map<std::string, int>;

/// Classical truth in `interp`; quantifiers range over the domain and
/// equality is identity. Throws EvalError on symbols missing from the
/// interpretation, wrong table sizes, or unassigned free variables.
bool ground_eval(const Formula& f, const Interpretation& interp, const Assignment& env = {});
int ground_eval(const Term& t, const Interpretation& interp, const Assignment& env = {});

}  // namespace lemmaflow::fol
