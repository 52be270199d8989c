#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lemmaflow::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kProofFailure = 2 };

/// `lemmaflow prove|diagram|check <input> [options]`; `args` excludes the
/// program name. Results go to `out` (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lemmaflow::cli
