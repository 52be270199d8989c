#pragma once

#include <string_view>

#include "lemmaflow/fol/formula.hpp"
#include "lemmaflow/fol/term.hpp"
#include "lemmaflow/lang/annotated.hpp"

namespace lemmaflow::lang {

// Grammar, loosest to tightest:
//   formula  := disj [ '->' formula ]
//   disj     := conj { '|' conj }
//   conj     := unary { '&' unary }
//   unary    := '~' unary | ('forall'|'exists') VAR unary | primary [ '^' AGENT ]
//   primary  := 'true' | 'false' | term ('='|'!=') term | PRED [ '(' terms ')' ] | '(' formula ')'
//   term     := product { '+' product },  product := atom { '*' atom }
// Comments run from '%' to end of line.

/// Throws LangError (Syntax or ReservedSymbol). The result is rectified.
fol::Formula parse_formula(std::string_view text);
fol::Term parse_term(std::string_view text);

/// Like parse_formula but admits `^agent` annotations anywhere.
RawAnnotated parse_annotated(std::string_view text);

}  // namespace lemmaflow::lang
