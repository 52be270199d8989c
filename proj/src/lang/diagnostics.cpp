#include "lemmaflow/lang/diagnostics.hpp"

namespace lemmaflow::lang {

std::string_view kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::UnknownProvider: return "unknown-provider";
    case ErrorKind::DuplicateAgent: return "duplicate-agent";
    case ErrorKind::UnboundSchemaParameter: return "unbound-schema-parameter";
    case ErrorKind::DuplicateLabel: return "duplicate-label";
    case ErrorKind::UnknownTarget: return "unknown-target";
    case ErrorKind::SelfQuery: return "self-query";
    case ErrorKind::MisplacedPlaceholder: return "misplaced-placeholder";
    case ErrorKind::ArityMismatch: return "arity-mismatch";
    case ErrorKind::ReservedSymbol: return "reserved-symbol";
    case ErrorKind::InvalidBinding: return "invalid-binding";
    case ErrorKind::MissingQuery: return "missing-query";
    case ErrorKind::DuplicateQuery: return "duplicate-query";
    case ErrorKind::UnresolvedSchema: return "unresolved-schema";
    case ErrorKind::NestedAnnotation: return "nested-annotation";
    case ErrorKind::MissingAnnotation: return "missing-annotation";
  }
  return "unknown";
}

std::string to_string(const Diagnostic& d) {
  std::string out = "error[" + std::string(kind_name(d.kind)) + "]";
  if (d.pos.line > 0) out += " " + std::to_string(d.pos.line) + ":" + std::to_string(d.pos.column);
  out += ": " + d.message;
  return out;
}

namespace {

std::string summarize(const std::vector<Diagnostic>& ds) {
  if (ds.empty()) return "invalid input";
  std::string out = to_string(ds.front());
  if (ds.size() > 1) out += " (and " + std::to_string(ds.size() - 1) + " more)";
  return out;
}

}  // namespace

LangError::LangError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {
  if (diagnostics_.empty()) diagnostics_.push_back({ErrorKind::Syntax, {}, "invalid input"});
}

}  // namespace lemmaflow::lang
