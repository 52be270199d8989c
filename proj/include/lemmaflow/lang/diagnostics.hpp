#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lemmaflow::lang {

enum class ErrorKind {
  Syntax,
  UnknownProvider,
  DuplicateAgent,
  UnboundSchemaParameter,
  DuplicateLabel,
  UnknownTarget,
  SelfQuery,
  MisplacedPlaceholder,
  ArityMismatch,
  ReservedSymbol,
  InvalidBinding,
  MissingQuery,
  DuplicateQuery,
  UnresolvedSchema,
  NestedAnnotation,
  MissingAnnotation,
};

/// Stable kebab-case name, e.g. "unknown-provider".
std::string_view kind_name(ErrorKind kind) noexcept;

struct SourcePos {
  int line = 0;  // 1-based; 0 when unknown
  int column = 0;
};

struct Diagnostic {
  ErrorKind kind;
  SourcePos pos;
  std::string message;
};

/// "error[kind] line:col: message"
std::string to_string(const Diagnostic& d);

class LangError : public std::runtime_error {
 public:
  explicit LangError(std::vector<Diagnostic> diagnostics);
  LangError(ErrorKind kind, SourcePos pos, std::string message)
      : LangError(std::vector<Diagnostic>{{kind, pos, std::move(message)}}) {}

  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }
  ErrorKind kind() const noexcept { return diagnostics_.front().kind; }
  SourcePos pos() const noexcept { return diagnostics_.front().pos; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace lemmaflow::lang
