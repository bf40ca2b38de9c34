#include "ccheck/diagnostic.hpp"

#include <sstream>

namespace ccheck {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSymbol: return "unknown-symbol";
    case ErrorCode::SortMismatch: return "sort-mismatch";
    case ErrorCode::PartialWithoutPrecondition: return "partial-function-without-precondition";
    case ErrorCode::DuplicateName: return "duplicate-name";
    case ErrorCode::UnsortedTerm: return "unsorted-term";
    case ErrorCode::LexicalError: return "lexical-error";
    case ErrorCode::SyntaxError: return "syntax-error";
    case ErrorCode::UnknownComponent: return "unknown-component";
    case ErrorCode::TypeError: return "type-error";
    case ErrorCode::UnsupportedAxiomShape: return "unsupported-axiom-shape";
    case ErrorCode::UnmappedFunction: return "unmapped-function";
    case ErrorCode::EmptyStateSpace: return "empty-state-space";
    case ErrorCode::StaleTrace: return "stale-trace";
    case ErrorCode::MalformedTrace: return "malformed-trace";
    case ErrorCode::FileNotFound: return "file-not-found";
  }
  return "unknown";
}

std::string Diagnostic::format() const {
  std::ostringstream out;
  out << (file.empty() ? "<input>" : file);
  if (pos.line > 0) out << ':' << pos.line << ':' << pos.column;
  out << ": " << (severity == Severity::Error ? "error" : "warning") << '['
      << to_string(code) << "]: " << message;
  if (!token.empty()) out << " (at '" << token << "')";
  return out.str();
}

}  // namespace ccheck
