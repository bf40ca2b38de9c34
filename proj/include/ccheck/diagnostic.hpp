#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ccheck {

enum class ErrorCode {
  UnknownSymbol,
  SortMismatch,
  PartialWithoutPrecondition,
  DuplicateName,
  UnsortedTerm,
  LexicalError,
  SyntaxError,
  UnknownComponent,
  TypeError,
  UnsupportedAxiomShape,
  UnmappedFunction,
  EmptyStateSpace,
  StaleTrace,
  MalformedTrace,
  FileNotFound,
};

std::string_view to_string(ErrorCode code);

enum class Severity { Error, Warning };

/// 1-based source position; line 0 means "not from a source file".
struct SourcePos {
  int line = 0;
  int column = 0;

  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

struct Diagnostic {
  std::string file;
  SourcePos pos;
  Severity severity = Severity::Error;
  ErrorCode code = ErrorCode::SyntaxError;
  std::string message;
  std::string token;

  /// "file:line:col: error[code]: message (at 'tok')"
  std::string format() const;
};

using Diagnostics = std::vector<Diagnostic>;

/// Error raised by operations whose contract is a single failure mode
/// (unsupported axiom shape, stale trace, empty state space ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, SourcePos pos = {}, std::string token = {})
      : std::runtime_error(what), code_(code), pos_(pos), token_(std::move(token)) {}

  ErrorCode code() const noexcept { return code_; }
  SourcePos pos() const noexcept { return pos_; }
  const std::string& token() const noexcept { return token_; }

  Diagnostic to_diagnostic(std::string file = {}) const {
    return {std::move(file), pos_, Severity::Error, code_, what(), token_};
  }

 private:
  ErrorCode code_;
  SourcePos pos_;
  std::string token_;
};

/// A value or the diagnostics explaining why there is none.
template <class T>
class Parsed {
 public:
  Parsed(T value) : value_(std::move(value)) {}
  Parsed(Diagnostics diags) : diags_(std::move(diags)) {}

  explicit operator bool() const { return value_.has_value(); }
  bool ok() const { return value_.has_value(); }

  const T& value() const& { return *value_; }
  T& value() & { return *value_; }
  T&& value() && { return std::move(*value_); }
  const T& operator*() const { return *value_; }
  const T* operator->() const { return &*value_; }

  const Diagnostics& diagnostics() const { return diags_; }

 private:
  std::optional<T> value_;
  Diagnostics diags_;
};

}  // namespace ccheck
