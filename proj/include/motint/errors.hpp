#pragma once

#include <stdexcept>
#include <string>

namespace motint {

/// Failure categories. The C API and the CLI map these onto error codes
/// and exit statuses, so every exception thrown by the kernel carries one.
enum class ErrorKind {
  Syntax,                   // malformed expression or document
  Value,                    // well-formed input with an invalid value (inv1m(0), q <= 1)
  Model,                    // model file fails validation
  NotSummable,              // divergent sum, with witness direction
  DecompositionUnsupported, // region outside the supported summation class
  Gluing,                   // sections disagree on an overlap
  Domain,                   // other mathematical precondition failures
  Internal
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
public:
  SyntaxError(const std::string& what, int line, int column)
      : Error(ErrorKind::Syntax, what), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::Value: return "ValueError";
    case ErrorKind::Model: return "ModelError";
    case ErrorKind::NotSummable: return "NotSummable";
    case ErrorKind::DecompositionUnsupported: return "DecompositionUnsupported";
    case ErrorKind::Gluing: return "GluingError";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Internal: return "InternalError";
  }
  return "Error";
}

[[noreturn]] inline void fail(ErrorKind k, const std::string& what) { throw Error(k, what); }

} // namespace motint
