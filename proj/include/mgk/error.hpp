#pragma once

// Exception hierarchy shared by every module. The kind maps one-to-one onto
// the exit codes of the command-line tool.

#include <stdexcept>
#include <string>

namespace mgk {

enum class ErrorKind { parse, validation, precondition, disagreement };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string const& what)
      : std::runtime_error(what), _kind(kind) {}

  ErrorKind kind() const noexcept { return _kind; }

 private:
  ErrorKind _kind;
};

/// Malformed input documents or unresolved names.
class ParseError : public Error {
 public:
  explicit ParseError(std::string const& what)
      : Error(ErrorKind::parse, what) {}
};

/// Objects that violate their type invariants (group laws, Mal'tsev laws...).
class ValidationError : public Error {
 public:
  explicit ValidationError(std::string const& what)
      : Error(ErrorKind::validation, what) {}
};

/// Operation called outside its domain.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(std::string const& what)
      : Error(ErrorKind::precondition, what) {}
};

/// Carrier too large for the configured limits.
class BoundError : public PreconditionError {
 public:
  explicit BoundError(std::string const& what) : PreconditionError(what) {}
};

/// Two routes that must agree did not. Always a bug or a non-Mal'tsev input
/// that slipped past validation.
class DisagreementError : public Error {
 public:
  explicit DisagreementError(std::string const& what)
      : Error(ErrorKind::disagreement, what) {}
};

}  // namespace mgk
