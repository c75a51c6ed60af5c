#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace smalp {

/// Base of every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

struct SortClash : Error { using Error::Error; };
struct ImplicationInBody : ParseError { using ParseError::ParseError; };
struct UnknownConnective : Error { using Error::Error; };
struct ArityMismatch : Error { using Error::Error; };
struct DuplicateConnective : Error { using Error::Error; };
struct InvalidAssignment : Error { using Error::Error; };
struct EmptyDomain : Error { using Error::Error; };
struct IncompleteDomain : Error { using Error::Error; };
struct NonGroundResult : Error { using Error::Error; };
struct TestCaseSubstMismatch : Error { using Error::Error; };

/// Raised when a derivation exceeds its admissible-step budget.
struct DepthLimitExceeded : Error {
  explicit DepthLimitExceeded(std::size_t limit)
      : Error("depth limit of " + std::to_string(limit) + " admissible steps exceeded"), limit(limit) {}
  std::size_t limit;
};

}  // namespace smalp
