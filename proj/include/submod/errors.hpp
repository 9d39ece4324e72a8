#pragma once

#include <stdexcept>
#include <string>

namespace submod {

/// Precondition on a value or configuration was not met.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two samples that must live on the same atom space have different lengths.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Root finding or minimization could not establish a bracket.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file (CSV, config). Carries the offending line when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Input parsed but contained no data rows.
class NoDataError : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace submod
