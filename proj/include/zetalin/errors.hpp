#pragma once

#include <stdexcept>
#include <string>

namespace zetalin {

// Two families: bad input (ValidationError) and computations that could not
// meet their accuracy contract (NumericalFailure). The CLI maps them to exit
// codes 2 and 3.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvalidParameter : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class LimitExceeded : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class TableTooSmall : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class CoverageError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : ValidationError(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class OverflowError : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class IncompleteDetection : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

}  // namespace zetalin
