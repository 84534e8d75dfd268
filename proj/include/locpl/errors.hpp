#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace locpl {

// Malformed literal (word, index, polynomial, config). Carries the offending
// character offset when one is known.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}

  std::size_t position() const { return position_; }

private:
  std::size_t position_ = 0;
};

// Errors that come from the mathematics rather than the input syntax.
class DomainError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public DomainError {
public:
  DivisionByZero() : DomainError("division by zero rational function") {}
};

class PoleError : public DomainError {
  using DomainError::DomainError;
};

class ConvergenceError : public DomainError {
  using DomainError::DomainError;
};

}  // namespace locpl
