#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace naeenum {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed DIMACS input. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A clause wider than the engine supports (3), or too many variables.
class WidthError : public Error {
 public:
  using Error::Error;
};

/// Engine input is not closed under clause negation.
class InputNotClosed : public Error {
 public:
  using Error::Error;
};

/// The caller promised no satisfying assignment below weight t, and the search
/// found a node proving otherwise.
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

/// An exhaustive mode would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Parameters outside the domain of an analysis function or oracle.
class RefusedParameters : public Error {
 public:
  using Error::Error;
};

/// A guarantee the algorithm relies on did not hold and no constructive
/// repair exists. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace naeenum
