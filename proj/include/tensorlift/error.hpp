#pragma once

#include <stdexcept>
#include <string>

namespace tensorlift {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the expression and definition-file parsers. Positions are 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error(what), line(line), column(column) {}
  int line;
  int column;
};

/// Numeric evaluation failures (unassigned variable, division by zero).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// A soundness violation inside the engine itself, e.g. a symbolically proven
/// zero that fails numeric cross-checking. Never expected in normal operation.
class EngineBug : public Error {
 public:
  using Error::Error;
};

}  // namespace tensorlift
