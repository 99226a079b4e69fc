#ifndef BACKFORTH_ERRORS_HPP
#define BACKFORTH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bf {

// Base class of every error the engine raises on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Grammar-level failure; carries the source position of the offending token.
struct ParseError : Error {
  int line;
  int column;
  ParseError(int line_, int column_, const std::string& what_)
      : Error("parse error at " + std::to_string(line_) + ":" +
              std::to_string(column_) + ": " + what_),
        line(line_),
        column(column_) {}
};

// Well-formed syntax with a bad meaning: undeclared symbol, arity mismatch,
// non-total function table, carrier bound violation, ...
struct SemanticError : Error {
  using Error::Error;
};

// An enumeration would exceed the configured size caps.
struct CapExceeded : Error {
  using Error::Error;
};

// An operation was invoked outside its contract (signature mismatch,
// unsupported mode, non-dense family where a dense one is required, ...).
struct InvalidArgument : Error {
  using Error::Error;
};

// A certified fact failed on concrete data.  This must not happen; it means
// the engine itself is wrong, not the input.
struct TheoremViolation : Error {
  using Error::Error;
};

}  // namespace bf

#endif
