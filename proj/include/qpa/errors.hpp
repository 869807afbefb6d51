#pragma once

#include <stdexcept>
#include <string>

namespace qpa {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different numbers of variables.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (order too high, form not
/// closed, field not affine, gauge with a zero, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Integer-mode and half-integer-mode trigonometric data were combined
/// additively.
class ModeMixError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Syntax error in the text form, with a 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " at " + std::to_string(line) + ":" +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace qpa
