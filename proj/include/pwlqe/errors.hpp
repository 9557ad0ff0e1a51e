#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pwlqe {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised on an attempt to add +oo and -oo.
class UndefinedSum : public Error {
 public:
  UndefinedSum() : Error("undefined sum: oo + (-oo)") {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A product of two non-constant arithmetic expressions.
class NonLinearError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// The same variable is bound twice in a quantifier prefix.
class DuplicateBinderError : public ParseError {
 public:
  using ParseError::ParseError;
};

class MissingVariable : public Error {
 public:
  explicit MissingVariable(std::string var)
      : Error("no value for variable '" + var + "'"), var_(std::move(var)) {}

  const std::string& var() const { return var_; }

 private:
  std::string var_;
};

/// An atom mentioning the variable of interest is not of the form `x ~ b`.
class NotIsolated : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class NotPartitioning : public Error {
 public:
  using Error::Error;
};

/// Two overlapping terms carry the values oo and -oo. Indices are 0-based.
class WellFormednessViolation : public Error {
 public:
  WellFormednessViolation(std::size_t first, std::size_t second)
      : Error("terms " + std::to_string(first + 1) + " and " + std::to_string(second + 1) +
              " overlap with values oo and -oo"),
        first_(first),
        second_(second) {}

  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

}  // namespace pwlqe
