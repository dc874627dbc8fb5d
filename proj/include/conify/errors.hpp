#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conify {

// Base class for every domain failure raised by the library. The CLI maps
// these onto exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A bounded search ran out of room. The caller is expected to raise the cap.
class NotFound : public Error {
 public:
  using Error::Error;
};

// Two rational approximants produced different central fibers.
class Unstable : public Error {
 public:
  using Error::Error;
};

// A Groebner computation exceeded its step budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace conify
