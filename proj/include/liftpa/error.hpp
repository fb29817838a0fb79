#pragma once

#include <stdexcept>
#include <string>

namespace liftpa {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: arity or side mismatch, bad indices, wrong group.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Text input that does not match a grammar. Carries a 1-based line and column.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A configured size bound (group order, enumeration size) was exceeded.
class BoundError : public Error {
 public:
  using Error::Error;
};

}  // namespace liftpa
