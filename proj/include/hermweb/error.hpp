#pragma once

#include <stdexcept>
#include <string>

namespace hermweb {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input or violated precondition (maps to CLI exit code 1).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in an expression; carries the byte offset of the failure.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : InputError(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Non-finite value produced while evaluating a field.
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

/// A metric or (n-1,n-1)-form failed the positivity test at some grid point.
class PositivityError : public Error {
 public:
  PositivityError(const std::string& what, std::size_t point)
      : Error(what), point_(point) {}
  std::size_t point() const noexcept { return point_; }

 private:
  std::size_t point_;
};

}  // namespace hermweb
