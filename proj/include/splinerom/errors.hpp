#pragma once

#include <stdexcept>
#include <string>

namespace splinerom {

/// Base of every error raised by the library. Each subclass maps to one
/// distinct CLI exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (non-finite x, x outside [a, b]).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Sequence lengths or grid parameters that do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A value that does not fit a fixed-point format.
class RangeError : public Error {
 public:
  RangeError(const std::string& what, double value) : Error(what), value_(value) {}
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Malformed text input. line() is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line) : Error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Non-finite value produced while probing a function.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double x) : Error(what), x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace splinerom
