#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpbal {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroVector : public Error {
 public:
  using Error::Error;
};

/// An input entry fell outside its admissible range (e.g. an adversary
/// vector outside the unit cube).
class OutOfRange : public Error {
 public:
  using Error::Error;
};

class EnumerationTooLarge : public Error {
 public:
  using Error::Error;
};

class OracleTooLarge : public Error {
 public:
  using Error::Error;
};

class NondeterministicAlgorithm : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed instance document. `line` and `column` are 1-based; zero when
/// the position is unknown (e.g. a structurally valid document missing a
/// field).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Matrix entry outside [0, 1] in an instance document.
class RangeError : public Error {
 public:
  using Error::Error;
};

}  // namespace lpbal
