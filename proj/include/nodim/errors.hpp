#pragma once

#include <stdexcept>
#include <string>

namespace nodim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated (bad sizes, empty sets,
/// dimension mismatch, k > n, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A numeric routine could not reach its stopping criterion.
class NotConverged : public Error {
 public:
  NotConverged(const std::string& what, double lower, double upper)
      : Error(what), lower_(lower), upper_(upper) {}
  double lower() const { return lower_; }
  double upper() const { return upper_; }

 private:
  double lower_;
  double upper_;
};

/// Malformed input file. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace nodim
