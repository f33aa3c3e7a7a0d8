#pragma once

#include <stdexcept>
#include <string>

namespace krylov {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Matrix Market / text input problems; the message names the line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Raised before the first iteration when the Krylov process cannot
/// start (b^T c = 0 for the biorthogonalization process).
class InitializationBreakdown : public Error {
 public:
  using Error::Error;
};

/// Requested the Galerkin (BiCG/CG) point while it does not exist.
class UndefinedPoint : public Error {
 public:
  using Error::Error;
};

class InvalidScaling : public Error {
 public:
  using Error::Error;
};

/// A triangular factor of the projected tridiagonal matrix is singular.
class Stagnation : public Error {
 public:
  using Error::Error;
};

}  // namespace krylov
