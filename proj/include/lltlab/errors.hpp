#pragma once

#include <stdexcept>
#include <string>

namespace lltlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// A single-point law was handed to an operation that needs spread.
class DegenerateError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "degenerate"; }
};

/// An input violates the documented precondition of an operation.
class PreconditionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "precondition"; }
};

/// A computation would exceed the configured memory budget.
class ResourceError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "resource"; }
};

/// A moment does not exist for the requested law (heavy tail).
class UnavailableError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "unavailable"; }
};

class QuadratureError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "quadrature"; }
};

/// Malformed distribution specification (JSON or shorthand).
class SpecError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "spec"; }
};

}  // namespace lltlab
