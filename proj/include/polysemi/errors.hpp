#pragma once

#include <stdexcept>
#include <string>

namespace polysemi {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two operands live in different scalar fields (e.g. cyclotomic orders differ).
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

// A documented precondition was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// All coefficients inside the known horizon vanish; nothing can be read off.
class IndeterminateError : public Error {
 public:
  using Error::Error;
};

// Degree or word-length cap exceeded.
class SizeError : public Error {
 public:
  using Error::Error;
};

// The truncation horizon is too short to support a verdict.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

class ConstructionFailed : public Error {
 public:
  ConstructionFailed(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Malformed user input (JSON, coefficient strings, degree-1 generators ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// Something that a theorem guarantees did not hold. Always a bug or a
// numerical breakdown, never a user error.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace polysemi
