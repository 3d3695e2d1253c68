#pragma once

#include <stdexcept>
#include <string>

namespace cstar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes that do not conform (block sizes, algebra mismatch).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// An input violates a type invariant (non-Hermitian repr, invalid state).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// An operation precondition does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The input is degenerate for the requested operation (e.g. a zero element).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// The requested configuration is not supported.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Closure or factorisation steps that should be impossible for valid input.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// An iterative method ran out of budget; carries the best known bracket.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, double lo, double hi)
      : Error(what), lower(lo), upper(hi) {}
  double lower;
  double upper;
};

}  // namespace cstar
