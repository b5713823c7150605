#pragma once

#include <stdexcept>
#include <string>

namespace natfun {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed expression text.
struct SyntaxError : Error {
  using Error::Error;
};

/// A value outside the positive integers (constants and inputs live in {1,2,...}).
struct DomainError : Error {
  using Error::Error;
};

/// An intermediate value's bit length would exceed the evaluation budget.
struct BudgetExceededError : Error {
  BudgetExceededError(const std::string& msg, std::string offending_subexpr,
                      long index_reached = -1)
      : Error(msg),
        offending_subexpr(std::move(offending_subexpr)),
        index_reached(index_reached) {}

  std::string offending_subexpr;
  long index_reached;  // set by searches that abort mid-scan, else -1
};

/// Primality query on 1, which is neither prime nor composite.
struct UnitInputError : Error {
  using Error::Error;
};

/// Operation requires a strictly increasing function.
struct NotIncreasingError : Error {
  using Error::Error;
};

/// Operation requires a polynomial (all exponents constant-foldable).
struct NotPolynomialError : Error {
  using Error::Error;
};

/// Exact length search refused; carries the trivial upper bound instead.
struct SizeLimitError : Error {
  SizeLimitError(const std::string& msg, int upper_bound)
      : Error(msg), upper_bound(upper_bound) {}

  int upper_bound;  // operator count of the rejected expression
};

}  // namespace natfun
