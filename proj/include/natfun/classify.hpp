#pragma once

#include <optional>

#include "natfun/expr.hpp"

namespace natfun {

enum class Monotonicity { Constant, StrictlyIncreasing };

struct Classification {
  Monotonicity verdict;
  std::optional<BigInt> value;  // exact value when constant

  bool is_constant() const { return verdict == Monotonicity::Constant; }
};

/// Structural dichotomy: every expression denotes either a constant function
/// (value computed exactly) or a strictly increasing one. The recursion
/// mirrors the combination rules for sums, products and powers of constant
/// and increasing functions; the only non-increasing power case is a base
/// that is constantly 1. Folding a constant that would exceed the budget
/// throws BudgetExceededError rather than returning an unevaluated verdict.
Classification classify(const Expr& e, const EvalBudget& budget = {});

}  // namespace natfun
