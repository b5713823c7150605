#include "natfun/classify.hpp"

namespace natfun {

namespace {

[[noreturn]] void const_overflow(const Expr& at) {
  throw BudgetExceededError("constant value of " + render(at) +
                                " exceeds the evaluation budget",
                            render(at));
}

BigInt check_bits(const Expr& at, BigInt v, std::size_t max_bits) {
  if (bit_length(v) > max_bits) const_overflow(at);
  return v;
}

BigInt fold_pow_budgeted(const Expr& at, const BigInt& base, const BigInt& exp,
                         std::size_t max_bits) {
  if (base == 1) return BigInt(1);
  auto overflow = [&] { const_overflow(at); };
  if (exp > static_cast<unsigned long>(max_bits)) overflow();
  unsigned long e = mpz_get_ui(exp.get_mpz_t());
  std::size_t base_bits = bit_length(base);
  if (e > (max_bits - 1) / (base_bits - 1)) overflow();
  BigInt v;
  mpz_pow_ui(v.get_mpz_t(), base.get_mpz_t(), e);
  if (bit_length(v) > max_bits) overflow();
  return v;
}

}  // namespace

Classification classify(const Expr& e, const EvalBudget& budget) {
  switch (e.kind()) {
    case ExprKind::Var:
      return {Monotonicity::StrictlyIncreasing, std::nullopt};
    case ExprKind::Const:
      return {Monotonicity::Constant, e.value()};
    default:
      break;
  }

  Classification l = classify(e.left(), budget);
  Classification r = classify(e.right(), budget);
  bool both_const = l.is_constant() && r.is_constant();

  switch (e.kind()) {
    case ExprKind::Add:
      if (both_const) {
        return {Monotonicity::Constant,
                check_bits(e, *l.value + *r.value, budget.max_bits)};
      }
      return {Monotonicity::StrictlyIncreasing, std::nullopt};
    case ExprKind::Mul:
      if (both_const) {
        return {Monotonicity::Constant,
                check_bits(e, *l.value * *r.value, budget.max_bits)};
      }
      return {Monotonicity::StrictlyIncreasing, std::nullopt};
    case ExprKind::Pow:
      if (both_const) {
        return {Monotonicity::Constant,
                fold_pow_budgeted(e, *l.value, *r.value, budget.max_bits)};
      }
      // Constant base over an increasing exponent: 1^h is constantly 1;
      // any larger base is strictly increasing. Every other combination
      // (increasing base with constant or increasing exponent) increases.
      if (l.is_constant() && *l.value == 1) {
        return {Monotonicity::Constant, BigInt(1)};
      }
      return {Monotonicity::StrictlyIncreasing, std::nullopt};
    default:
      throw Error("unreachable expression kind");
  }
}

}  // namespace natfun
