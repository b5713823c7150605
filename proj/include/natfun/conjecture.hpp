#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "natfun/arith.hpp"
#include "natfun/classify.hpp"
#include "natfun/expr.hpp"

namespace natfun {

enum class Provenance { Searched, PolynomialCertificate, ExponentialCertificate };

/// A proven composite output: f(index) = value is not prime. For Searched
/// witnesses the proof is the factorization (or value = 1, which is not
/// prime either and carries an empty factorization). Certificate witnesses
/// additionally record the congruence data: a prime dividing both
/// f(base_index) and value, with 1 < f(base_index) < value.
struct CompositeWitness {
  BigInt index;
  BigInt value;
  Factorization factorization;
  Provenance provenance = Provenance::Searched;
  std::optional<BigInt> base_index;  // certificates only
  std::optional<BigInt> prime;       // certificates only

  bool value_is_one() const { return value == 1; }
};

/// Result of the in-order search: either the first composite output, or
/// exhaustion after n_max consecutive (probable) prime outputs. primes_before
/// counts the prime outputs seen before the witness (witness index - 1) or
/// before giving up (n_max).
struct SearchOutcome {
  std::optional<CompositeWitness> witness;
  long primes_before = 0;

  bool exhausted() const { return !witness.has_value(); }
};

/// Tests n = 1, 2, ..., n_max in order and returns the first index whose
/// value is not (probable) prime, factored at the given effort. A value of 1
/// counts as a non-prime output (empty factorization). Throws
/// NotIncreasingError when classify(e) is constant, and BudgetExceededError
/// (carrying the index reached) when a value overflows the budget before any
/// witness is found.
SearchOutcome smallest_composite_witness(const Expr& e, long n_max,
                                         const EvalBudget& budget = {},
                                         Effort effort = Effort::Standard,
                                         std::uint64_t seed = 1);

/// True when every power in the expression has a constant-foldable exponent
/// (checked after normalize), i.e. the expression denotes a polynomial.
bool is_polynomial(const Expr& e, const EvalBudget& budget = {});

/// The congruence construction for polynomials: with n0 the least index where
/// f(n0) > 1 and p a prime dividing f(n0), f(n0 + p) is divisible by p and
/// larger than it, hence composite. Throws NotPolynomialError or
/// NotIncreasingError when the preconditions fail.
CompositeWitness polynomial_certificate(const Expr& e,
                                        const EvalBudget& budget = {},
                                        Effort effort = Effort::Standard,
                                        std::uint64_t seed = 1);

/// The little-Fermat construction for f(n) = a^n + b with a >= 2, b >= 0:
/// with p a prime dividing f(2), either p divides a (then f(2) itself is
/// composite) or f(2 + (p-1)) is divisible by p and larger than it.
CompositeWitness exponential_certificate(const BigInt& a, const BigInt& b,
                                         Effort effort = Effort::Standard,
                                         std::uint64_t seed = 1);

/// The expression a^n + b (or a^n when b = 0) fed to the search operations.
Expr exponential_expr(const BigInt& a, const BigInt& b);

/// One row of a family scan, mirroring the CSV report.
struct ScanRow {
  long c = 0;                 // family parameter (sort key)
  std::string function_text;  // e.g. "2^2^n+93"
  std::optional<long> smallest_composite_index;
  std::optional<BigInt> composite_value;
  std::optional<Factorization> factorization;
  long primes_before = 0;
  bool budget_exceeded = false;  // recorded per row, never fatal to the scan
};

/// Scans the family n -> 2^2^n + c over odd c in [c_from, c_to], running the
/// smallest-composite search up to n_check for each member. Rows are sorted
/// by primes_before descending, then c ascending. Rows are independent;
/// jobs > 1 fans them out across threads with a deterministic merge
/// (jobs = 0 picks the hardware concurrency).
std::vector<ScanRow> scan_family(long c_from, long c_to, long n_check,
                                 const EvalBudget& budget = {},
                                 Effort effort = Effort::Standard,
                                 std::uint64_t seed = 1, int jobs = 1);

/// Constructive sampling of the infinitude argument: find a witness, shift
/// the function past it, and search again, so witness indices strictly
/// increase. complete is false when a per-shift search exhausts before
/// `count` witnesses are found (the partial list is returned).
struct InfinitudeResult {
  std::vector<CompositeWitness> witnesses;
  bool complete = false;
};

InfinitudeResult infinitude_samples(const Expr& e, int count,
                                    long per_shift_n_max = 64,
                                    const EvalBudget& budget = {},
                                    Effort effort = Effort::Standard,
                                    std::uint64_t seed = 1);

}  // namespace natfun
