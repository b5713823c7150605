#include "natfun/conjecture.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "natfun/algebra.hpp"

namespace natfun {

namespace {

void require_increasing(const Expr& e, const EvalBudget& budget) {
  if (classify(e, budget).is_constant()) {
    throw NotIncreasingError("function " + render(e) +
                             " is constant; the conjecture quantifies over "
                             "non-constant functions");
  }
}

}  // namespace

SearchOutcome smallest_composite_witness(const Expr& e, long n_max,
                                         const EvalBudget& budget,
                                         Effort effort, std::uint64_t seed) {
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  require_increasing(e, budget);

  long primes_seen = 0;
  for (long n = 1; n <= n_max; ++n) {
    BigInt value;
    try {
      value = evaluate(e, BigInt(n), budget);
    } catch (const BudgetExceededError& err) {
      throw BudgetExceededError(
          "budget exceeded at n = " + std::to_string(n) + " after " +
              std::to_string(primes_seen) + " prime outputs: " + err.what(),
          err.offending_subexpr, n);
    }
    if (value == 1) {
      // 1 is not prime; report it with an empty factorization.
      return {CompositeWitness{BigInt(n), value, Factorization{},
                               Provenance::Searched, std::nullopt, std::nullopt},
              primes_seen};
    }
    if (counts_as_prime(is_prime(value))) {
      ++primes_seen;
      continue;
    }
    return {CompositeWitness{BigInt(n), value, factor(value, effort, seed),
                             Provenance::Searched, std::nullopt, std::nullopt},
            primes_seen};
  }
  return {std::nullopt, primes_seen};
}

namespace {

bool all_pow_exponents_constant(const Expr& e, const EvalBudget& budget) {
  if (e.is_leaf()) return true;
  if (e.kind() == ExprKind::Pow &&
      !classify(e.right(), budget).is_constant()) {
    return false;
  }
  return all_pow_exponents_constant(e.left(), budget) &&
         all_pow_exponents_constant(e.right(), budget);
}

}  // namespace

bool is_polynomial(const Expr& e, const EvalBudget& budget) {
  return all_pow_exponents_constant(normalize(e, budget.max_bits), budget);
}

CompositeWitness polynomial_certificate(const Expr& e, const EvalBudget& budget,
                                        Effort effort, std::uint64_t seed) {
  if (!is_polynomial(e, budget)) {
    throw NotPolynomialError("function " + render(e) +
                             " has a non-constant exponent");
  }
  require_increasing(e, budget);

  // f is strictly increasing, so f(2) >= 2; n0 is 1 or 2.
  BigInt n0(1);
  BigInt fn0 = evaluate(e, n0, budget);
  if (fn0 == 1) {
    n0 = 2;
    fn0 = evaluate(e, n0, budget);
  }

  std::optional<BigInt> p = smallest_prime_factor(fn0, effort, seed);
  if (!p) {
    throw Error("no prime divisor of f(n0) = " + fn0.get_str() +
                " found within effort; raise the effort level");
  }
  BigInt index = n0 + *p;
  BigInt value = evaluate(e, index, budget);
  return CompositeWitness{index, value, factor(value, effort, seed),
                          Provenance::PolynomialCertificate, n0, *p};
}

Expr exponential_expr(const BigInt& a, const BigInt& b) {
  Expr power = Expr::pow(Expr::constant(a), Expr::var());
  if (b == 0) return power;
  return Expr::add(power, Expr::constant(b));
}

CompositeWitness exponential_certificate(const BigInt& a, const BigInt& b,
                                         Effort effort, std::uint64_t seed) {
  if (a < 2) throw DomainError("base a must be at least 2");
  if (b < 0) throw DomainError("offset b must be non-negative");

  const Expr e = exponential_expr(a, b);
  const EvalBudget budget{};

  BigInt f2 = a * a + b;
  std::optional<BigInt> p = smallest_prime_factor(f2, effort, seed);
  if (!p) {
    throw Error("no prime divisor of f(2) = " + f2.get_str() +
                " found within effort; raise the effort level");
  }
  if (mpz_divisible_p(a.get_mpz_t(), p->get_mpz_t())) {
    // p | a forces p | b as well, so p properly divides f(2): composite.
    return CompositeWitness{BigInt(2), f2, factor(f2, effort, seed),
                            Provenance::Searched, std::nullopt, std::nullopt};
  }
  BigInt index = *p + 1;  // 2 + (p - 1)
  BigInt value = evaluate(e, index, budget);
  return CompositeWitness{index, value, factor(value, effort, seed),
                          Provenance::ExponentialCertificate, BigInt(2), *p};
}

namespace {

Expr family_member(long c) {
  return Expr::add(
      Expr::pow(Expr::constant(2), Expr::pow(Expr::constant(2), Expr::var())),
      Expr::constant(c));
}

ScanRow scan_one(long c, long n_check, const EvalBudget& budget, Effort effort,
                 std::uint64_t seed) {
  Expr e = family_member(c);
  ScanRow row;
  row.c = c;
  row.function_text = render(e);
  try {
    SearchOutcome outcome = smallest_composite_witness(e, n_check, budget,
                                                       effort, seed);
    row.primes_before = outcome.primes_before;
    if (outcome.witness) {
      row.smallest_composite_index = mpz_get_si(outcome.witness->index.get_mpz_t());
      row.composite_value = outcome.witness->value;
      row.factorization = outcome.witness->factorization;
    }
  } catch (const BudgetExceededError& err) {
    row.budget_exceeded = true;
    row.primes_before = err.index_reached > 0 ? err.index_reached - 1 : 0;
  }
  return row;
}

}  // namespace

std::vector<ScanRow> scan_family(long c_from, long c_to, long n_check,
                                 const EvalBudget& budget, Effort effort,
                                 std::uint64_t seed, int jobs) {
  if (c_from < 1 || c_from % 2 == 0 || c_to % 2 == 0) {
    throw DomainError("scan bounds must be odd positive integers");
  }
  if (c_from > c_to) throw DomainError("empty scan range");

  std::vector<long> cs;
  for (long c = c_from; c <= c_to; c += 2) cs.push_back(c);
  std::vector<ScanRow> rows(cs.size());

  unsigned worker_count = jobs > 0 ? static_cast<unsigned>(jobs)
                                   : std::max(1u, std::thread::hardware_concurrency());
  worker_count = static_cast<unsigned>(
      std::min<std::size_t>(worker_count, cs.size()));

  if (worker_count <= 1) {
    for (std::size_t i = 0; i < cs.size(); ++i) {
      rows[i] = scan_one(cs[i], n_check, budget, effort, seed);
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= cs.size()) return;
        rows[i] = scan_one(cs[i], n_check, budget, effort, seed);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < worker_count; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::stable_sort(rows.begin(), rows.end(), [](const ScanRow& a, const ScanRow& b) {
    if (a.primes_before != b.primes_before) return a.primes_before > b.primes_before;
    return a.c < b.c;
  });
  return rows;
}

InfinitudeResult infinitude_samples(const Expr& e, int count,
                                    long per_shift_n_max,
                                    const EvalBudget& budget, Effort effort,
                                    std::uint64_t seed) {
  if (count < 1) throw DomainError("count must be at least 1");
  require_increasing(e, budget);

  InfinitudeResult result;
  Expr current = e;
  BigInt offset(0);
  for (int found = 0; found < count; ++found) {
    SearchOutcome outcome =
        smallest_composite_witness(current, per_shift_n_max, budget, effort, seed);
    if (!outcome.witness) return result;  // partial; complete stays false
    CompositeWitness witness = std::move(*outcome.witness);
    witness.index += offset;  // global index for the original function
    result.witnesses.push_back(std::move(witness));

    offset = result.witnesses.back().index;
    current = shift(e, offset);
  }
  result.complete = true;
  return result;
}

}  // namespace natfun
