#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "natfun/bigint.hpp"
#include "natfun/errors.hpp"

namespace natfun {

enum class Primality { Prime, Composite, ProbablePrime };

struct PrimalityVerdict {
  Primality kind;
  /// For ProbablePrime: the error probability is at most 2^-error_bound_exponent.
  /// Prime and Composite are deterministic claims (exponent unused).
  int error_bound_exponent = 0;
};

/// Primality of x >= 1. Below 2^64 the verdict is deterministic, from a
/// strong-pseudoprime test over the first twelve prime bases. At or above
/// 2^64: a base-2 strong probable-prime round, a strong Lucas round with
/// Selfridge parameters, and 63 further strong rounds with bases derived
/// deterministically from x, giving ProbablePrime with error bound 2^-128.
/// Throws UnitInputError on x = 1 (neither prime nor composite).
PrimalityVerdict is_prime(const BigInt& x);

inline bool counts_as_prime(const PrimalityVerdict& v) {
  return v.kind != Primality::Composite;
}

/// Bounds for trial division and the rho cycle search.
enum class Effort { Quick, Standard, Deep };

Effort effort_from_string(const std::string& s);  // throws DomainError
std::string effort_to_string(Effort e);

struct FactorEntry {
  BigInt prime;
  int exponent;
};

struct Factorization {
  std::vector<FactorEntry> primes;            // ascending by prime
  std::optional<BigInt> unresolved_cofactor;  // composite, no factor found

  bool complete() const { return !unresolved_cofactor.has_value(); }
  /// Number of prime factors counted with multiplicity (cofactor excluded).
  int prime_parts() const;
  /// Product of prime^exponent times the cofactor; always equals the input.
  BigInt reconstruct() const;
};

/// Factors x >= 2 by trial division below an effort-dependent bound, perfect
/// power extraction, and Brent-cycle rho on remaining composite cofactors.
/// Exhausting the effort is not an error: the unsplit composite part is
/// returned as unresolved_cofactor and the reconstruction invariant holds
/// regardless. The rho parameters derive from (x, seed), so results are
/// reproducible run to run.
Factorization factor(const BigInt& x, Effort effort = Effort::Standard,
                     std::uint64_t seed = 1);

/// Smallest prime factor of x >= 2 at the given effort, when one can be
/// found; x itself when x is (probably) prime. nullopt when x is composite
/// but no factor was found within effort.
std::optional<BigInt> smallest_prime_factor(const BigInt& x, Effort effort,
                                            std::uint64_t seed = 1);

}  // namespace natfun
