#include "natfun/arith.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <utility>

namespace natfun {

int Factorization::prime_parts() const {
  int total = 0;
  for (const auto& entry : primes) total += entry.exponent;
  return total;
}

BigInt Factorization::reconstruct() const {
  BigInt product(1);
  for (const auto& entry : primes) {
    BigInt term;
    mpz_pow_ui(term.get_mpz_t(), entry.prime.get_mpz_t(),
               static_cast<unsigned long>(entry.exponent));
    product *= term;
  }
  if (unresolved_cofactor) product *= *unresolved_cofactor;
  return product;
}

Effort effort_from_string(const std::string& s) {
  if (s == "quick") return Effort::Quick;
  if (s == "standard") return Effort::Standard;
  if (s == "deep") return Effort::Deep;
  throw DomainError("unknown effort level '" + s + "'");
}

std::string effort_to_string(Effort e) {
  switch (e) {
    case Effort::Quick: return "quick";
    case Effort::Standard: return "standard";
    case Effort::Deep: return "deep";
  }
  return "?";
}

namespace {

// ---------------------------------------------------------------------------
// Deterministic pseudorandom stream (splitmix64)

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_seed(const BigInt& x, std::uint64_t seed) {
  std::uint64_t low = mpz_get_ui(x.get_mpz_t());
  return seed ^ (low * 0x2545F4914F6CDD1DULL) ^
         (static_cast<std::uint64_t>(bit_length(x)) << 32);
}

// Uniform-ish value in [lo, hi] drawn from the stream, with enough 64-bit
// words to cover the range.
BigInt draw_in_range(std::uint64_t& state, const BigInt& lo, const BigInt& hi) {
  BigInt span = hi - lo + 1;
  std::size_t words = bit_length(span) / 64 + 2;
  BigInt acc(0);
  for (std::size_t i = 0; i < words; ++i) {
    acc <<= 64;
    acc += BigInt(splitmix64(state));
  }
  return lo + acc % span;
}

// ---------------------------------------------------------------------------
// Strong probable-prime round (Miller-Rabin)

// x odd, >= 3, base reduced into [2, x-2]. True when x is a strong probable
// prime to the base.
bool strong_probable_prime(const BigInt& x, const BigInt& base) {
  BigInt d = x - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  BigInt t;
  mpz_powm(t.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), x.get_mpz_t());
  if (t == 1 || t == x - 1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    t = t * t % x;
    if (t == x - 1) return true;
    if (t == 1) return false;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Strong Lucas round with Selfridge parameters

// Halve a residue mod the odd modulus x.
BigInt halve_mod(BigInt v, const BigInt& x) {
  if (mpz_odd_p(v.get_mpz_t())) v += x;
  v >>= 1;
  return v % x;
}

// x odd, >= 3, not a perfect square. True when x is a strong Lucas probable
// prime for the first D in 5, -7, 9, -11, ... with Jacobi(D, x) = -1,
// P = 1, Q = (1 - D) / 4. Returns false (composite) when a D with
// Jacobi(D, x) = 0 reveals a shared factor.
bool strong_lucas_probable_prime(const BigInt& x) {
  BigInt d(5);
  for (;;) {
    int j = mpz_jacobi(d.get_mpz_t(), x.get_mpz_t());
    if (j == -1) break;
    if (j == 0) return abs(d) == x;  // shared factor; prime only if x itself
    d = (d > 0) ? BigInt(-(d + 2)) : BigInt(-(d - 2));
  }
  BigInt q = (1 - d) / 4;

  BigInt m = x + 1;
  unsigned long s = mpz_scan1(m.get_mpz_t(), 0);
  BigInt oddpart;
  mpz_tdiv_q_2exp(oddpart.get_mpz_t(), m.get_mpz_t(), s);

  // Binary chain for U_oddpart, V_oddpart and Q^oddpart (P = 1).
  BigInt u(1), v(1), qk = q % x;
  if (qk < 0) qk += x;
  long top = static_cast<long>(bit_length(oddpart)) - 2;
  for (long i = top; i >= 0; --i) {
    // double: (U, V, Q^k) -> (U*V, V^2 - 2Q^k, Q^2k)
    u = u * v % x;
    v = (v * v - 2 * qk) % x;
    if (v < 0) v += x;
    qk = qk * qk % x;
    if (mpz_tstbit(oddpart.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      // increment: U' = (U + V)/2, V' = (D*U + V)/2, Q^k *= Q
      BigInt u2 = halve_mod((u + v) % x, x);
      BigInt v2 = halve_mod((d * u + v) % x, x);
      if (u2 < 0) u2 += x;
      if (v2 < 0) v2 += x;
      u = u2;
      v = v2;
      qk = qk * q % x;
      if (qk < 0) qk += x;
    }
  }

  if (u == 0 || v == 0) return true;
  for (unsigned long r = 1; r < s; ++r) {
    v = (v * v - 2 * qk) % x;
    if (v < 0) v += x;
    if (v == 0) return true;
    qk = qk * qk % x;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Small primes

constexpr unsigned kTrialSieveLimit = 1u << 20;  // covers the deep effort bound

const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    std::vector<bool> composite(kTrialSieveLimit, false);
    std::vector<unsigned> out;
    for (unsigned i = 2; i < kTrialSieveLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = static_cast<unsigned long>(i) * i;
           j < kTrialSieveLimit; j += i) {
        composite[j] = true;
      }
    }
    return out;
  }();
  return primes;
}

// Deterministic strong-pseudoprime battery for x < 2^64.
constexpr std::array<unsigned, 12> kSmallBases{2,  3,  5,  7,  11, 13,
                                               17, 19, 23, 29, 31, 37};

const BigInt& two_pow_64() {
  static const BigInt v = [] {
    BigInt t(1);
    t <<= 64;
    return t;
  }();
  return v;
}

struct EffortParams {
  unsigned trial_limit;
  std::uint64_t rho_iterations;  // per attempt
  int rho_attempts;
};

EffortParams params_for(Effort e) {
  switch (e) {
    case Effort::Quick: return {10'000, 1ULL << 17, 4};
    case Effort::Standard: return {100'000, 1ULL << 21, 8};
    case Effort::Deep: return {1'000'000, 1ULL << 24, 12};
  }
  return {100'000, 1ULL << 21, 8};
}

}  // namespace

PrimalityVerdict is_prime(const BigInt& x) {
  if (x < 1) throw DomainError("primality is defined on positive integers");
  if (x == 1) throw UnitInputError("1 is neither prime nor composite");
  if (x == 2 || x == 3) return {Primality::Prime};

  // Quick screen by tiny primes.
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
      return {x == p ? Primality::Prime : Primality::Composite};
    }
  }

  if (x < two_pow_64()) {
    for (unsigned b : kSmallBases) {
      if (!strong_probable_prime(x, BigInt(b))) return {Primality::Composite};
    }
    return {Primality::Prime};
  }

  if (!strong_probable_prime(x, BigInt(2))) return {Primality::Composite};
  if (mpz_perfect_square_p(x.get_mpz_t())) return {Primality::Composite};
  if (!strong_lucas_probable_prime(x)) return {Primality::Composite};

  // 63 further strong rounds with bases derived from x; together with the
  // base-2 round the composite survival probability is at most 4^-64.
  std::uint64_t state = stream_seed(x, 0x5eedba5e);
  for (int round = 0; round < 63; ++round) {
    BigInt base = draw_in_range(state, BigInt(2), x - 2);
    if (!strong_probable_prime(x, base)) return {Primality::Composite};
  }
  return {Primality::ProbablePrime, 128};
}

namespace {

// Brent's cycle variant of the rho method. Returns a nontrivial factor of n
// (odd composite, not a prime power guard needed by caller) or nullopt when
// the iteration budget runs out.
std::optional<BigInt> rho_brent(const BigInt& n, std::uint64_t& state,
                                std::uint64_t max_iterations) {
  BigInt c = draw_in_range(state, BigInt(1), n - 3);
  BigInt y = draw_in_range(state, BigInt(2), n - 1);
  const std::uint64_t batch = 128;

  BigInt x, ys, q(1), g(1);
  std::uint64_t r = 1, iterations = 0;
  while (g == 1 && iterations < max_iterations) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      std::uint64_t steps = std::min(batch, r - k);
      for (std::uint64_t i = 0; i < steps; ++i) {
        y = (y * y + c) % n;
        q = q * abs(x - y) % n;
      }
      g = gcd(q, n);
      k += steps;
      iterations += steps;
    }
    r *= 2;
  }
  if (g == n) {
    // Batch gcd collapsed; replay one step at a time from the checkpoint.
    g = 1;
    while (g == 1) {
      ys = (ys * ys + c) % n;
      g = gcd(abs(x - ys), n);
    }
  }
  if (g > 1 && g < n) return g;
  return std::nullopt;
}

void trial_divide(BigInt& m, unsigned limit, std::map<BigInt, int>& primes) {
  for (unsigned p : small_primes()) {
    if (p > limit) break;
    if (BigInt(p) * p > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      int exponent = 0;
      do {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++exponent;
      } while (mpz_divisible_ui_p(m.get_mpz_t(), p));
      primes[BigInt(p)] += exponent;
    }
  }
}

// Exact k-th root decomposition: smallest k >= 2 with m = r^k, if any.
std::optional<std::pair<BigInt, unsigned long>> perfect_power_split(
    const BigInt& m) {
  if (!mpz_perfect_power_p(m.get_mpz_t())) return std::nullopt;
  unsigned long max_k = bit_length(m);
  for (unsigned long k = 2; k <= max_k; ++k) {
    BigInt root, rem;
    mpz_rootrem(root.get_mpz_t(), rem.get_mpz_t(), m.get_mpz_t(), k);
    if (rem == 0) return std::make_pair(root, k);
  }
  return std::nullopt;
}

}  // namespace

Factorization factor(const BigInt& x, Effort effort, std::uint64_t seed) {
  if (x < 2) throw DomainError("factorization requires x >= 2");
  EffortParams params = params_for(effort);

  std::map<BigInt, int> primes;
  BigInt remaining = x;
  trial_divide(remaining, params.trial_limit, primes);

  BigInt unresolved(1);
  std::vector<std::pair<BigInt, int>> work;
  if (remaining > 1) work.emplace_back(remaining, 1);

  while (!work.empty()) {
    auto [m, mult] = work.back();
    work.pop_back();
    if (m == 1) continue;
    if (counts_as_prime(is_prime(m))) {
      primes[m] += mult;
      continue;
    }
    if (auto power = perfect_power_split(m)) {
      work.emplace_back(power->first, mult * static_cast<int>(power->second));
      continue;
    }
    std::uint64_t state = stream_seed(m, seed);
    std::optional<BigInt> divisor;
    for (int attempt = 0; attempt < params.rho_attempts && !divisor; ++attempt) {
      divisor = rho_brent(m, state, params.rho_iterations);
    }
    if (divisor) {
      work.emplace_back(*divisor, mult);
      work.emplace_back(m / *divisor, mult);
    } else {
      BigInt part;
      mpz_pow_ui(part.get_mpz_t(), m.get_mpz_t(),
                 static_cast<unsigned long>(mult));
      unresolved *= part;
    }
  }

  Factorization result;
  for (auto& [p, e] : primes) result.primes.push_back({p, e});
  if (unresolved > 1) result.unresolved_cofactor = unresolved;
  return result;
}

std::optional<BigInt> smallest_prime_factor(const BigInt& x, Effort effort,
                                            std::uint64_t seed) {
  if (x < 2) throw DomainError("smallest prime factor requires x >= 2");
  if (counts_as_prime(is_prime(x))) return x;
  Factorization f = factor(x, effort, seed);
  if (f.primes.empty()) return std::nullopt;
  return f.primes.front().prime;
}

}  // namespace natfun
