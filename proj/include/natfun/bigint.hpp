#pragma once

#include <cstddef>
#include <gmpxx.h>

namespace natfun {

using BigInt = mpz_class;

/// Number of bits in the binary representation of x; requires x >= 1.
inline std::size_t bit_length(const BigInt& x) {
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

}  // namespace natfun
