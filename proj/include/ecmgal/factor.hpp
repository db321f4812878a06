#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "ecmgal/arith.hpp"

namespace ecmgal {

/// (prime, exponent) pairs in ascending prime order.
using Factorization = std::vector<std::pair<u64, unsigned>>;

/// Trial division by small primes followed by Pollard-Brent rho.
Factorization factor_u64(u64 n);

/// Arbitrary-precision factorization: trial division up to 10^6, then rho.
std::vector<std::pair<mpz_class, unsigned>> factor_mpz(const mpz_class& n);

}  // namespace ecmgal
