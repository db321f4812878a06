#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

#include "ecmgal/arith.hpp"

namespace ecmgal {

using BigInt = mpz_class;
/// Canonical rational (GMP keeps numerator/denominator coprime, denominator positive).
using Rat = mpq_class;

/// Parses "n", "-n" or "n/d"; throws std::invalid_argument.
Rat parse_rat(std::string_view text);

/// "n" for integers, "n/d" otherwise.
std::string rat_to_string(const Rat& q);

double rat_to_double(const Rat& q);

/// v_p of a nonzero rational.
int rat_valuation(const Rat& q, u64 p);

/// q mod p, or nullopt if p divides the denominator.
std::optional<u64> rat_mod(const Rat& q, u64 p);

/// Squarefree s with q = s * c^2 for some rational c; throws on q = 0.
BigInt square_class(const Rat& q);

bool is_rational_square(const Rat& q);

/// Nonnegative rational square root, or nullopt.
std::optional<Rat> rat_sqrt(const Rat& q);

Rat rat_pow(const Rat& q, int e);

}  // namespace ecmgal
