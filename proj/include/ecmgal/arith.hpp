#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ecmgal {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Largest modulus accepted by the word-sized field code.
inline constexpr u64 kMaxModulus = (u64{1} << 62);

/// An element of Z/pZ for a prime p < 2^62.
struct Residue {
  u64 value = 0;
  u64 modulus = 2;

  Residue() = default;
  Residue(i64 v, u64 p);
  static Residue raw(u64 v, u64 p) {
    Residue r;
    r.value = v;
    r.modulus = p;
    return r;
  }
  friend bool operator==(const Residue&, const Residue&) = default;
};

/// Arithmetic in F_p on raw u64 representatives in [0, p).
///
/// Products use 64-bit arithmetic when p < 2^32 and 128-bit otherwise.
class PrimeField {
 public:
  using Elem = u64;

  explicit PrimeField(u64 p);

  u64 modulus() const { return p_; }

  u64 zero() const { return 0; }
  u64 one() const { return 1; }
  u64 from_int(i64 v) const;
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
  u64 mul(u64 a, u64 b) const {
    if (small_) return (a * b) % p_;
    return static_cast<u64>((static_cast<u128>(a) * b) % p_);
  }
  u64 sqr(u64 a) const { return mul(a, a); }
  u64 pow(u64 a, u64 e) const;
  /// Throws std::domain_error on zero.
  u64 inv(u64 a) const;
  u64 div(u64 a, u64 b) const { return mul(a, inv(b)); }
  bool is_zero(u64 a) const { return a == 0; }
  bool eq(u64 a, u64 b) const { return a == b; }

  int legendre(u64 a) const;
  /// Smaller square root, or nullopt for non-residues.
  std::optional<u64> sqrt(u64 a) const;

 private:
  u64 p_;
  bool small_;
};

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
/// Inverse of a modulo m (any modulus); throws std::domain_error if gcd(a, m) != 1.
u64 invmod(u64 a, u64 m);

/// Jacobi symbol (a/n) for odd n.
int jacobi(u64 a, u64 n);

/// Legendre symbol; throws std::invalid_argument for an even modulus.
int legendre(const Residue& a);

/// Tonelli-Shanks square root returning the smaller root.
std::optional<Residue> sqrt_mod(const Residue& a);

/// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime_u64(u64 n);

struct PrimeStream {
  u64 bound = 0;
  std::vector<std::uint32_t> primes;
};

/// Segmented sieve of Eratosthenes; 2 <= bound <= 2^32.
PrimeStream sieve_primes(u64 bound);

/// Exact integer sqrt.
u64 isqrt(u64 n);

/// p-adic valuation of n (n > 0).
unsigned valuation(u64 n, u64 p);

u64 gcd_u64(u64 a, u64 b);

}  // namespace ecmgal
