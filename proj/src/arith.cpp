#include "ecmgal/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace ecmgal {

Residue::Residue(i64 v, u64 p) : modulus(p) {
  if (p < 2 || p >= kMaxModulus) throw std::invalid_argument("modulus out of range");
  i64 r = v % static_cast<i64>(p);
  if (r < 0) r += static_cast<i64>(p);
  value = static_cast<u64>(r);
}

PrimeField::PrimeField(u64 p) : p_(p), small_(p < (u64{1} << 32)) {
  if (p < 2 || p >= kMaxModulus) throw std::invalid_argument("modulus out of range");
}

u64 PrimeField::from_int(i64 v) const {
  i64 r = v % static_cast<i64>(p_);
  if (r < 0) r += static_cast<i64>(p_);
  return static_cast<u64>(r);
}

u64 PrimeField::pow(u64 a, u64 e) const {
  u64 r = 1 % p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 PrimeField::inv(u64 a) const { return invmod(a, p_); }

int PrimeField::legendre(u64 a) const {
  if (a == 0) return 0;
  if (p_ == 2) return 1;
  return jacobi(a, p_);
}

std::optional<u64> PrimeField::sqrt(u64 a) const {
  if (a == 0) return u64{0};
  if (p_ == 2) return a;
  if (jacobi(a, p_) != 1) return std::nullopt;
  u64 r;
  if ((p_ & 3) == 3) {
    r = pow(a, (p_ + 1) / 4);
  } else {
    // Tonelli-Shanks
    u64 q = p_ - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    u64 z = 2;
    while (jacobi(z, p_) != -1) ++z;
    u64 c = pow(z, q);
    r = pow(a, (q + 1) / 2);
    u64 t = pow(a, q);
    unsigned m = s;
    while (t != 1) {
      unsigned i = 0;
      u64 tt = t;
      while (tt != 1) {
        tt = mul(tt, tt);
        ++i;
      }
      u64 b = c;
      for (unsigned j = 0; j + i + 1 < m; ++j) b = mul(b, b);
      r = mul(r, b);
      c = mul(b, b);
      t = mul(t, c);
      m = i;
    }
  }
  return std::min(r, p_ - r);
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((static_cast<u128>(a) * b) % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 m) {
  i64 old_r = static_cast<i64>(a % m), r = static_cast<i64>(m);
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw std::domain_error("element is not invertible");
  if (old_s < 0) old_s += static_cast<i64>(m);
  return static_cast<u64>(old_s);
}

int jacobi(u64 a, u64 n) {
  a %= n;
  int result = 1;
  while (a != 0) {
    unsigned tz = std::countr_zero(a);
    a >>= tz;
    if ((tz & 1) && ((n & 7) == 3 || (n & 7) == 5)) result = -result;
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    std::swap(a, n);
    a %= n;
  }
  return n == 1 ? result : 0;
}

int legendre(const Residue& a) {
  if ((a.modulus & 1) == 0) throw std::invalid_argument("legendre: even modulus");
  return PrimeField(a.modulus).legendre(a.value);
}

std::optional<Residue> sqrt_mod(const Residue& a) {
  if ((a.modulus & 1) == 0) throw std::invalid_argument("sqrt_mod: even modulus");
  auto r = PrimeField(a.modulus).sqrt(a.value);
  if (!r) return std::nullopt;
  return Residue::raw(*r, a.modulus);
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeStream sieve_primes(u64 bound) {
  if (bound < 2 || bound > (u64{1} << 32)) throw std::invalid_argument("sieve bound out of range");
  PrimeStream out;
  out.bound = bound;
  out.primes.push_back(2);
  const u64 root = isqrt(bound);
  // base primes up to sqrt(bound), odd only
  std::vector<std::uint32_t> base;
  {
    std::vector<bool> composite(root + 1, false);
    for (u64 i = 3; i <= root; i += 2) {
      if (composite[i]) continue;
      base.push_back(static_cast<std::uint32_t>(i));
      for (u64 j = i * i; j <= root; j += 2 * i) composite[j] = true;
    }
  }
  // segment covers odd numbers lo, lo+2, ..., index i <-> lo + 2i
  constexpr u64 kSegment = u64{1} << 18;
  std::vector<char> seg(kSegment);
  for (u64 lo = 3; lo <= bound; lo += 2 * kSegment) {
    const u64 hi = std::min(bound, lo + 2 * kSegment - 1);
    const u64 count = (hi - lo) / 2 + 1;
    std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(count), 1);
    for (u64 q : base) {
      if (q * q > hi) break;
      u64 start = std::max(q * q, (lo + q - 1) / q * q);
      if ((start & 1) == 0) start += q;
      for (u64 j = start; j <= hi; j += 2 * q) seg[(j - lo) / 2] = 0;
    }
    for (u64 i = 0; i < count; ++i) {
      if (seg[i]) out.primes.push_back(static_cast<std::uint32_t>(lo + 2 * i));
    }
  }
  return out;
}

u64 isqrt(u64 n) {
  u64 r = std::min<u64>(static_cast<u64>(std::sqrt(static_cast<long double>(n))), 0xffffffffull);
  while (static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

unsigned valuation(u64 n, u64 p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

}  // namespace ecmgal
