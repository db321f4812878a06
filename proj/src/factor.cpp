#include "ecmgal/factor.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ecmgal {
namespace {

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = sieve_primes(1000000).primes;
  return primes;
}

u64 rho_u64(u64 n) {
  if ((n & 1) == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 64;
    u64 r = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_u64(u64 n, std::map<u64, unsigned>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[n];
    return;
  }
  u64 d = rho_u64(n);
  split_u64(d, out);
  split_u64(n / d, out);
}

mpz_class rho_mpz(const mpz_class& n) {
  for (unsigned long c = 1;; ++c) {
    mpz_class x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      mpz_class diff = abs(x - y);
      d = gcd(diff, n);
    }
    if (d != n) return d;
  }
}

void split_mpz(const mpz_class& n, std::map<mpz_class, unsigned>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    ++out[n];
    return;
  }
  mpz_class root;
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    split_mpz(root, out);
    split_mpz(root, out);
    return;
  }
  mpz_class d = rho_mpz(n);
  split_mpz(d, out);
  split_mpz(n / d, out);
}

}  // namespace

Factorization factor_u64(u64 n) {
  if (n == 0) throw std::invalid_argument("factor_u64: zero");
  Factorization out;
  for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u}) {
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n == 1) return out;
  if (n < 53 * 53 || is_prime_u64(n)) {
    out.emplace_back(n, 1);
    return out;
  }
  // Trial division is cheaper than rho for the small cofactors that dominate scans.
  if (n < (u64{1} << 32)) {
    for (u64 p = 53; p * p <= n; p += 2) {
      if (n % p == 0) {
        unsigned e = 0;
        while (n % p == 0) {
          n /= p;
          ++e;
        }
        out.emplace_back(p, e);
      }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
  }
  std::map<u64, unsigned> rest;
  split_u64(n, rest);
  for (auto& kv : rest) out.emplace_back(kv.first, kv.second);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<mpz_class, unsigned>> factor_mpz(const mpz_class& input) {
  if (input == 0) throw std::invalid_argument("factor_mpz: zero");
  mpz_class n = abs(input);
  std::vector<std::pair<mpz_class, unsigned>> out;
  for (std::uint32_t p : small_primes()) {
    if (mpz_class(p) * p > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++e;
      }
      out.emplace_back(mpz_class(p), e);
    }
  }
  if (n > 1) {
    std::map<mpz_class, unsigned> rest;
    split_mpz(n, rest);
    for (auto& kv : rest) out.emplace_back(kv.first, kv.second);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace ecmgal
