#include <doctest.h>

#include <random>

#include "ecmgal/arith.hpp"
#include "ecmgal/factor.hpp"
#include "ecmgal/rational.hpp"

using namespace ecmgal;

TEST_CASE("sieve_primes small bounds") {
  CHECK(sieve_primes(10).primes == std::vector<std::uint32_t>{2, 3, 5, 7});
  CHECK(sieve_primes(2).primes == std::vector<std::uint32_t>{2});
}

TEST_CASE("sieve_primes agrees with Miller-Rabin up to 2^20") {
  const auto s = sieve_primes(u64{1} << 20);
  CHECK(s.primes.size() == 82025);
  std::size_t idx = 0;
  for (u64 n = 0; n <= (u64{1} << 20); ++n) {
    if (is_prime_u64(n)) {
      REQUIRE(idx < s.primes.size());
      CHECK(s.primes[idx++] == n);
    }
  }
  CHECK(idx == s.primes.size());
}

TEST_CASE("is_prime_u64 on large and pseudoprime inputs") {
  CHECK(is_prime_u64(18446744073709551557ull));
  CHECK_FALSE(is_prime_u64(3215031751ull));  // strong pseudoprime to bases 2,3,5,7
  CHECK_FALSE(is_prime_u64(1));
  CHECK(is_prime_u64(2));
}

TEST_CASE("legendre and sqrt_mod") {
  CHECK(legendre(Residue(2, 7)) == 1);
  CHECK(legendre(Residue(0, 7)) == 0);
  CHECK(legendre(Residue(3, 7)) == -1);
  CHECK(sqrt_mod(Residue(2, 7))->value == 3);
  CHECK_FALSE(sqrt_mod(Residue(3, 7)).has_value());
  CHECK(sqrt_mod(Residue(0, 13))->value == 0);
  CHECK_THROWS_AS(legendre(Residue(1, 8)), std::invalid_argument);
}

TEST_CASE("sqrt_mod matches exhaustive search") {
  for (u64 p : {5ull, 13ull, 17ull, 41ull, 97ull, 257ull, 65537ull}) {
    PrimeField f(p);
    for (u64 a = 0; a < std::min<u64>(p, 400); ++a) {
      auto r = f.sqrt(a);
      if (r) {
        CHECK(f.sqr(*r) == a);
        CHECK(*r <= p - *r);
      } else {
        CHECK(f.legendre(a) == -1);
      }
    }
  }
}

TEST_CASE("PrimeField wide modulus") {
  const u64 p = 4611686018427387847ull;  // prime below 2^62
  REQUIRE(is_prime_u64(p));
  PrimeField f(p);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    u64 a = rng() % (p - 1) + 1;
    CHECK(f.mul(a, f.inv(a)) == 1);
    auto r = f.sqrt(f.sqr(a));
    REQUIRE(r.has_value());
    CHECK((*r == a || *r == p - a));
  }
  CHECK_THROWS_AS(f.inv(0), std::domain_error);
}

TEST_CASE("jacobi, isqrt, valuation") {
  CHECK(jacobi(2, 15) == 1);
  CHECK(jacobi(7, 15) == -1);
  CHECK(isqrt(0) == 0);
  CHECK(isqrt(99) == 9);
  CHECK(isqrt(~u64{0}) == 4294967295ull);
  CHECK(valuation(96, 2) == 5);
  CHECK(valuation(7, 2) == 0);
}

TEST_CASE("square_class") {
  CHECK(square_class(parse_rat("9/4")) == 1);
  CHECK(square_class(parse_rat("-8")) == -2);
  CHECK(square_class(parse_rat("1225/64")) == 1);
  CHECK(square_class(parse_rat("-16/3")) == -3);
  CHECK(square_class(parse_rat("12/5")) == 15);
  CHECK_THROWS(square_class(Rat(0)));
}

TEST_CASE("rational helpers") {
  CHECK(rat_to_string(parse_rat("6/4")) == "3/2");
  CHECK(rat_to_string(parse_rat("-10")) == "-10");
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("abc"), std::invalid_argument);
  CHECK(*rat_mod(parse_rat("1/2"), 7) == 4);
  CHECK_FALSE(rat_mod(parse_rat("1/7"), 7).has_value());
  CHECK(*rat_mod(parse_rat("-1"), 7) == 6);
  CHECK(rat_valuation(parse_rat("12/49"), 7) == -2);
  CHECK(*rat_sqrt(parse_rat("1225/64")) == parse_rat("35/8"));
  CHECK_FALSE(rat_sqrt(parse_rat("2")).has_value());
  CHECK(rat_pow(parse_rat("2/3"), -2) == parse_rat("9/4"));
  CHECK(is_rational_square(parse_rat("9/4")));
}

TEST_CASE("factor_u64 reconstructs its input") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    u64 n = rng() >> (rng() % 40);
    if (n < 2) continue;
    u64 prod = 1;
    u64 last = 0;
    for (auto [q, e] : factor_u64(n)) {
      CHECK(is_prime_u64(q));
      CHECK(q > last);
      last = q;
      for (unsigned k = 0; k < e; ++k) prod *= q;
    }
    CHECK(prod == n);
  }
  CHECK(factor_u64(4294967291ull * 4294967279ull) ==
        Factorization{{4294967279ull, 1}, {4294967291ull, 1}});
}
