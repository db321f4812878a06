#include <doctest.h>

#include <random>

#include "ecmgal/divpoly.hpp"
#include "ecmgal/literals.hpp"
#include "ecmgal/poly.hpp"
#include "ecmgal/structure.hpp"

using namespace ecmgal;

TEST_CASE("division_poly low orders") {
  const Rat a = 5, b = 7;
  const CurveModel c = named_curve("E1");
  const RationalField Q;
  const RatPoly p2 = division_poly(c, 2);
  CHECK(p2 == RatPoly(Q, {b, a, 0, 1}));
  const RatPoly p3 = division_poly(c, 3);
  CHECK(p3 == RatPoly(Q, {-a * a / 3, 4 * b, 2 * a, 0, 1}));
  CHECK(division_poly(c, 8).degree() == 33);
  for (unsigned m = 2; m <= 12; ++m) {
    const int expected = static_cast<int>((m * m + 2 - 3 * (m % 2)) / 2);
    CHECK(division_poly(c, m).degree() == expected);
    CHECK(division_poly(c, m).is_monic());
  }
}

TEST_CASE("division_poly_new degrees and exact division") {
  const CurveModel c = named_curve("E2");
  CHECK(division_poly_new(c, 2) == division_poly(c, 2));
  const RatPoly p4 = division_poly_new(c, 4);
  CHECK(p4.degree() == 6);
  auto [q, r] = divmod(division_poly(c, 4), division_poly(c, 2));
  CHECK(r.is_zero());
  CHECK(monic(q) == p4);
  CHECK(division_poly_new(c, 8).degree() == 24);
  CHECK(division_poly_new(c, 6).degree() == (36 - 9 - 4 + 1) / 2);
}

TEST_CASE("division polynomial roots are torsion x-coordinates") {
  const u64 p = 1009;
  const ModCurve c = *reduce_curve(named_curve("E1"), p).curve;
  const PrimeField& f = c.field;
  for (unsigned m : {3u, 4u, 5u}) {
    for (u64 x : poly_roots(division_poly_new(c, m))) {
      auto y = f.sqrt(f.add(f.mul(x, f.add(f.sqr(x), c.c1)), c.c2));
      if (!y) continue;  // root lives on the twist
      const CurvePoint<u64> P = AffinePoint<u64>::at(x, *y);
      CHECK(is_identity(c, scalar_mul(c, static_cast<i64>(m), P)));
      for (unsigned d = 1; d < m; ++d)
        if (m % d == 0) CHECK_FALSE(is_identity(c, scalar_mul(c, static_cast<i64>(d), P)));
    }
  }
}

TEST_CASE("torsion_size_mod_p single 2-torsion point") {
  // Random curves mod 101 whose cubic has exactly one root.
  std::mt19937_64 rng(5);
  int seen = 0;
  for (int t = 0; t < 200 && seen < 5; ++t) {
    const u64 p = 101;
    PrimeField f(p);
    ModCurve c{.kind = CurveKind::ShortWeierstrass, .field = f, .c1 = rng() % p, .c2 = rng() % p};
    if (f.is_zero(model_invariant(c))) continue;
    if (poly_roots(division_poly(c, 2)).size() != 1) continue;
    CHECK(torsion_size_mod_p(c, 2, 1) == 2);
    ++seen;
  }
  CHECK(seen == 5);
}

TEST_CASE("torsion_size_mod_p agrees with torsion_shape") {
  std::mt19937_64 rng(17);
  int checked = 0;
  while (checked < 300) {
    const u64 p = 5 + rng() % 4091;
    if (!is_prime_u64(p)) continue;
    PrimeField f(p);
    ModCurve c{.kind = CurveKind::ShortWeierstrass, .field = f, .c1 = rng() % p, .c2 = rng() % p};
    if (f.is_zero(model_invariant(c))) continue;
    for (unsigned pi : {2u, 3u}) {
      const unsigned kmax = pi == 2 ? 3 : 2;
      const TorsionShape s = torsion_shape(c, pi, kmax);
      u64 expect = 1;
      for (unsigned e = 0; e < s.i + s.j; ++e) expect *= pi;
      CHECK(torsion_size_mod_p(c, pi, kmax) == expect);
    }
    ++checked;
  }
}
