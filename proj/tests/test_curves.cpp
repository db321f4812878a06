#include <doctest.h>

#include <random>

#include "ecmgal/curves.hpp"
#include "ecmgal/literals.hpp"
#include "ecmgal/structure.hpp"

using namespace ecmgal;

namespace {

using QPoint = AffinePoint<Rat>;

ModCurve random_curve(CurveKind kind, u64 p, std::mt19937_64& rng) {
  PrimeField f(p);
  for (;;) {
    ModCurve c{.kind = kind, .field = f, .c1 = rng() % p, .c2 = rng() % p};
    if (!f.is_zero(model_invariant(c))) return c;
  }
}

u64 random_prime(std::mt19937_64& rng, u64 lo, u64 hi) {
  for (;;) {
    u64 p = lo + rng() % (hi - lo);
    if (is_prime_u64(p)) return p;
  }
}

}  // namespace

TEST_CASE("reduce_curve outcomes") {
  auto r = reduce_curve(named_curve("E1"), 11);
  REQUIRE(r.good());
  CHECK(r.curve->c1 == 5);
  CHECK(r.curve->c2 == 7);

  const Rat e = parse_rat("77/36");
  auto bad = reduce_curve(make_edwards(-1, -e * e * e * e), 17);
  CHECK_FALSE(bad.good());
  CHECK_FALSE(bad.reason.empty());

  CHECK_THROWS_AS(reduce_curve(make_montgomery(6, 1), 2), std::invalid_argument);
  CHECK_THROWS_AS(make_montgomery(2, 1), std::invalid_argument);
}

TEST_CASE("curve literals round-trip") {
  for (const char* lit : {"w:5,7", "m:10/3,-16/3", "e:-1,-1/4"}) {
    CHECK(curve_literal(parse_curve_literal(lit)) == lit);
  }
  CHECK_THROWS(parse_curve_literal("x:1,2"));
  CHECK_THROWS(parse_curve_literal("w:0,0"));
}

TEST_CASE("add_points and scalar_mul over Q") {
  const CurveModel c = make_weierstrass(-5, 0);
  const CurvePoint<Rat> P = QPoint::at(-1, 2);
  const auto twoP = std::get<QPoint>(add_points(c, P, P));
  CHECK(twoP.x == parse_rat("9/4"));
  CHECK(twoP.y == parse_rat("-3/8"));
  CHECK(points_equal(c, scalar_mul(c, 2, P), CurvePoint<Rat>(twoP)));
  CHECK(points_equal(c, scalar_mul(c, 1, P), P));
  CHECK(points_equal(c, add_points(c, P, identity(c)), P));
  CHECK(is_identity(c, add_points(c, P, negate(c, P))));
  CHECK_THROWS_AS(add_points(c, CurvePoint<Rat>(QPoint::at(1, 1)), P), std::invalid_argument);
}

TEST_CASE("scalar_mul composition over F_p on all models") {
  std::mt19937_64 rng(3);
  for (CurveKind kind : {CurveKind::ShortWeierstrass, CurveKind::Montgomery, CurveKind::TwistedEdwards}) {
    for (int trial = 0; trial < 10; ++trial) {
      const u64 p = random_prime(rng, 100, 4096);
      const ModCurve c = random_curve(kind, p, rng);
      const u64 n = count_points_naive(c);
      // Find a point by trying Weierstrass/Montgomery x values or Edwards via the Montgomery map.
      const ModCurve mont = kind == CurveKind::TwistedEdwards ? montgomery_edwards_convert(c) : c;
      const PrimeField& f = mont.field;
      for (u64 x = 1; x < p; ++x) {
        u64 rhs = kind == CurveKind::ShortWeierstrass
                      ? f.add(f.mul(x, f.add(f.sqr(x), mont.c1)), mont.c2)
                      : f.div(f.add(f.mul(x, f.add(f.sqr(x), f.mul(mont.c1, x))), x), mont.c2);
        auto y = f.sqrt(rhs);
        if (!y) continue;
        CurvePoint<u64> P = AffinePoint<u64>::at(x, *y);
        if (kind == CurveKind::TwistedEdwards) P = convert_point(mont, P);
        REQUIRE(on_curve(c, P));
        CHECK(points_equal(c, scalar_mul(c, 6, P), scalar_mul(c, 2, scalar_mul(c, 3, P))));
        CHECK(is_identity(c, scalar_mul(c, static_cast<i64>(n), P)));
        CHECK(points_equal(c, scalar_mul(c, -1, P), negate(c, P)));
        break;
      }
    }
  }
}

TEST_CASE("montgomery_edwards_convert") {
  const CurveModel ed = make_edwards(-1, parse_rat("-1/4"));
  const CurveModel m = montgomery_edwards_convert(ed);
  CHECK(m.kind == CurveKind::Montgomery);
  CHECK(m.c1 == parse_rat("10/3"));
  CHECK(m.c2 == parse_rat("-16/3"));
  const CurveModel back = montgomery_edwards_convert(montgomery_edwards_convert(m));
  CHECK(back.c1 == m.c1);
  CHECK(back.c2 == m.c2);
  CHECK_THROWS(montgomery_edwards_convert(make_weierstrass(1, 1)));

  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const u64 p = random_prime(rng, 5, 4096);
    const ModCurve mc = random_curve(CurveKind::Montgomery, p, rng);
    const ModCurve ec = montgomery_edwards_convert(mc);
    CHECK(count_points_naive(mc) == count_points_naive(ec));
    // Point map sends points to points.
    const PrimeField& f = mc.field;
    for (u64 x = 0; x < std::min<u64>(p, 50); ++x) {
      auto y = f.sqrt(f.div(f.add(f.mul(x, f.add(f.sqr(x), f.mul(mc.c1, x))), x), mc.c2));
      if (!y) continue;
      CHECK(on_curve(ec, convert_point(mc, CurvePoint<u64>(AffinePoint<u64>::at(x, *y)))));
    }
  }
}

TEST_CASE("to_weierstrass") {
  const Rat A = 3, B = 2;
  const auto map = to_weierstrass(make_montgomery(A, B));
  CHECK(map.target.c1 == (3 - A * A) / (3 * B * B));
  CHECK(map.target.c2 == (2 * A * A * A - 9 * A) / (27 * B * B * B));
  // (0,0) is on every Montgomery curve.
  CHECK(on_curve(map.target, map.map(CurvePoint<Rat>(QPoint::at(0, 0)))));

  const auto id = to_weierstrass(named_curve("E1"));
  CHECK(id.target.c1 == 5);

  std::mt19937_64 rng(13);
  for (int i = 0; i < 10; ++i) {
    const ModCurve mc = random_curve(CurveKind::Montgomery, 13, rng);
    const auto wm = to_weierstrass(mc);
    CHECK(count_points_naive(mc) == count_points_naive(wm.target));
  }
}
