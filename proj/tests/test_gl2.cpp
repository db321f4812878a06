#include <doctest.h>

#include <numeric>
#include <random>

#include "ecmgal/catalog.hpp"
#include "ecmgal/gl2.hpp"
#include "ecmgal/literals.hpp"

using namespace ecmgal;

namespace {

Rat q(long n, long d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

Rat level_sum(const ProbTable& t, unsigned level) {
  Rat s = 0;
  for (const auto& row : t.p.at(level))
    for (const auto& v : row) s += v;
  return s;
}

}  // namespace

TEST_CASE("enumerate_group orders") {
  CHECK(enumerate_group(2).size() == 6);
  CHECK(enumerate_group(3).size() == 48);
  CHECK(enumerate_group(4).size() == 96);
  CHECK(enumerate_group(5).size() == 480);
  CHECK(enumerate_group(8).size() == gl2_order(8));
  CHECK(gl2_order(7) == 2016);
  for (const auto& g : enumerate_group(4)) CHECK(g.invertible());
}

TEST_CASE("Mat2 arithmetic") {
  const Mat2 g = Mat2::make(1, 2, 3, 5, 7);
  CHECK(g * g.inverse() == Mat2::identity(7));
  CHECK(Mat2::from_index(g.index(), 7) == g);
  CHECK(Mat2::make(-1, 0, 0, 1, 4).a == 3);
  CHECK(Mat2::make(3, 1, 1, 3, 8).reduce(2) == Mat2::make(1, 1, 1, 1, 2));
}

TEST_CASE("fix_shape") {
  CHECK(fix_shape(Mat2::identity(4)) == FixShape{4, 4});
  CHECK(fix_shape(Mat2::make(1, 1, 0, 1, 3)) == FixShape{1, 3});
  CHECK(fix_shape(Mat2::make(2, 0, 0, 2, 3)) == FixShape{1, 1});
  CHECK(fix_shape(Mat2::make(1, 0, 0, 3, 4)) == FixShape{2, 4});
  int with_fix = 0;
  for (const auto& g : enumerate_group(3))
    if (!(g == Mat2::identity(3)) && fix_shape(g).d2 % 3 == 0) ++with_fix;
  CHECK(with_fix == 20);
}

TEST_CASE("subgroup_closure") {
  CHECK(subgroup_closure(3, {}).order() == 1);
  CHECK(subgroup_closure(3, {Mat2::make(1, 1, 0, 1, 3), Mat2::make(1, 0, 1, 1, 3)}).order() == 24);
  CHECK(subgroup_closure(5, {Mat2::make(2, 0, 0, 1, 5), Mat2::make(-1, 1, -1, 0, 5)}).order() == 480);
  CHECK(full_group(8).order() == 1536);
  const SubgroupImage G = subgroup_closure(5, {Mat2::make(0, 1, 2, 0, 5), Mat2::make(0, 1, 3, 2, 5)});
  CHECK(G.order() == 32);
  CHECK(G.contains(Mat2::identity(5)));
  CHECK(conjugate(G, Mat2::make(1, 2, 0, 1, 5)).order() == 32);
}

TEST_CASE("shape_probability") {
  const SubgroupImage G3 = full_group(3);
  CHECK(shape_probability(G3, {3, 3}) == q(1, 48));
  CHECK(shape_probability(G3, {1, 3}) == q(20, 48));
  CHECK(shape_probability(G3, {1, 1}) == q(27, 48));
  const SubgroupImage G5 = subgroup_closure(5, {Mat2::make(0, 1, 2, 0, 5), Mat2::make(0, 1, 3, 2, 5)});
  CHECK(shape_probability(G5, {1, 5}) == q(10, 32));
}

TEST_CASE("shape_probability_conditional") {
  const SubgroupImage G4 = full_group(4);
  CHECK(shape_probability_conditional(G4, {2, 4}, 3, 4) == q(1, 8));
  CHECK(shape_probability_conditional(G4, {2, 4}, 1, 4) == q(1, 16));
  CHECK(shape_probability(G4, {2, 4}) == q(3, 32));
  const SubgroupImage G2 = full_group(2);
  for (FixShape T : {FixShape{1, 1}, FixShape{1, 2}, FixShape{2, 2}})
    CHECK(shape_probability_conditional(G2, T, 1, 1) == shape_probability(G2, T));
  for (u32 m : {3u, 4u, 5u, 8u}) {
    const SubgroupImage G = full_group(m);
    for (const auto& T : {FixShape{1, 1}, FixShape{1, m}, FixShape{m, m}}) {
      Rat avg = 0;
      u32 units = 0;
      for (u32 a = 1; a < m; ++a) {
        if (std::gcd(a, m) != 1) continue;
        avg += shape_probability_conditional(G, T, a, m);
        ++units;
      }
      CHECK(avg / units == shape_probability(G, T));
    }
  }
  CHECK_THROWS(shape_probability_conditional(G4, {1, 1}, 1, 3));
}

TEST_CASE("reduce_image") {
  const SubgroupImage G4 = full_group(4);
  CHECK(reduce_image(G4, 2).order() == 6);
  CHECK_THROWS(reduce_image(G4, 0));
  std::mt19937_64 rng(41);
  const auto all = enumerate_group(8);
  for (int t = 0; t < 20; ++t) {
    std::vector<Mat2> gens;
    for (int k = 0; k < 2; ++k) gens.push_back(all[rng() % all.size()]);
    const SubgroupImage G = subgroup_closure(8, gens);
    const SubgroupImage R = reduce_image(G, 4);
    CHECK(16 % (G.order() / R.order()) == 0);
    CHECK(G.order() % R.order() == 0);
    std::vector<Mat2> red;
    for (const auto& g : gens) red.push_back(g.reduce(4));
    CHECK(reduce_image(G, 4).elements == subgroup_closure(4, red).elements);
  }
}

TEST_CASE("lift_constants and census") {
  CHECK(lift_constants(2) == std::tuple<Rat, Rat, Rat>(q(1, 16), q(9, 16), q(1, 2)));
  CHECK(lift_constants(3) == std::tuple<Rat, Rat, Rat>(q(1, 81), q(32, 81), q(1, 3)));
  for (u32 pi : {2u, 3u}) {
    const LiftCensus c = lift_census(pi);
    const u64 p4 = u64{pi} * pi * pi * pi;
    CHECK(c.identity_full == 1);
    CHECK(c.identity_partial == p4 - 1 - gl2_order(pi));
    CHECK(c.line_lifts_min == u64{pi} * pi * pi);
    CHECK(c.line_lifts_max == u64{pi} * pi * pi);
  }
}

TEST_CASE("prob_table and extend_table") {
  const ProbTable t = prob_table(full_group(2), true);
  CHECK(t.at(1, 0, 1) == q(1, 2));
  CHECK(t.at(1, 1, 1) == q(1, 6));
  CHECK(t.at(1, 0, 0) == q(1, 3));
  const ProbTable e = extend_table(t, 6);
  CHECK(e.at(2, 0, 2) == q(1, 4));
  for (unsigned k = 0; k <= 6; ++k) CHECK(level_sum(e, k) == 1);
  for (unsigned k = 2; k <= 6; ++k) CHECK(e.at(k, k, k) == e.at(k - 1, k - 1, k - 1) / 16);
  const ProbTable t8 = prob_table(full_group(8), true);
  for (unsigned k = 0; k <= 3; ++k) CHECK(level_sum(t8, k) == 1);
  CHECK(t8.at(2, 2, 2) == t8.at(1, 1, 1) / 16);
}

TEST_CASE("prob_power_divides") {
  const ProbTable t = prob_table(full_group(2), true);
  CHECK(prob_power_divides(t, 0) == 1);
  const auto suyama = known_image(named_curve("E1"), 2, FamilyTag::Suyama);
  REQUIRE(suyama.has_value());
  CHECK(prob_power_divides(suyama->table(), 3) == q(5, 8));
  const auto s11 = known_image(named_curve("E1"), 2, FamilyTag::Suyama11);
  REQUIRE(s11.has_value());
  CHECK(prob_power_divides(s11->table(), 3) == q(3, 4));
}

TEST_CASE("average_valuation of full images") {
  CHECK(average_valuation(prob_table(full_group(2), true)) == q(14, 9));
  CHECK(average_valuation(prob_table(full_group(3), true)) == q(87, 128));
  CHECK(average_valuation(prob_table(full_group(5), true)) == q(695, 2304));
  // Level of the census does not change the answer for full images.
  CHECK(average_valuation(prob_table(full_group(4), true)) == q(14, 9));
}

TEST_CASE("closed form agrees with the chain") {
  std::mt19937_64 rng(43);
  std::vector<ProbTable> tables;
  for (u32 m : {2u, 3u, 5u, 4u, 8u, 9u}) tables.push_back(prob_table(full_group(m), true));
  for (u32 m : {4u, 8u, 9u}) {
    const auto all = enumerate_group(m);
    for (int t = 0; t < 4; ++t)
      tables.push_back(prob_table(subgroup_closure(m, {all[rng() % all.size()], all[rng() % all.size()]}), true));
  }
  for (const auto& t : tables)
    for (unsigned k = 0; k <= 12; ++k) CHECK(prob_power_divides(t, k) == prob_power_divides_chain(t, k));
}

TEST_CASE("subgroup JSON round-trip") {
  const SubgroupImage G = subgroup_closure(5, {Mat2::make(0, 1, 2, 0, 5), Mat2::make(0, 1, 3, 2, 5)});
  const SubgroupImage H = subgroup_from_json(subgroup_to_json(G));
  CHECK(H.modulus == 5);
  CHECK(H.elements == G.elements);
  CHECK_THROWS(subgroup_from_json("{\"modulus\": 5, \"matrices\": [[[0,0],[0,0]]]}"));
}

TEST_CASE("catalog reproduces the expected invariants") {
  const CurveModel E1 = named_curve("E1"), E2 = named_curve("E2"), E3 = named_curve("E3");
  CHECK(known_image(E1, 7)->image.order() == 2016);
  CHECK(average_valuation(known_image(E1, 5)->table()) == q(695, 2304));
  CHECK(known_image(E2, 3)->image.order() == 16);
  CHECK(known_image(E2, 5)->image.order() == 32);
  CHECK(known_image(E3, 2)->image.order() == 768);
  CHECK(average_valuation(known_image(E3, 2)->table()) == q(895, 576));
  CHECK(average_valuation(known_image(E3, 3)->table()) == q(39, 32));
  CHECK(average_valuation(known_image(E3, 5)->table()) == q(155, 192));
  struct Want {
    FamilyTag tag;
    u32 pi;
    Rat v;
  };
  const std::vector<Want> wants = {
      {FamilyTag::Suyama, 2, q(10, 3)},      {FamilyTag::Suyama11, 2, q(11, 3)},
      {FamilyTag::Suyama94, 2, q(11, 3)},    {FamilyTag::Suyama, 3, q(27, 16)},
      {FamilyTag::Ed24Generic, 2, q(14, 3)}, {FamilyTag::Ed24GMinv, 2, q(16, 3)},
      {FamilyTag::Ed24G2, 2, q(29, 6)},      {FamilyTag::Ed24Rat, 2, q(29, 6)},
      {FamilyTag::Ed24G2Half, 2, q(29, 6)},  {FamilyTag::Ed24Generic, 3, q(87, 128)},
  };
  for (const auto& w : wants) {
    const auto rec = known_image(E1, w.pi, w.tag);
    REQUIRE(rec.has_value());
    CHECK(average_valuation(rec->table()) == w.v);
  }
  CHECK_FALSE(known_image(make_weierstrass(1, 1), 3).has_value());
  CHECK(catalog_entries().size() > 15);
}

TEST_CASE("catalog conditional splits by p mod 4") {
  struct Want {
    FamilyTag tag;
    Rat three, one;
  };
  const std::vector<Want> wants = {
      {FamilyTag::Ed24Generic, Rat(4), q(16, 3)}, {FamilyTag::Ed24GMinv, Rat(5), q(17, 3)},
      {FamilyTag::Ed24G2, Rat(4), q(17, 3)},      {FamilyTag::Ed24Rat, Rat(4), q(17, 3)},
      {FamilyTag::Ed24G2Half, Rat(4), q(17, 3)},
  };
  for (const auto& w : wants) {
    const auto rec = known_image(named_curve("E1"), 2, w.tag);
    REQUIRE(rec.has_value());
    CHECK(average_valuation(prob_table_conditional(rec->image, 3, 4, true)) == w.three);
    CHECK(average_valuation(prob_table_conditional(rec->image, 1, 4, true)) == w.one);
  }
}

TEST_CASE("lift_image is the full preimage") {
  const SubgroupImage G = subgroup_closure(2, {Mat2::make(1, 1, 0, 1, 2)});
  const SubgroupImage L = lift_image(G, 8);
  CHECK(L.order() == G.order() * 256);
  CHECK(reduce_image(L, 2).elements == G.elements);
  CHECK(subgroup_closure(8, L.generators).elements == L.elements);
  CHECK(lift_image(full_group(2), 4).elements == full_group(4).elements);
  CHECK(lift_image(full_group(3), 9).order() == gl2_order(9));
  CHECK_THROWS(lift_image(G, 6));
}
