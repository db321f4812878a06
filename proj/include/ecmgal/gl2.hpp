#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "ecmgal/rational.hpp"

namespace ecmgal {

using u32 = std::uint32_t;

/// Largest modulus handled by the enumeration code.
inline constexpr u32 kMaxGL2Modulus = 32;

/// 2x2 matrix over Z/mZ, entries in [0, m).
struct Mat2 {
  u32 a = 1, b = 0, c = 0, d = 1;
  u32 m = 1;

  static Mat2 identity(u32 m) { return Mat2{1 % m, 0, 0, 1 % m, m}; }
  static Mat2 make(i64 a, i64 b, i64 c, i64 d, u32 m);

  u32 det() const;
  bool invertible() const;
  Mat2 operator*(const Mat2& o) const;
  Mat2 inverse() const;
  Mat2 reduce(u32 target) const;
  /// Dense index in [0, m^4).
  u32 index() const { return ((a * m + b) * m + c) * m + d; }
  static Mat2 from_index(u32 idx, u32 m);
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Elementary divisors of fix(g) = ker(g - Id) on (Z/mZ)^2: fix(g) = Z/d1 x Z/d2, d1 | d2 | m.
struct FixShape {
  u32 d1 = 1, d2 = 1;
  friend bool operator==(const FixShape&, const FixShape&) = default;
};

FixShape fix_shape(const Mat2& g);

/// #GL2(Z/mZ) from the multiplicative formula.
u64 gl2_order(u32 m);

/// All of GL2(Z/mZ), ascending by index; m <= 32.
std::vector<Mat2> enumerate_group(u32 m);

/// A subgroup of GL2(Z/mZ) stored by its elements (ascending by index).
struct SubgroupImage {
  u32 modulus = 1;
  std::vector<Mat2> elements;
  std::vector<Mat2> generators;

  std::size_t order() const { return elements.size(); }
  bool contains(const Mat2& g) const;
};

SubgroupImage subgroup_closure(u32 m, const std::vector<Mat2>& generators);
SubgroupImage full_group(u32 m);
SubgroupImage conjugate(const SubgroupImage& G, const Mat2& h);

Rat shape_probability(const SubgroupImage& G, const FixShape& T);

/// Probability of shape T inside the slice det = a (mod n); requires n | m.
Rat shape_probability_conditional(const SubgroupImage& G, const FixShape& T, u32 a, u32 n);

SubgroupImage reduce_image(const SubgroupImage& G, u32 target);
/// Full preimage of G in GL2(Z/target Z); target a multiple of G.modulus.
SubgroupImage lift_image(const SubgroupImage& G, u32 target);

/// (1/pi^4, (pi-1)(pi+1)^2/pi^4, 1/pi).
std::tuple<Rat, Rat, Rat> lift_constants(u32 pi);

/// Exhaustive classification of the lifts GL2(Z/pi) -> GL2(Z/pi^2).
struct LiftCensus {
  u64 identity_full = 0;       // lifts of Id fixing all of (Z/pi^2)^2
  u64 identity_partial = 0;    // lifts of Id fixing a point of order pi^2 but not everything
  u64 identity_other = 0;
  u64 line_fixers = 0;         // non-identity g mod pi with a fixed line
  u64 line_lifts_min = 0;      // per line fixer: lifts fixing a point of order pi^2
  u64 line_lifts_max = 0;
};
LiftCensus lift_census(u32 pi);

/// p_i(l, j) for levels 0..levels(); p_0(0,0) = 1. Levels above `n` come from extend_table.
struct ProbTable {
  u32 pi = 2;
  unsigned n = 1;
  /// Caller-asserted: the image index is stable from level n upward.
  bool stable = false;
  std::vector<std::vector<std::vector<Rat>>> p;

  unsigned levels() const { return static_cast<unsigned>(p.size()) - 1; }
  const Rat& at(unsigned i, unsigned l, unsigned j) const { return p.at(i).at(l).at(j); }
};

/// Per-level census of an image at modulus pi^n.
ProbTable prob_table(const SubgroupImage& G, bool assume_stable);

/// Same census restricted to the slice det = a (mod nmod), nmod | modulus.
ProbTable prob_table_conditional(const SubgroupImage& G, u32 a, u32 nmod, bool assume_stable);

/// Pushes the table up to level kmax along the lifting chain.
ProbTable extend_table(const ProbTable& table, unsigned kmax);

/// Prob(pi^k | #E) in closed form.
Rat prob_power_divides(const ProbTable& table, unsigned k);

/// The same probability summed along the chain: sum_l p_{k-l}(l, k-l) + delta(k).
Rat prob_power_divides_chain(const ProbTable& table, unsigned k);

/// Closed-form average pi-adic valuation of #E(F_p).
Rat average_valuation(const ProbTable& table);

/// JSON: {"modulus": m, "matrices": [[[a,b],[c,d]], ...]}; the matrices are taken as generators.
std::string subgroup_to_json(const SubgroupImage& G);
SubgroupImage subgroup_from_json(const std::string& text);

}  // namespace ecmgal
