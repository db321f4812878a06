#pragma once

#include <optional>

#include "ecmgal/curves.hpp"

namespace ecmgal {

/// E(F_p) = Z/d1 x Z/d2 with d1 | d2.
struct GroupShape {
  u64 d1 = 1;
  u64 d2 = 1;
  friend bool operator==(const GroupShape&, const GroupShape&) = default;
};

/// E(F_p)[pi^level] = Z/pi^i x Z/pi^j, i <= j <= level.
struct TorsionShape {
  unsigned i = 0;
  unsigned j = 0;
  unsigned pi = 2;
  unsigned level = 0;
  friend bool operator==(const TorsionShape&, const TorsionShape&) = default;
};

/// Exhaustive count, p < 2^16. Edwards curves are counted through their Montgomery form.
u64 count_points_naive(const ModCurve& curve);

/// Exact #E(F_p) by baby-step/giant-step on random points of the curve and its quadratic twist.
u64 group_order(const ModCurve& curve, u64 seed = 0);

/// Group structure; `order` may carry a precomputed #E(F_p).
GroupShape group_shape(const ModCurve& curve, std::optional<u64> order = std::nullopt, u64 seed = 0);

/// Shape of the pi-primary torsion truncated at level kmax.
TorsionShape torsion_shape(const ModCurve& curve, unsigned pi, unsigned kmax, std::optional<u64> order = std::nullopt,
                           u64 seed = 0);

/// Truncates a full pi-Sylow shape (i, j) to level k.
TorsionShape truncate_shape(const TorsionShape& full, unsigned k);

/// Hash of the reduced coefficients, used to seed per-prime sampling.
u64 curve_hash(const ModCurve& curve);

}  // namespace ecmgal
