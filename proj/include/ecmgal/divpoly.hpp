#pragma once

#include "ecmgal/curves.hpp"
#include "ecmgal/poly.hpp"

namespace ecmgal {

/// Largest m accepted by the division-polynomial routines.
inline constexpr unsigned kMaxDivisionIndex = 64;

/// Monic P_m for y^2 = x^3 + ax + b: its roots are the x-coordinates of the nonzero m-torsion.
/// deg P_m = (m^2 + 2 - 3(m mod 2)) / 2.
RatPoly division_poly(const CurveModel& curve, unsigned m);
ModPoly division_poly(const ModCurve& curve, unsigned m);

/// Monic P_m^new (points of order exactly m), by exact division of P_m by the P_d^new, d | m.
/// A nonzero remainder throws std::logic_error.
RatPoly division_poly_new(const CurveModel& curve, unsigned m);
ModPoly division_poly_new(const ModCurve& curve, unsigned m);

/// #E(F_p)[pi^k] from the roots of P_{pi^k} in F_p. Any curve shape is accepted and routed
/// through its short Weierstrass model.
u64 torsion_size_mod_p(const ModCurve& curve, unsigned pi, unsigned k);

}  // namespace ecmgal
