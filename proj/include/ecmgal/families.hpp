#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecmgal/curves.hpp"

namespace ecmgal {

/// Family membership. The first eight tags are the studied families; Montgomery and
/// TwistedEdwards stand for curves of that shape with no further structure.
enum class FamilyTag {
  Suyama,
  Suyama11,
  Suyama94,
  Ed24Generic,
  Ed24G2,
  Ed24Rat,
  Ed24G2Half,
  Ed24GMinv,
  Montgomery,
  TwistedEdwards,
};

std::string_view family_name(FamilyTag tag);

struct SuyamaCurve {
  Rat sigma;
  CurveModel curve;  // Montgomery(A, B)
  Rat x3;
  Rat x_inf, y_inf;
};

/// Suyama curve for sigma; every defining identity is re-checked before returning.
SuyamaCurve suyama(const Rat& sigma);

/// -(A+2)/B is a nonzero rational square.
bool satisfies_eq11(const Rat& A, const Rat& B);
/// B is a nonzero rational square.
bool satisfies_eq94(const Rat& A, const Rat& B);

/// sigma from R = n P_inf + e1 P2 + e2 Q2 on v^2 = u^3 - u^2 - 120u + 432.
Rat suyama11_sigma(long n, bool e1, bool e2);
/// sigma from R = n P_inf + e1 P2 on v^2 = u^3 - 5u.
Rat suyama94_sigma(long n, bool e1);

/// The e of d = -e^4 for a tag of the Ed24 subfamilies.
Rat edwards_e(FamilyTag tag, const Rat& param);
/// -x^2 + y^2 = 1 + d x^2 y^2 with d = -e^4.
CurveModel edwards_family(FamilyTag tag, const Rat& param);

struct Z2Z4Param {
  Rat e, d, x_inf, y_inf;
};
Z2Z4Param z2z4_param(const Rat& t);

/// g with e = g^2, from [k](-3, 9) on y^2 = x^3 - 36x.
Rat e_square_generator(unsigned k);

/// A point of order 8 on E_d mod p, d = -((g - 1/g)/2)^4; t, w, sx, sy are signs (+1 or -1).
EdwardsPoint<u64> edwards_eight_torsion(const Rat& g, u64 p, int t, int w, int sx = 1, int sy = 1);

/// A curve together with the family data certificates need.
struct FamilyMember {
  FamilyTag tag = FamilyTag::Montgomery;
  CurveModel curve;
  std::string label;
  std::optional<Rat> sigma;
  std::optional<Rat> g;  // Ed24 subfamily parameter
  std::optional<Rat> e;
};

/// Parses `suyama:11`, `suyama11:n=1,e1=1,e2=0`, `suyama94:n=2`, `ed24:<sub>:<key>=<value>`
/// with sub in {generic (e=), g2, rat, g2half, gminv (g=), param (t=), esq (k=)}.
FamilyMember parse_family_spec(std::string_view spec);

/// Plain Montgomery / twisted Edwards curves are wrapped with the generic tags.
FamilyMember member_from_curve(const CurveModel& curve);

enum class ClauseKind {
  Always,
  Th2kCase1,   // p = 3 mod 4, a/d (A^2-4) QR: E[4] = Z/2 x Z/4
  Th2kCase2,   // p = 1 mod 4, a ((A+2)/B) QR and a/d (A^2-4) QR: Z/2 x Z/4 inside E[4]
  Th2kCase3,   // p = 1 mod 4, a/d (A^2-4) non-QR, a-d (B) QR: E[8] = Z/8
  GMinv32,     // p = 1 mod 4 and g(g-1)(g+1) QR
};

struct CertificateClause {
  ClauseKind kind = ClauseKind::Always;
  u64 divisor = 1;
  std::string description;
};

/// D | #E(F_p) for every good prime p whose clauses apply.
struct Certificate {
  FamilyMember member;
  std::vector<CertificateClause> clauses;
  unsigned verified_primes = 0;

  u64 base_divisor() const;
  /// lcm of the divisors of all clauses applying at p, or nullopt for bad reduction.
  std::optional<u64> divisor_for(u64 p) const;
  /// Which clause kinds apply at p (bad reduction gives an empty list).
  std::vector<ClauseKind> applicable(u64 p) const;
};

/// Builds the certificate and checks it on the first `check_primes` good primes.
Certificate divisibility_certificate(const FamilyMember& member, unsigned check_primes = 25);

}  // namespace ecmgal
