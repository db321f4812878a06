#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "ecmgal/arith.hpp"
#include "ecmgal/rational.hpp"

namespace ecmgal {

/// Field of rationals with the same interface as PrimeField.
struct RationalField {
  using Elem = Rat;
  Rat zero() const { return 0; }
  Rat one() const { return 1; }
  Rat from_int(i64 v) const { return Rat(static_cast<long>(v)); }
  Rat add(const Rat& a, const Rat& b) const { return a + b; }
  Rat sub(const Rat& a, const Rat& b) const { return a - b; }
  Rat neg(const Rat& a) const { return -a; }
  Rat mul(const Rat& a, const Rat& b) const { return a * b; }
  Rat sqr(const Rat& a) const { return a * a; }
  Rat inv(const Rat& a) const {
    if (a == 0) throw std::domain_error("division by zero");
    return Rat(1) / a;
  }
  Rat div(const Rat& a, const Rat& b) const { return a * inv(b); }
  bool is_zero(const Rat& a) const { return a == 0; }
  bool eq(const Rat& a, const Rat& b) const { return a == b; }
};

enum class CurveKind { ShortWeierstrass, Montgomery, TwistedEdwards };

std::string_view kind_name(CurveKind k);

/// y^2 = x^3 + c1 x + c2 | c2 y^2 = x^3 + c1 x^2 + x | c1 x^2 + y^2 = 1 + c2 x^2 y^2.
template <class F>
struct Curve {
  using Elem = typename F::Elem;
  CurveKind kind = CurveKind::ShortWeierstrass;
  F field;
  Elem c1{}, c2{};
};

using CurveModel = Curve<RationalField>;
using ModCurve = Curve<PrimeField>;

/// Affine point or the point at infinity (Weierstrass and Montgomery models).
template <class E>
struct AffinePoint {
  E x{}, y{};
  bool infinity = true;

  static AffinePoint at(E x, E y) { return AffinePoint{std::move(x), std::move(y), false}; }
};

/// Completed twisted Edwards point ((X:Z),(Y:T)) in P^1 x P^1.
template <class E>
struct EdwardsPoint {
  E X{}, Z{}, Y{}, T{};
};

template <class E>
using CurvePoint = std::variant<AffinePoint<E>, EdwardsPoint<E>>;

// ---------------------------------------------------------------------------
// Model construction and validation

CurveModel make_weierstrass(const Rat& a, const Rat& b);
CurveModel make_montgomery(const Rat& A, const Rat& B);
CurveModel make_edwards(const Rat& a, const Rat& d);

/// The nonsingularity invariant of the model: 4a^3+27b^2, B(A^2-4) or ad(a-d).
template <class F>
typename F::Elem model_invariant(const Curve<F>& c) {
  const F& f = c.field;
  switch (c.kind) {
    case CurveKind::ShortWeierstrass:
      return f.add(f.mul(f.from_int(4), f.mul(c.c1, f.sqr(c.c1))), f.mul(f.from_int(27), f.sqr(c.c2)));
    case CurveKind::Montgomery:
      return f.mul(c.c2, f.sub(f.sqr(c.c1), f.from_int(4)));
    case CurveKind::TwistedEdwards:
      return f.mul(f.mul(c.c1, c.c2), f.sub(c.c1, c.c2));
  }
  return f.zero();
}

template <class F>
void validate_model(const Curve<F>& c) {
  if (c.field.is_zero(model_invariant(c)))
    throw std::invalid_argument(std::string("singular ") + std::string(kind_name(c.kind)) + " model");
}

/// Curve literal "w:a,b" | "m:A,B" | "e:a,d".
CurveModel parse_curve_literal(std::string_view text);
std::string curve_literal(const CurveModel& c);

// ---------------------------------------------------------------------------
// Reduction

struct ReductionOutcome {
  std::optional<ModCurve> curve;
  std::string reason;

  bool good() const { return curve.has_value(); }
};

/// Reduces a rational model modulo a prime p > 3; throws std::invalid_argument for p <= 3.
ReductionOutcome reduce_curve(const CurveModel& model, u64 p);

/// Reduces a rational point; nullopt if a coordinate is not p-integral in the chosen chart.
std::optional<CurvePoint<u64>> reduce_point(const CurvePoint<Rat>& P, u64 p);

// ---------------------------------------------------------------------------
// Group law

template <class F>
CurvePoint<typename F::Elem> identity(const Curve<F>& c) {
  using E = typename F::Elem;
  if (c.kind == CurveKind::TwistedEdwards)
    return EdwardsPoint<E>{c.field.zero(), c.field.one(), c.field.one(), c.field.one()};
  return AffinePoint<E>{};
}

template <class F>
bool on_curve(const Curve<F>& c, const CurvePoint<typename F::Elem>& P) {
  using E = typename F::Elem;
  const F& f = c.field;
  if (c.kind == CurveKind::TwistedEdwards) {
    auto* e = std::get_if<EdwardsPoint<E>>(&P);
    if (!e) return false;
    if (f.is_zero(e->X) && f.is_zero(e->Z)) return false;
    if (f.is_zero(e->Y) && f.is_zero(e->T)) return false;
    E X2 = f.sqr(e->X), Y2 = f.sqr(e->Y), Z2 = f.sqr(e->Z), T2 = f.sqr(e->T);
    E lhs = f.add(f.mul(c.c1, f.mul(X2, T2)), f.mul(Y2, Z2));
    E rhs = f.add(f.mul(Z2, T2), f.mul(c.c2, f.mul(X2, Y2)));
    return f.eq(lhs, rhs);
  }
  auto* a = std::get_if<AffinePoint<E>>(&P);
  if (!a) return false;
  if (a->infinity) return true;
  E x2 = f.sqr(a->x);
  if (c.kind == CurveKind::ShortWeierstrass) {
    return f.eq(f.sqr(a->y), f.add(f.mul(a->x, f.add(x2, c.c1)), c.c2));
  }
  E rhs = f.add(f.mul(a->x, f.add(x2, f.mul(c.c1, a->x))), a->x);
  return f.eq(f.mul(c.c2, f.sqr(a->y)), rhs);
}

template <class F>
bool points_equal(const Curve<F>& c, const CurvePoint<typename F::Elem>& P,
                  const CurvePoint<typename F::Elem>& Q) {
  using E = typename F::Elem;
  const F& f = c.field;
  if (c.kind == CurveKind::TwistedEdwards) {
    const auto& p = std::get<EdwardsPoint<E>>(P);
    const auto& q = std::get<EdwardsPoint<E>>(Q);
    return f.eq(f.mul(p.X, q.Z), f.mul(q.X, p.Z)) && f.eq(f.mul(p.Y, q.T), f.mul(q.Y, p.T));
  }
  const auto& p = std::get<AffinePoint<E>>(P);
  const auto& q = std::get<AffinePoint<E>>(Q);
  if (p.infinity || q.infinity) return p.infinity == q.infinity;
  return f.eq(p.x, q.x) && f.eq(p.y, q.y);
}

template <class F>
bool is_identity(const Curve<F>& c, const CurvePoint<typename F::Elem>& P) {
  return points_equal(c, P, identity(c));
}

template <class F>
CurvePoint<typename F::Elem> negate(const Curve<F>& c, const CurvePoint<typename F::Elem>& P) {
  using E = typename F::Elem;
  if (c.kind == CurveKind::TwistedEdwards) {
    auto e = std::get<EdwardsPoint<E>>(P);
    e.X = c.field.neg(e.X);
    return e;
  }
  auto a = std::get<AffinePoint<E>>(P);
  if (!a.infinity) a.y = c.field.neg(a.y);
  return a;
}

namespace detail {

// Affine chord-and-tangent law. For Montgomery curves `lead` is B and `quad` is A.
template <class F>
AffinePoint<typename F::Elem> affine_add(const F& f, CurveKind kind, const typename F::Elem& c1,
                                         const typename F::Elem& c2, const AffinePoint<typename F::Elem>& P,
                                         const AffinePoint<typename F::Elem>& Q) {
  using E = typename F::Elem;
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  E lambda;
  if (f.eq(P.x, Q.x)) {
    if (f.is_zero(f.add(P.y, Q.y))) return AffinePoint<E>{};
    E x2 = f.sqr(P.x);
    E num = f.add(f.add(x2, x2), x2);
    if (kind == CurveKind::ShortWeierstrass) {
      num = f.add(num, c1);
      lambda = f.div(num, f.add(P.y, P.y));
    } else {
      E ax = f.mul(c1, P.x);
      num = f.add(f.add(num, f.add(ax, ax)), f.one());
      E by = f.mul(c2, P.y);
      lambda = f.div(num, f.add(by, by));
    }
  } else {
    lambda = f.div(f.sub(Q.y, P.y), f.sub(Q.x, P.x));
  }
  E l2 = f.sqr(lambda);
  E x3;
  if (kind == CurveKind::ShortWeierstrass) {
    x3 = f.sub(f.sub(l2, P.x), Q.x);
  } else {
    x3 = f.sub(f.sub(f.sub(f.mul(c2, l2), c1), P.x), Q.x);
  }
  E y3 = f.sub(f.mul(lambda, f.sub(P.x, x3)), P.y);
  return AffinePoint<E>::at(std::move(x3), std::move(y3));
}

// Completed twisted Edwards addition: two addition laws, each coordinate pair taken from
// whichever law leaves it nonzero.
template <class F>
EdwardsPoint<typename F::Elem> edwards_add(const F& f, const typename F::Elem& a, const typename F::Elem& d,
                                           const EdwardsPoint<typename F::Elem>& P,
                                           const EdwardsPoint<typename F::Elem>& Q) {
  using E = typename F::Elem;
  const E X1X2 = f.mul(P.X, Q.X), Y1Y2 = f.mul(P.Y, Q.Y);
  const E Z1Z2 = f.mul(P.Z, Q.Z), T1T2 = f.mul(P.T, Q.T);
  const E XXYY = f.mul(X1X2, Y1Y2), ZZTT = f.mul(Z1Z2, T1T2);
  const E dXXYY = f.mul(d, XXYY);
  const E aXXTT = f.mul(a, f.mul(X1X2, T1T2));
  const E YYZZ = f.mul(Y1Y2, Z1Z2);

  const E X1Y2 = f.mul(P.X, Q.Y), X2Y1 = f.mul(Q.X, P.Y);
  const E Z2T1 = f.mul(Q.Z, P.T), Z1T2 = f.mul(P.Z, Q.T);
  const E X1Y1 = f.mul(P.X, P.Y), X2Y2 = f.mul(Q.X, Q.Y);
  const E Z2T2 = f.mul(Q.Z, Q.T), Z1T1 = f.mul(P.Z, P.T);

  EdwardsPoint<E> R;
  R.X = f.add(f.mul(X1Y2, Z2T1), f.mul(X2Y1, Z1T2));
  R.Z = f.add(ZZTT, dXXYY);
  if (f.is_zero(R.X) && f.is_zero(R.Z)) {
    R.X = f.add(f.mul(X1Y1, Z2T2), f.mul(X2Y2, Z1T1));
    R.Z = f.add(aXXTT, YYZZ);
  }
  R.Y = f.sub(YYZZ, aXXTT);
  R.T = f.sub(ZZTT, dXXYY);
  if (f.is_zero(R.Y) && f.is_zero(R.T)) {
    R.Y = f.sub(f.mul(X1Y1, Z2T2), f.mul(X2Y2, Z1T1));
    R.T = f.sub(f.mul(X1Y2, Z2T1), f.mul(X2Y1, Z1T2));
  }
  return R;
}

template <class F>
EdwardsPoint<typename F::Elem> edwards_normalize(const F& f, EdwardsPoint<typename F::Elem> P) {
  if (!f.is_zero(P.Z)) {
    P.X = f.div(P.X, P.Z);
    P.Z = f.one();
  } else {
    P.X = f.one();
  }
  if (!f.is_zero(P.T)) {
    P.Y = f.div(P.Y, P.T);
    P.T = f.one();
  } else {
    P.Y = f.one();
  }
  return P;
}

}  // namespace detail

/// Group sum; throws std::invalid_argument if either point is off the curve.
template <class F>
CurvePoint<typename F::Elem> add_points(const Curve<F>& c, const CurvePoint<typename F::Elem>& P,
                                        const CurvePoint<typename F::Elem>& Q, bool check = true) {
  using E = typename F::Elem;
  if (check && (!on_curve(c, P) || !on_curve(c, Q))) throw std::invalid_argument("point not on curve");
  if (c.kind == CurveKind::TwistedEdwards) {
    return detail::edwards_normalize(
        c.field, detail::edwards_add(c.field, c.c1, c.c2, std::get<EdwardsPoint<E>>(P), std::get<EdwardsPoint<E>>(Q)));
  }
  return detail::affine_add(c.field, c.kind, c.c1, c.c2, std::get<AffinePoint<E>>(P), std::get<AffinePoint<E>>(Q));
}

/// [k]P by double-and-add; negative k uses the inverse.
template <class F>
CurvePoint<typename F::Elem> scalar_mul(const Curve<F>& c, const BigInt& k, const CurvePoint<typename F::Elem>& P) {
  if (!on_curve(c, P)) throw std::invalid_argument("point not on curve");
  CurvePoint<typename F::Elem> base = sgn(k) < 0 ? negate(c, P) : P;
  BigInt n = abs(k);
  CurvePoint<typename F::Elem> acc = identity(c);
  const std::size_t bits = n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    acc = add_points(c, acc, acc, false);
    if (mpz_tstbit(n.get_mpz_t(), i)) acc = add_points(c, acc, base, false);
  }
  return acc;
}

template <class F>
CurvePoint<typename F::Elem> scalar_mul(const Curve<F>& c, i64 k, const CurvePoint<typename F::Elem>& P) {
  return scalar_mul(c, BigInt(static_cast<long>(k)), P);
}

// ---------------------------------------------------------------------------
// Model conversions

/// Montgomery(A,B) <-> twisted Edwards(a,d) with a=(A+2)/B, d=(A-2)/B.
template <class F>
Curve<F> montgomery_edwards_convert(const Curve<F>& c) {
  const F& f = c.field;
  validate_model(c);
  Curve<F> out{.kind = CurveKind::Montgomery, .field = f, .c1 = {}, .c2 = {}};
  if (c.kind == CurveKind::Montgomery) {
    out.kind = CurveKind::TwistedEdwards;
    out.c1 = f.div(f.add(c.c1, f.from_int(2)), c.c2);
    out.c2 = f.div(f.sub(c.c1, f.from_int(2)), c.c2);
  } else if (c.kind == CurveKind::TwistedEdwards) {
    const auto diff = f.sub(c.c1, c.c2);
    out.c1 = f.div(f.mul(f.from_int(2), f.add(c.c1, c.c2)), diff);
    out.c2 = f.div(f.from_int(4), diff);
  } else {
    throw std::invalid_argument("montgomery_edwards_convert: Weierstrass input");
  }
  validate_model(out);
  return out;
}

/// Edwards point ((x:z),(y:t)) -> Montgomery ((t+y)x : (t+y)z : (t-y)x); (0,-1) -> (0,0).
template <class F>
CurvePoint<typename F::Elem> edwards_to_montgomery_point(const F& f, const EdwardsPoint<typename F::Elem>& P) {
  using E = typename F::Elem;
  E ty = f.add(P.T, P.Y);
  E U = f.mul(ty, P.X), V = f.mul(ty, P.Z), W = f.mul(f.sub(P.T, P.Y), P.X);
  if (f.is_zero(U) && f.is_zero(V) && f.is_zero(W)) return AffinePoint<E>::at(f.zero(), f.zero());
  if (f.is_zero(W)) return AffinePoint<E>{};
  return AffinePoint<E>::at(f.div(U, W), f.div(V, W));
}

/// Inverse of edwards_to_montgomery_point: (u,v) -> ((u:v),(u-1:u+1)).
template <class F>
EdwardsPoint<typename F::Elem> montgomery_to_edwards_point(const F& f, const AffinePoint<typename F::Elem>& P) {
  using E = typename F::Elem;
  if (P.infinity) return EdwardsPoint<E>{f.zero(), f.one(), f.one(), f.one()};
  if (f.is_zero(P.x) && f.is_zero(P.y)) return EdwardsPoint<E>{f.zero(), f.one(), f.neg(f.one()), f.one()};
  return detail::edwards_normalize(f, EdwardsPoint<E>{P.x, P.y, f.sub(P.x, f.one()), f.add(P.x, f.one())});
}

/// Maps points on the source curve to the counterpart curve of montgomery_edwards_convert.
template <class F>
CurvePoint<typename F::Elem> convert_point(const Curve<F>& source, const CurvePoint<typename F::Elem>& P) {
  using E = typename F::Elem;
  if (source.kind == CurveKind::TwistedEdwards)
    return edwards_to_montgomery_point(source.field, std::get<EdwardsPoint<E>>(P));
  return montgomery_to_edwards_point(source.field, std::get<AffinePoint<E>>(P));
}

/// Short Weierstrass model isomorphic to c, with the point map.
template <class F>
struct WeierstrassMap {
  using E = typename F::Elem;
  Curve<F> source;
  Curve<F> target;
  // For Montgomery (and Edwards via Montgomery) sources: u = (x + A/3)/B, v = y/B.
  E shift{}, inv_scale{};

  CurvePoint<E> map(const CurvePoint<E>& P) const {
    const F& f = source.field;
    if (source.kind == CurveKind::ShortWeierstrass) return P;
    AffinePoint<E> m;
    if (source.kind == CurveKind::TwistedEdwards) {
      m = std::get<AffinePoint<E>>(edwards_to_montgomery_point(f, std::get<EdwardsPoint<E>>(P)));
    } else {
      m = std::get<AffinePoint<E>>(P);
    }
    if (m.infinity) return m;
    return AffinePoint<E>::at(f.mul(f.add(m.x, shift), inv_scale), f.mul(m.y, inv_scale));
  }
};

template <class F>
WeierstrassMap<F> to_weierstrass(const Curve<F>& c) {
  const F& f = c.field;
  validate_model(c);
  WeierstrassMap<F> out{c, c, f.zero(), f.one()};
  if (c.kind == CurveKind::ShortWeierstrass) return out;
  Curve<F> mont = c.kind == CurveKind::TwistedEdwards ? montgomery_edwards_convert(c) : c;
  const auto& A = mont.c1;
  const auto& B = mont.c2;
  const auto three = f.from_int(3);
  out.shift = f.div(A, three);
  out.inv_scale = f.inv(B);
  const auto A2 = f.sqr(A), B2 = f.sqr(B);
  out.target.kind = CurveKind::ShortWeierstrass;
  out.target.c1 = f.div(f.sub(three, A2), f.mul(three, B2));
  out.target.c2 = f.div(f.sub(f.mul(f.from_int(2), f.mul(A2, A)), f.mul(f.from_int(9), A)),
                        f.mul(f.from_int(27), f.mul(B2, B)));
  validate_model(out.target);
  return out;
}

}  // namespace ecmgal
