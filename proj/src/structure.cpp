#include "ecmgal/structure.hpp"

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "ecmgal/factor.hpp"

namespace ecmgal {

namespace {

constexpr u64 kNaiveLimit = u64{1} << 16;
constexpr int kOrderSamples = 20;

u64 splitmix(u64 z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream: the i-th draw depends only on (key, i).
class Stream {
 public:
  explicit Stream(u64 key) : key_(splitmix(key)) {}
  u64 next() { return splitmix(key_ ^ splitmix(++counter_)); }

 private:
  u64 key_;
  u64 counter_ = 0;
};

struct Pt {
  u64 x = 0, y = 0;
  bool inf = true;
};

// Affine short Weierstrass arithmetic specialised to word-sized fields.
struct WCurve {
  PrimeField f;
  u64 a, b;

  Pt add(const Pt& P, const Pt& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    u64 lambda;
    if (P.x == Q.x) {
      if (f.add(P.y, Q.y) == 0) return Pt{};
      u64 x2 = f.sqr(P.x);
      lambda = f.div(f.add(f.add(f.add(x2, x2), x2), a), f.add(P.y, P.y));
    } else {
      lambda = f.div(f.sub(Q.y, P.y), f.sub(Q.x, P.x));
    }
    u64 x3 = f.sub(f.sub(f.sqr(lambda), P.x), Q.x);
    u64 y3 = f.sub(f.mul(lambda, f.sub(P.x, x3)), P.y);
    return Pt{x3, y3, false};
  }

  Pt mul(u64 k, Pt P) const {
    Pt acc;
    while (k) {
      if (k & 1) acc = add(acc, P);
      k >>= 1;
      if (k) P = add(P, P);
    }
    return acc;
  }

  u64 rhs(u64 x) const { return f.add(f.mul(f.add(f.sqr(x), a), x), b); }

  Pt random_point(Stream& rng) const {
    const u64 p = f.modulus();
    for (;;) {
      u64 r = rng.next();
      u64 x = r % p;
      u64 v = rhs(x);
      if (v == 0) return Pt{x, 0, false};
      auto s = f.sqrt(v);
      if (!s) continue;
      u64 y = (r >> 63) ? f.neg(*s) : *s;
      return Pt{x, y, false};
    }
  }
};

WCurve weierstrass_of(const ModCurve& c) {
  auto w = to_weierstrass(c).target;
  return WCurve{w.field, w.c1, w.c2};
}

// Exact order of P given a multiple M of it.
u64 reduce_order(const WCurve& E, const Pt& P, u64 M) {
  for (auto [q, e] : factor_u64(M)) {
    for (unsigned i = 0; i < e; ++i) {
      if (!E.mul(M / q, P).inf) break;
      M /= q;
    }
  }
  return M;
}

// A multiple of ord(P) in [lo, hi + s], found by baby-step/giant-step with the +-trick.
std::optional<u64> bsgs_multiple(const WCurve& E, const Pt& P, u64 lo, u64 hi) {
  const u64 width = hi - lo;
  u64 s = isqrt(width / 2) + 1;
  std::unordered_map<u64, u64> baby;
  baby.reserve(s * 2 + 2);
  Pt R = P;
  for (u64 j = 1; j <= s; ++j) {
    if (R.inf) return j;
    baby.emplace(R.x, j);
    R = E.add(R, P);
  }
  const Pt step = E.mul(2 * s + 1, P);
  Pt G = E.mul(lo + s, P);
  for (u64 c = lo + s; c <= hi + s; c += 2 * s + 1) {
    if (G.inf) return c;
    if (auto it = baby.find(G.x); it != baby.end()) {
      u64 j = it->second;
      Pt J = E.mul(j, P);
      return J.y == G.y ? c - j : c + j;
    }
    G = E.add(G, step);
  }
  return std::nullopt;
}

u64 lcm_u64(u64 a, u64 b) { return a / gcd_u64(a, b) * b; }

u64 smallest_nonresidue(const PrimeField& f) {
  for (u64 c = 2;; ++c)
    if (f.legendre(c) == -1) return c;
}

}  // namespace

u64 curve_hash(const ModCurve& c) {
  u64 h = splitmix(static_cast<u64>(c.kind) + 0x51ed27);
  h = splitmix(h ^ c.c1);
  h = splitmix(h ^ c.c2);
  return splitmix(h ^ c.field.modulus());
}

u64 count_points_naive(const ModCurve& curve) {
  const PrimeField& f = curve.field;
  const u64 p = f.modulus();
  if (p >= kNaiveLimit) throw std::invalid_argument("count_points_naive: p must be below 2^16");
  const ModCurve c = curve.kind == CurveKind::TwistedEdwards ? montgomery_edwards_convert(curve) : curve;
  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  for (u64 y = 1; y < p; ++y) chi[f.sqr(y)] = 1;
  i64 total = 1;
  const int twist = c.kind == CurveKind::Montgomery ? chi[c.c2] : 1;
  for (u64 x = 0; x < p; ++x) {
    u64 v;
    if (c.kind == CurveKind::ShortWeierstrass) v = f.add(f.mul(f.add(f.sqr(x), c.c1), x), c.c2);
    else v = f.add(f.mul(x, f.add(f.sqr(x), f.mul(c.c1, x))), x);
    total += 1 + twist * chi[v];
  }
  return static_cast<u64>(total);
}

u64 group_order(const ModCurve& curve, u64 seed) {
  const WCurve E = weierstrass_of(curve);
  const PrimeField& f = E.f;
  const u64 p = f.modulus();
  const u64 r = isqrt(4 * p);
  const u64 lo = p + 1 - r, hi = p + 1 + r;
  // Quadratic twist y^2 = x^3 + a c^2 x + b c^3 has order 2p + 2 - N.
  const u64 c = smallest_nonresidue(f);
  const WCurve T{f, f.mul(E.a, f.sqr(c)), f.mul(E.b, f.mul(c, f.sqr(c)))};
  Stream rng(curve_hash(curve) ^ splitmix(seed));

  u64 L = 1, Lt = 1;
  auto decided = [&]() -> std::optional<u64> {
    std::optional<u64> found;
    for (u64 N = (lo + L - 1) / L * L; N <= hi; N += L) {
      if ((2 * p + 2 - N) % Lt != 0) continue;
      if (found) return std::nullopt;
      found = N;
    }
    return found;
  };
  for (int i = 0; i < kOrderSamples; ++i) {
    Pt P = E.random_point(rng);
    if (auto M = bsgs_multiple(E, P, lo, hi)) L = lcm_u64(L, reduce_order(E, P, *M));
    if (auto N = decided()) return *N;
    Pt Q = T.random_point(rng);
    if (auto M = bsgs_multiple(T, Q, lo, hi)) Lt = lcm_u64(Lt, reduce_order(T, Q, *M));
    if (auto N = decided()) return *N;
  }
  if (p < kNaiveLimit) return count_points_naive(ModCurve{CurveKind::ShortWeierstrass, f, E.a, E.b});
  throw std::runtime_error("group_order: undecided after sampling");
}

GroupShape group_shape(const ModCurve& curve, std::optional<u64> order, u64 seed) {
  const u64 N = order ? *order : group_order(curve, seed);
  const WCurve E = weierstrass_of(curve);
  const u64 p = E.f.modulus();
  Stream rng(curve_hash(curve) ^ splitmix(seed ^ 0x5ca1ab1e));
  u64 d2 = 1;
  for (auto [q, e] : factor_u64(N)) {
    u64 qe = 1;
    for (unsigned i = 0; i < e; ++i) qe *= q;
    if (e == 1 || (p - 1) % q != 0) {
      d2 *= qe;
      continue;
    }
    const u64 cof = N / qe;
    u64 best = 1;
    const int samples = std::max<int>(20, 2 * static_cast<int>(e));
    for (int s = 0; s < samples && best < qe; ++s) {
      Pt R = E.mul(cof, E.random_point(rng));
      u64 ord = 1;
      while (!R.inf) {
        R = E.mul(q, R);
        ord *= q;
      }
      best = std::max(best, ord);
    }
    d2 *= best;
  }
  return GroupShape{N / d2, d2};
}

TorsionShape truncate_shape(const TorsionShape& full, unsigned k) {
  return TorsionShape{std::min(full.i, k), std::min(full.j, k), full.pi, k};
}

TorsionShape torsion_shape(const ModCurve& curve, unsigned pi, unsigned kmax, std::optional<u64> order, u64 seed) {
  const u64 p = curve.field.modulus();
  if (p == pi) throw std::invalid_argument("torsion_shape: p equals pi");
  const u64 N = order ? *order : group_order(curve, seed);
  const unsigned v = valuation(N, pi);
  TorsionShape full{0, v, pi, v};
  // Full pi-torsion needs the pi-th roots of unity in F_p.
  if (v >= 2 && (p - 1) % pi == 0) {
    const WCurve E = weierstrass_of(curve);
    Stream rng(curve_hash(curve) ^ splitmix(seed ^ (0x70e5 + pi)));
    u64 pv = 1;
    for (unsigned i = 0; i < v; ++i) pv *= pi;
    const u64 cof = N / pv;
    unsigned best = 0;
    const int samples = std::max<int>(20, 2 * static_cast<int>(v));
    for (int s = 0; s < samples && best < v; ++s) {
      Pt R = E.mul(cof, E.random_point(rng));
      unsigned t = 0;
      while (!R.inf) {
        R = E.mul(pi, R);
        ++t;
      }
      best = std::max(best, t);
    }
    full.i = v - best;
    full.j = best;
  }
  return truncate_shape(full, kmax);
}

}  // namespace ecmgal
