#include "ecmgal/divpoly.hpp"

#include <gmp.h>

#include <algorithm>
#include <functional>
#include <map>

namespace ecmgal {

namespace {

// ---------------------------------------------------------------------------
// Integer polynomials with Kronecker-substitution products.

using ZPoly = std::vector<BigInt>;

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::size_t max_bits(const ZPoly& a) {
  std::size_t b = 0;
  for (const auto& c : a) b = std::max(b, mpz_sizeinbase(c.get_mpz_t(), 2));
  return b;
}

// Packs |c_i| of the coefficients with the given sign into 64-bit limb slots.
BigInt pack(const ZPoly& a, std::size_t slot_limbs, int sign) {
  std::vector<std::uint64_t> words(a.size() * slot_limbs, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != sign) continue;
    std::size_t count = 0;
    mpz_export(words.data() + i * slot_limbs, &count, -1, sizeof(std::uint64_t), 0, 0, a[i].get_mpz_t());
  }
  BigInt v;
  mpz_import(v.get_mpz_t(), words.size(), -1, sizeof(std::uint64_t), 0, 0, words.data());
  return v;
}

ZPoly unpack(const BigInt& value, std::size_t slot_limbs, std::size_t len) {
  const bool negative = sgn(value) < 0;
  std::vector<std::uint64_t> words(len * slot_limbs + 1, 0);
  std::size_t count = 0;
  mpz_export(words.data(), &count, -1, sizeof(std::uint64_t), 0, 0, value.get_mpz_t());
  const std::size_t bits = slot_limbs * 64;
  BigInt half, full;
  mpz_setbit(half.get_mpz_t(), bits - 1);
  mpz_setbit(full.get_mpz_t(), bits);
  ZPoly out(len);
  int carry = 0;
  for (std::size_t i = 0; i < len; ++i) {
    BigInt d;
    mpz_import(d.get_mpz_t(), slot_limbs, -1, sizeof(std::uint64_t), 0, 0, words.data() + i * slot_limbs);
    d += carry;
    if (d >= half) {
      d -= full;
      carry = 1;
    } else {
      carry = 0;
    }
    out[i] = negative ? BigInt(-d) : d;
  }
  return out;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t len = a.size() + b.size() - 1;
  if (std::min(a.size(), b.size()) < 16) {
    ZPoly c(len);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(c[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    ztrim(c);
    return c;
  }
  std::size_t need = max_bits(a) + max_bits(b) + 2;
  for (std::size_t n = std::min(a.size(), b.size()); n; n >>= 1) ++need;
  const std::size_t slot = (need + 63) / 64;
  BigInt pa = pack(a, slot, 1) - pack(a, slot, -1);
  BigInt pb = pack(b, slot, 1) - pack(b, slot, -1);
  ZPoly c = unpack(pa * pb, slot, len);
  ztrim(c);
  return c;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  ztrim(a);
  return a;
}

// ---------------------------------------------------------------------------
// The x-only division sequence g_n: psi_n for odd n, psi_n / (2y) for even n.

template <class P>
struct DivisionSequence {
  std::function<P(const P&, const P&)> mul;
  std::function<P(const P&, const P&)> sub;
  P F2;  // (4(x^3 + ax + b))^2
  std::map<unsigned, P> memo;

  const P& get(unsigned n) {
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    P value = compute(n);
    return memo.emplace(n, std::move(value)).first->second;
  }

  P cube(const P& v) { return mul(mul(v, v), v); }

  P compute(unsigned n) {
    if (n % 2 == 1) {
      unsigned k = (n - 1) / 2;
      P a = mul(get(k + 2), cube(get(k)));
      P b = mul(get(k - 1), cube(get(k + 1)));
      if (k % 2 == 0) a = mul(F2, a);
      else b = mul(F2, b);
      return sub(a, b);
    }
    unsigned k = n / 2;
    const P& gm1 = get(k - 1);
    const P& gp1 = get(k + 1);
    P t = sub(mul(get(k + 2), mul(gm1, gm1)), mul(get(k - 2), mul(gp1, gp1)));
    return mul(get(k), t);
  }
};

void check_index(unsigned m) {
  if (m < 2 || m > kMaxDivisionIndex) throw std::invalid_argument("division polynomial index out of range");
}

unsigned expected_degree(unsigned m) { return (m * m + 2 - 3 * (m % 2)) / 2; }

// g_m over Z for integral a, b.
ZPoly integer_g(const BigInt& a, const BigInt& b, unsigned m) {
  DivisionSequence<ZPoly> seq{zmul, zsub, {}, {}};
  ZPoly F = {4 * b, 4 * a, 0, 4};
  seq.F2 = zmul(F, F);
  seq.memo.emplace(0, ZPoly{});
  seq.memo.emplace(1, ZPoly{1});
  seq.memo.emplace(2, ZPoly{1});
  seq.memo.emplace(3, ZPoly{-a * a, 12 * b, 6 * a, 0, 3});
  seq.memo.emplace(4, ZPoly{2 * (-8 * b * b - a * a * a), -8 * a * b, -10 * a * a, 40 * b, 10 * a, 0, 2});
  return seq.get(m);
}

ModPoly mod_g(const PrimeField& f, u64 a, u64 b, unsigned m) {
  auto P = [&](std::initializer_list<i64> c) {
    std::vector<u64> v;
    for (i64 x : c) v.push_back(f.from_int(x));
    return ModPoly(f, v);
  };
  auto mulf = [](const ModPoly& x, const ModPoly& y) { return x * y; };
  auto subf = [](const ModPoly& x, const ModPoly& y) { return x - y; };
  DivisionSequence<ModPoly> seq{mulf, subf, ModPoly(f), {}};
  ModPoly F(f, {f.mul(4, b), f.mul(4, a), 0, 4});
  seq.F2 = F * F;
  const u64 a2 = f.sqr(a), ab = f.mul(a, b), b2 = f.sqr(b), a3 = f.mul(a2, a);
  seq.memo.emplace(0, ModPoly(f));
  seq.memo.emplace(1, P({1}));
  seq.memo.emplace(2, P({1}));
  seq.memo.emplace(3, ModPoly(f, {f.neg(a2), f.mul(12 % f.modulus(), b), f.mul(6, a), 0, 3}));
  seq.memo.emplace(4, ModPoly(f, {f.mul(2, f.neg(f.add(f.mul(8, b2), a3))), f.neg(f.mul(8, ab)), f.neg(f.mul(10, a2)),
                                  f.mul(40 % f.modulus(), b), f.mul(10, a), 0, 2}));
  return seq.get(m);
}

void require_weierstrass(CurveKind k) {
  if (k != CurveKind::ShortWeierstrass) throw std::invalid_argument("division polynomials need a short Weierstrass model");
}

template <class F>
Poly<F> exact_quotient(const Poly<F>& a, const Poly<F>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("division polynomial: inexact division");
  return q;
}

template <class F, class Full>
Poly<F> new_part(unsigned m, const Poly<F>& one, Full full) {
  check_index(m);
  std::map<unsigned, Poly<F>> cache;
  std::function<Poly<F>(unsigned)> rec = [&](unsigned n) -> Poly<F> {
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    Poly<F> prod = one;
    for (unsigned d = 2; d < n; ++d)
      if (n % d == 0) prod = prod * rec(d);
    Poly<F> out = n == 1 ? one : exact_quotient(full(n), prod);
    cache.emplace(n, out);
    return out;
  };
  return rec(m);
}

}  // namespace

RatPoly division_poly(const CurveModel& curve, unsigned m) {
  require_weierstrass(curve.kind);
  check_index(m);
  RationalField Q;
  // Scale to an integral model: a' = a u^4, b' = b u^6, x' = u^2 x.
  BigInt u = lcm(curve.c1.get_den(), curve.c2.get_den());
  BigInt u2 = u * u;
  Rat a_scaled = curve.c1 * Rat(u2 * u2);
  Rat b_scaled = curve.c2 * Rat(u2 * u2 * u2);
  ZPoly g = integer_g(a_scaled.get_num(), b_scaled.get_num(), m);
  if (m % 2 == 0) g = zmul(g, ZPoly{b_scaled.get_num(), a_scaled.get_num(), 0, 1});
  if (g.empty()) return RatPoly(Q);
  const std::size_t deg = g.size() - 1;
  if (deg != expected_degree(m)) throw std::logic_error("division polynomial: unexpected degree");
  std::vector<Rat> c(g.size());
  BigInt pw = 1;  // u^(2(deg - i))
  for (std::size_t i = g.size(); i-- > 0;) {
    c[i] = Rat(g[i]) / (Rat(g[deg]) * Rat(pw));
    c[i].canonicalize();
    pw *= u2;
  }
  return RatPoly(Q, std::move(c));
}

ModPoly division_poly(const ModCurve& curve, unsigned m) {
  require_weierstrass(curve.kind);
  check_index(m);
  const PrimeField& f = curve.field;
  if (m % f.modulus() == 0) throw std::invalid_argument("division polynomial: p divides m");
  ModPoly g = mod_g(f, curve.c1, curve.c2, m);
  if (m % 2 == 0) g = g * ModPoly(f, {curve.c2, curve.c1, 0, 1});
  return monic(g);
}

RatPoly division_poly_new(const CurveModel& curve, unsigned m) {
  RatPoly one = RatPoly::constant(RationalField{}, 1);
  return new_part(m, one, [&](unsigned n) { return division_poly(curve, n); });
}

ModPoly division_poly_new(const ModCurve& curve, unsigned m) {
  ModPoly one = ModPoly::constant(curve.field, 1);
  return new_part(m, one, [&](unsigned n) { return division_poly(curve, n); });
}

std::vector<u64> poly_roots(const ModPoly& f, u64 seed) {
  const PrimeField& F = f.field;
  const u64 p = F.modulus();
  if (f.is_zero()) throw std::invalid_argument("poly_roots of zero polynomial");
  std::vector<u64> roots;
  if (f.degree() <= 0) return roots;
  ModPoly X = ModPoly::x(F);
  // Product of the distinct linear factors.
  ModPoly lin = gcd(powmod(X, p, monic(f)) - X, f);
  std::vector<ModPoly> work{lin};
  u64 state = seed ^ 0x9e3779b97f4a7c15ULL ^ p;
  auto next = [&] {
    state += 0x9e3779b97f4a7c15ULL;
    u64 z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  while (!work.empty()) {
    ModPoly g = std::move(work.back());
    work.pop_back();
    if (g.degree() <= 0) continue;
    if (g.degree() == 1) {
      roots.push_back(F.neg(monic(g).coeffs[0]));
      continue;
    }
    if (p == 2) {
      // Only reachable for tiny fields: test both elements directly.
      for (u64 v = 0; v < 2; ++v)
        if (g.eval(v) == 0) roots.push_back(v);
      continue;
    }
    for (;;) {
      ModPoly shifted(F, {next() % p, 1});
      ModPoly h = powmod(shifted, (p - 1) / 2, g) - ModPoly::constant(F, 1);
      ModPoly d = gcd(h, g);
      if (d.degree() > 0 && d.degree() < g.degree()) {
        work.push_back(exact_quotient(g, d));
        work.push_back(std::move(d));
        break;
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

u64 torsion_size_mod_p(const ModCurve& curve, unsigned pi, unsigned k) {
  auto w = to_weierstrass(curve).target;
  const PrimeField& f = w.field;
  u64 m = 1;
  for (unsigned i = 0; i < k; ++i) m *= pi;
  if (k == 0) return 1;
  ModPoly P = division_poly(w, static_cast<unsigned>(m));
  u64 count = 1;
  for (u64 x : poly_roots(P)) {
    u64 rhs = f.add(f.mul(f.add(f.sqr(x), w.c1), x), w.c2);
    count += rhs == 0 ? 1 : (f.legendre(rhs) == 1 ? 2 : 0);
  }
  return count;
}

}  // namespace ecmgal
