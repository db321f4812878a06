#include "ecmgal/curves.hpp"

#include <vector>

namespace ecmgal {

std::string_view kind_name(CurveKind k) {
  switch (k) {
    case CurveKind::ShortWeierstrass:
      return "ShortWeierstrass";
    case CurveKind::Montgomery:
      return "Montgomery";
    case CurveKind::TwistedEdwards:
      return "TwistedEdwards";
  }
  return "?";
}

namespace {

CurveModel make(CurveKind k, const Rat& c1, const Rat& c2) {
  CurveModel c{.kind = k, .field = {}, .c1 = c1, .c2 = c2};
  validate_model(c);
  return c;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Primitive integer representative of (a:b) in P^1(Q), reduced mod p.
std::pair<u64, u64> reduce_projective(const Rat& a, const Rat& b, u64 p) {
  BigInt den = lcm(a.get_den(), b.get_den());
  BigInt na = a.get_num() * (den / a.get_den());
  BigInt nb = b.get_num() * (den / b.get_den());
  BigInt g = gcd(na, nb);
  if (g != 0) {
    na /= g;
    nb /= g;
  }
  const unsigned long pu = static_cast<unsigned long>(p);
  return {mpz_fdiv_ui(na.get_mpz_t(), pu), mpz_fdiv_ui(nb.get_mpz_t(), pu)};
}

}  // namespace

CurveModel make_weierstrass(const Rat& a, const Rat& b) { return make(CurveKind::ShortWeierstrass, a, b); }
CurveModel make_montgomery(const Rat& A, const Rat& B) { return make(CurveKind::Montgomery, A, B); }
CurveModel make_edwards(const Rat& a, const Rat& d) { return make(CurveKind::TwistedEdwards, a, d); }

CurveModel parse_curve_literal(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("curve literal needs a shape prefix: " + std::string(text));
  std::string_view shape = text.substr(0, colon);
  auto coeffs = split(text.substr(colon + 1), ',');
  if (coeffs.size() != 2) throw std::invalid_argument("curve literal needs two coefficients: " + std::string(text));
  Rat c1 = parse_rat(coeffs[0]), c2 = parse_rat(coeffs[1]);
  if (shape == "w") return make_weierstrass(c1, c2);
  if (shape == "m") return make_montgomery(c1, c2);
  if (shape == "e") return make_edwards(c1, c2);
  throw std::invalid_argument("unknown curve shape: " + std::string(shape));
}

std::string curve_literal(const CurveModel& c) {
  const char* prefix = c.kind == CurveKind::ShortWeierstrass ? "w:" : c.kind == CurveKind::Montgomery ? "m:" : "e:";
  return prefix + rat_to_string(c.c1) + "," + rat_to_string(c.c2);
}

ReductionOutcome reduce_curve(const CurveModel& model, u64 p) {
  if (p <= 3) throw std::invalid_argument("reduce_curve: p must exceed 3");
  ReductionOutcome out;
  auto c1 = rat_mod(model.c1, p);
  auto c2 = rat_mod(model.c2, p);
  if (!c1 || !c2) {
    out.reason = "coefficient not p-integral";
    return out;
  }
  PrimeField f(p);
  ModCurve red{.kind = model.kind, .field = f, .c1 = *c1, .c2 = *c2};
  switch (model.kind) {
    case CurveKind::ShortWeierstrass:
      break;
    case CurveKind::Montgomery:
      if (*c2 == 0 || f.add(*c1, 2) == 0 || f.sub(*c1, 2 % p) == 0) {
        out.reason = "v_p(A-2), v_p(A+2) or v_p(B) nonzero";
        return out;
      }
      break;
    case CurveKind::TwistedEdwards:
      if (*c1 == 0 || *c2 == 0 || *c1 == *c2) {
        out.reason = "v_p(a), v_p(d) or v_p(a-d) nonzero";
        return out;
      }
      break;
  }
  if (f.is_zero(model_invariant(red))) {
    out.reason = "singular reduction";
    return out;
  }
  out.curve = red;
  return out;
}

std::optional<CurvePoint<u64>> reduce_point(const CurvePoint<Rat>& P, u64 p) {
  if (auto* e = std::get_if<EdwardsPoint<Rat>>(&P)) {
    auto [X, Z] = reduce_projective(e->X, e->Z, p);
    auto [Y, T] = reduce_projective(e->Y, e->T, p);
    return CurvePoint<u64>{EdwardsPoint<u64>{X, Z, Y, T}};
  }
  const auto& a = std::get<AffinePoint<Rat>>(P);
  if (a.infinity) return CurvePoint<u64>{AffinePoint<u64>{}};
  if (rat_valuation(a.x == 0 ? Rat(1) : a.x, p) < 0) return CurvePoint<u64>{AffinePoint<u64>{}};
  auto x = rat_mod(a.x, p);
  auto y = rat_mod(a.y, p);
  if (!x || !y) return std::nullopt;
  return CurvePoint<u64>{AffinePoint<u64>::at(*x, *y)};
}

}  // namespace ecmgal
