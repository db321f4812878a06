#include "ecmgal/families.hpp"

#include <map>
#include <numeric>

#include "ecmgal/structure.hpp"

namespace ecmgal {

namespace {

// y^2 = x^3 + a2 x^2 + a4 x + a6 over Q, affine points only.
struct LongCurve {
  Rat a2, a4, a6;

  bool on(const AffinePoint<Rat>& P) const {
    return P.infinity || P.y * P.y == P.x * P.x * P.x + a2 * P.x * P.x + a4 * P.x + a6;
  }

  AffinePoint<Rat> add(const AffinePoint<Rat>& P, const AffinePoint<Rat>& Q) const {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    Rat lambda;
    if (P.x == Q.x) {
      if (P.y + Q.y == 0) return AffinePoint<Rat>{};
      lambda = (3 * P.x * P.x + 2 * a2 * P.x + a4) / (2 * P.y);
    } else {
      lambda = (Q.y - P.y) / (Q.x - P.x);
    }
    Rat x3 = lambda * lambda - a2 - P.x - Q.x;
    Rat y3 = lambda * (P.x - x3) - P.y;
    return AffinePoint<Rat>::at(x3, y3);
  }

  AffinePoint<Rat> neg(AffinePoint<Rat> P) const {
    if (!P.infinity) P.y = -P.y;
    return P;
  }

  AffinePoint<Rat> mul(long n, const AffinePoint<Rat>& P) const {
    AffinePoint<Rat> base = n < 0 ? neg(P) : P;
    unsigned long k = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    AffinePoint<Rat> acc;
    while (k) {
      if (k & 1) acc = add(acc, base);
      k >>= 1;
      if (k) base = add(base, base);
    }
    return acc;
  }
};

bool same_point(const AffinePoint<Rat>& P, const AffinePoint<Rat>& Q) {
  if (P.infinity || Q.infinity) return P.infinity == Q.infinity;
  return P.x == Q.x && P.y == Q.y;
}

bool in_set(const AffinePoint<Rat>& R, const std::vector<AffinePoint<Rat>>& set) {
  for (const auto& S : set)
    if (same_point(R, S)) return true;
  return false;
}

Rat montgomery_rhs(const Rat& A, const Rat& x) { return x * x * x + A * x * x + x; }

int chi(const Rat& q, u64 p) {
  auto r = rat_mod(q, p);
  if (!r) throw std::invalid_argument("value not p-integral");
  return PrimeField(p).legendre(*r);
}

u64 lcm_u64(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

std::map<std::string, std::string> parse_kv(std::string_view text) {
  std::map<std::string, std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (!item.empty()) {
      auto eq = item.find('=');
      if (eq == std::string_view::npos) throw std::invalid_argument("expected key=value in family spec: " + std::string(item));
      out[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

long parse_long(const std::string& s) {
  Rat q = parse_rat(s);
  if (q.get_den() != 1 || !q.get_num().fits_slong_p()) throw std::invalid_argument("expected an integer: " + s);
  return q.get_num().get_si();
}

bool parse_bit(const std::string& s) {
  if (s == "0") return false;
  if (s == "1") return true;
  throw std::invalid_argument("expected 0 or 1: " + s);
}

const std::string& need(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw std::invalid_argument("family spec missing key " + key);
  return it->second;
}

}  // namespace

std::string_view family_name(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::Suyama: return "SUYAMA";
    case FamilyTag::Suyama11: return "SUYAMA11";
    case FamilyTag::Suyama94: return "SUYAMA94";
    case FamilyTag::Ed24Generic: return "ED24_GENERIC";
    case FamilyTag::Ed24G2: return "ED24_G2";
    case FamilyTag::Ed24Rat: return "ED24_RAT";
    case FamilyTag::Ed24G2Half: return "ED24_G2HALF";
    case FamilyTag::Ed24GMinv: return "ED24_GMINV";
    case FamilyTag::Montgomery: return "MONTGOMERY";
    case FamilyTag::TwistedEdwards: return "TWISTED_EDWARDS";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Suyama

SuyamaCurve suyama(const Rat& sigma) {
  for (const Rat& bad : {Rat(0), Rat(1), Rat(-1), Rat(3), Rat(-3), Rat(5), Rat(-5), Rat(5, 3), Rat(-5, 3)})
    if (sigma == bad) throw std::invalid_argument("excluded sigma " + rat_to_string(sigma));
  const Rat u = sigma * sigma - 5;
  const Rat v = 4 * sigma;
  if (u == 0 || v == 0) throw std::invalid_argument("degenerate sigma");
  SuyamaCurve s;
  s.sigma = sigma;
  s.x3 = u / v;
  s.x_inf = s.x3 * s.x3 * s.x3;
  const Rat vu = v - u;
  const Rat A = vu * vu * vu * (3 * u + v) / (4 * u * u * u * v) - 2;
  const Rat B = montgomery_rhs(A, s.x_inf);
  if (B == 0) throw std::invalid_argument("degenerate sigma (B = 0)");
  s.y_inf = 1;
  s.curve = make_montgomery(A, B);
  // Self-checks against the defining system.
  const Rat& x = s.x3;
  if (3 * x * x * x * x + 4 * A * x * x * x + 6 * x * x - 1 != 0) throw std::logic_error("suyama: x3 is not 3-torsion");
  if (!is_rational_square(montgomery_rhs(A, x) / B)) throw std::logic_error("suyama: 3-torsion point not rational");
  if (B * s.y_inf * s.y_inf != montgomery_rhs(A, s.x_inf)) throw std::logic_error("suyama: base point off curve");
  return s;
}

bool satisfies_eq11(const Rat& A, const Rat& B) {
  Rat q = -(A + 2) / B;
  return q != 0 && is_rational_square(q);
}

bool satisfies_eq94(const Rat& /*A*/, const Rat& B) { return B != 0 && is_rational_square(B); }

Rat suyama11_sigma(long n, bool e1, bool e2) {
  const LongCurve E{-1, -120, 432};
  const auto Pinf = AffinePoint<Rat>::at(-6, 30), P2 = AffinePoint<Rat>::at(-12, 0), Q2 = AffinePoint<Rat>::at(4, 0);
  AffinePoint<Rat> R = E.mul(n, Pinf);
  if (e1) R = E.add(R, P2);
  if (e2) R = E.add(R, Q2);
  const std::vector<AffinePoint<Rat>> excluded{AffinePoint<Rat>{}, Pinf, E.neg(Pinf), P2, Q2, E.add(P2, Q2),
                                               E.add(Q2, Pinf), E.add(Q2, E.neg(Pinf))};
  if (in_set(R, excluded)) throw std::invalid_argument("suyama11: excluded point");
  if (R.x == 24) throw std::invalid_argument("suyama11: u = 24");
  Rat sigma = Rat(120) / (R.x - 24) + 5;
  auto s = suyama(sigma);
  if (!satisfies_eq11(s.curve.c1, s.curve.c2)) throw std::logic_error("suyama11: sigma fails A+2 = -Bc^2");
  return sigma;
}

Rat suyama94_sigma(long n, bool e1) {
  const LongCurve E{0, -5, 0};
  const auto Pinf = AffinePoint<Rat>::at(-1, 2), P2 = AffinePoint<Rat>::at(0, 0);
  AffinePoint<Rat> R = E.mul(n, Pinf);
  if (e1) R = E.add(R, P2);
  const std::vector<AffinePoint<Rat>> excluded{AffinePoint<Rat>{}, Pinf, E.neg(Pinf), P2, E.add(P2, Pinf),
                                               E.add(P2, E.neg(Pinf))};
  if (in_set(R, excluded)) throw std::invalid_argument("suyama94: excluded point");
  Rat sigma = R.x;
  auto s = suyama(sigma);
  if (!satisfies_eq94(s.curve.c1, s.curve.c2)) throw std::logic_error("suyama94: sigma fails B = c^2");
  return sigma;
}

// ---------------------------------------------------------------------------
// Twisted Edwards curves with d = -e^4

Rat edwards_e(FamilyTag tag, const Rat& param) {
  const Rat& g = param;
  Rat e;
  switch (tag) {
    case FamilyTag::Ed24Generic:
      e = param;
      break;
    case FamilyTag::Ed24G2:
      if (g == 0) throw std::invalid_argument("degenerate g");
      e = g * g;
      break;
    case FamilyTag::Ed24Rat:
      if (2 * g + 1 == 0) throw std::invalid_argument("degenerate g (2g+1 = 0)");
      e = (2 * g * g + 2 * g + 1) / (2 * g + 1);
      break;
    case FamilyTag::Ed24G2Half:
      if (g == 0) throw std::invalid_argument("degenerate g");
      e = g * g / 2;
      break;
    case FamilyTag::Ed24GMinv:
      if (g == 0 || g == 1 || g == -1) throw std::invalid_argument("degenerate g");
      e = (g - 1 / g) / 2;
      break;
    default:
      throw std::invalid_argument("not a d = -e^4 subfamily tag");
  }
  if (e == 0 || e == 1 || e == -1) throw std::invalid_argument("degenerate e " + rat_to_string(e));
  return e;
}

CurveModel edwards_family(FamilyTag tag, const Rat& param) {
  Rat e = edwards_e(tag, param);
  return make_edwards(-1, -rat_pow(e, 4));
}

Z2Z4Param z2z4_param(const Rat& t) {
  if (t == 0 || t == 1 || t == -1) throw std::invalid_argument("degenerate t");
  Z2Z4Param out;
  out.e = 3 * (t * t - 1) / (8 * t);
  if (out.e == 0 || out.e == 1 || out.e == -1) throw std::invalid_argument("degenerate e from t");
  out.d = -rat_pow(out.e, 4);
  out.x_inf = 1 / (4 * out.e * out.e * out.e + 3 * out.e);
  const Rat t4 = rat_pow(t, 4);
  out.y_inf = (9 * t4 - 2 * t * t + 9) / (9 * t4 - 9);
  const Rat x2 = out.x_inf * out.x_inf, y2 = out.y_inf * out.y_inf;
  if (-x2 + y2 != 1 + out.d * x2 * y2) throw std::logic_error("z2z4_param: point off curve");
  if (out.x_inf == 1 / out.e || out.x_inf == -1 / out.e) throw std::logic_error("z2z4_param: torsion point");
  return out;
}

Rat e_square_generator(unsigned k) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  const LongCurve E{0, -36, 0};
  AffinePoint<Rat> R = E.mul(static_cast<long>(k), AffinePoint<Rat>::at(-3, 9));
  if (R.infinity || R.y == 0) throw std::invalid_argument("degenerate point");
  if (R.x == 6) throw std::invalid_argument("degenerate point (x = 6)");
  const Rat t = (R.x + 6) / (R.x - 6);
  if (t == 0 || t == 1 || t == -1) throw std::invalid_argument("degenerate t");
  const Rat e = 3 * (t * t - 1) / (8 * t);
  if (e == 0 || e == 1 || e == -1) throw std::invalid_argument("degenerate e " + rat_to_string(e));
  auto g = rat_sqrt(e);
  if (!g) throw std::logic_error("e_square_generator: e is not a square");
  return *g;
}

EdwardsPoint<u64> edwards_eight_torsion(const Rat& g, u64 p, int t, int w, int sx, int sy) {
  auto sign_ok = [](int s) { return s == 1 || s == -1; };
  if (!sign_ok(t) || !sign_ok(w) || !sign_ok(sx) || !sign_ok(sy)) throw std::invalid_argument("signs must be +1 or -1");
  const CurveModel model = edwards_family(FamilyTag::Ed24GMinv, g);
  auto red = reduce_curve(model, p);
  if (!red.good()) throw std::invalid_argument("bad reduction: " + red.reason);
  const PrimeField f(p);
  const u64 gm = *rat_mod(g, p);
  if (gm == 0) throw std::invalid_argument("g vanishes mod p");
  const u64 one = 1;
  const u64 tt = t == 1 ? one : f.neg(one);
  const u64 ww = w == 1 ? one : f.neg(one);
  const u64 cond = f.mul(tt, f.mul(gm, f.mul(f.sub(gm, one), f.add(gm, one))));
  if (f.legendre(cond) != 1) throw std::invalid_argument("t g (g-1)(g+1) is not a quadratic residue mod p");
  const u64 gw = w == 1 ? gm : f.inv(gm);
  const u64 g2w = w == 1 ? gm : f.pow(gm, 3);  // g^(2-w)
  const u64 tw = f.mul(tt, ww);
  const u64 gm_minus = f.sub(gm, tw), gm_plus = f.add(gm, tw);
  const u64 den = f.mul(f.mul(gm_minus, f.sqr(gm_minus)), gm_plus);
  if (den == 0) throw std::invalid_argument("degenerate denominator mod p");
  const u64 y2 = f.div(f.mul(f.mul(4, tt), g2w), den);
  auto y = f.sqrt(y2);
  if (!y) throw std::logic_error("edwards_eight_torsion: y^2 is not a residue");
  u64 yy = sy == 1 ? *y : f.neg(*y);
  u64 xx = f.mul(gw, yy);
  if (sx == -1) xx = f.neg(xx);
  return EdwardsPoint<u64>{xx, 1, yy, 1};
}

// ---------------------------------------------------------------------------
// Spec parsing

FamilyMember member_from_curve(const CurveModel& curve) {
  FamilyMember m;
  m.curve = curve;
  m.label = curve_literal(curve);
  if (curve.kind == CurveKind::Montgomery) m.tag = FamilyTag::Montgomery;
  else if (curve.kind == CurveKind::TwistedEdwards) m.tag = FamilyTag::TwistedEdwards;
  else throw std::invalid_argument("unrecognized family: short Weierstrass curve");
  return m;
}

namespace {

FamilyMember suyama_member(const Rat& sigma, std::string label) {
  FamilyMember m;
  auto s = suyama(sigma);
  m.curve = s.curve;
  m.sigma = sigma;
  m.label = std::move(label);
  m.tag = satisfies_eq11(s.curve.c1, s.curve.c2)   ? FamilyTag::Suyama11
          : satisfies_eq94(s.curve.c1, s.curve.c2) ? FamilyTag::Suyama94
                                                   : FamilyTag::Suyama;
  return m;
}

FamilyMember ed24_member(FamilyTag tag, const Rat& param, std::string label) {
  FamilyMember m;
  m.tag = tag;
  m.e = edwards_e(tag, param);
  if (tag != FamilyTag::Ed24Generic) m.g = param;
  m.curve = edwards_family(tag, param);
  m.label = std::move(label);
  return m;
}

}  // namespace

FamilyMember parse_family_spec(std::string_view spec) {
  const std::string label(spec);
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("family spec needs a family prefix: " + label);
  const std::string_view head = spec.substr(0, colon), rest = spec.substr(colon + 1);
  if (head == "suyama") return suyama_member(parse_rat(rest), label);
  if (head == "suyama11") {
    auto kv = parse_kv(rest);
    bool e1 = kv.count("e1") ? parse_bit(kv["e1"]) : false;
    bool e2 = kv.count("e2") ? parse_bit(kv["e2"]) : false;
    return suyama_member(suyama11_sigma(parse_long(need(kv, "n")), e1, e2), label);
  }
  if (head == "suyama94") {
    auto kv = parse_kv(rest);
    bool e1 = kv.count("e1") ? parse_bit(kv["e1"]) : false;
    return suyama_member(suyama94_sigma(parse_long(need(kv, "n")), e1), label);
  }
  if (head == "ed24") {
    auto c2 = rest.find(':');
    if (c2 == std::string_view::npos) throw std::invalid_argument("ed24 spec needs a subfamily: " + label);
    const std::string_view sub = rest.substr(0, c2);
    auto kv = parse_kv(rest.substr(c2 + 1));
    if (sub == "generic") return ed24_member(FamilyTag::Ed24Generic, parse_rat(need(kv, "e")), label);
    if (sub == "g2") return ed24_member(FamilyTag::Ed24G2, parse_rat(need(kv, "g")), label);
    if (sub == "rat") return ed24_member(FamilyTag::Ed24Rat, parse_rat(need(kv, "g")), label);
    if (sub == "g2half") return ed24_member(FamilyTag::Ed24G2Half, parse_rat(need(kv, "g")), label);
    if (sub == "gminv") return ed24_member(FamilyTag::Ed24GMinv, parse_rat(need(kv, "g")), label);
    if (sub == "param") {
      auto z = z2z4_param(parse_rat(need(kv, "t")));
      return ed24_member(FamilyTag::Ed24Generic, z.e, label);
    }
    if (sub == "esq") {
      unsigned long k = static_cast<unsigned long>(parse_long(need(kv, "k")));
      return ed24_member(FamilyTag::Ed24G2, e_square_generator(static_cast<unsigned>(k)), label);
    }
    throw std::invalid_argument("unknown ed24 subfamily: " + std::string(sub));
  }
  throw std::invalid_argument("unknown family: " + std::string(head));
}

// ---------------------------------------------------------------------------
// Certificates

u64 Certificate::base_divisor() const {
  u64 d = 1;
  for (const auto& c : clauses)
    if (c.kind == ClauseKind::Always) d = lcm_u64(d, c.divisor);
  return d;
}

std::vector<ClauseKind> Certificate::applicable(u64 p) const {
  std::vector<ClauseKind> out;
  if (p <= 3 || !reduce_curve(member.curve, p).good()) return out;
  const CurveModel& c = member.curve;
  // Montgomery quantities A^2-4, (A+2)/B, B correspond to a/d, a, a-d on the Edwards side.
  Rat ad, a, amd;
  if (c.kind == CurveKind::Montgomery) {
    ad = c.c1 * c.c1 - 4;
    a = (c.c1 + 2) / c.c2;
    amd = c.c2;
  } else {
    ad = c.c1 / c.c2;
    a = c.c1;
    amd = c.c1 - c.c2;
  }
  const bool one_mod4 = p % 4 == 1;
  for (const auto& cl : clauses) {
    bool ok = false;
    switch (cl.kind) {
      case ClauseKind::Always:
        ok = true;
        break;
      case ClauseKind::Th2kCase1:
        ok = !one_mod4 && chi(ad, p) == 1;
        break;
      case ClauseKind::Th2kCase2:
        ok = one_mod4 && chi(a, p) == 1 && chi(ad, p) == 1;
        break;
      case ClauseKind::Th2kCase3:
        ok = one_mod4 && chi(ad, p) == -1 && chi(amd, p) == 1;
        break;
      case ClauseKind::GMinv32: {
        const Rat& g = *member.g;
        ok = one_mod4 && chi(g * (g - 1) * (g + 1), p) == 1;
        break;
      }
    }
    if (ok) out.push_back(cl.kind);
  }
  return out;
}

std::optional<u64> Certificate::divisor_for(u64 p) const {
  if (p <= 3 || !reduce_curve(member.curve, p).good()) return std::nullopt;
  auto kinds = applicable(p);
  u64 d = 1;
  for (const auto& cl : clauses)
    if (std::find(kinds.begin(), kinds.end(), cl.kind) != kinds.end()) d = lcm_u64(d, cl.divisor);
  return d;
}

Certificate divisibility_certificate(const FamilyMember& member, unsigned check_primes) {
  Certificate cert;
  cert.member = member;
  auto always = [&](u64 d, std::string why) { cert.clauses.push_back({ClauseKind::Always, d, std::move(why)}); };
  switch (member.tag) {
    case FamilyTag::Suyama:
    case FamilyTag::Suyama11:
    case FamilyTag::Suyama94:
      always(12, "rational 3-torsion and 4 | #E for Montgomery curves");
      break;
    case FamilyTag::Ed24GMinv:
      if (!member.g) throw std::invalid_argument("ED24_GMINV member without g");
      always(16, "d = -((g-1/g)/2)^4: 16 | #E for all good p");
      cert.clauses.push_back({ClauseKind::GMinv32, 32, "p = 1 mod 4 and g(g-1)(g+1) QR: 32 | #E"});
      break;
    case FamilyTag::Ed24Generic:
    case FamilyTag::Ed24G2:
    case FamilyTag::Ed24Rat:
    case FamilyTag::Ed24G2Half:
      always(8, "rational torsion Z/2 x Z/4");
      break;
    case FamilyTag::Montgomery:
    case FamilyTag::TwistedEdwards:
      always(4, "4 | #E for Montgomery / twisted Edwards curves");
      break;
  }
  if (member.curve.kind == CurveKind::ShortWeierstrass) throw std::invalid_argument("unrecognized family");
  cert.clauses.push_back({ClauseKind::Th2kCase1, 8, "p = 3 mod 4, a/d QR: E[4] = Z/2 x Z/4"});
  cert.clauses.push_back({ClauseKind::Th2kCase2, 8, "p = 1 mod 4, a QR, a/d QR: Z/2 x Z/4 in E[4]"});
  cert.clauses.push_back({ClauseKind::Th2kCase3, 8, "p = 1 mod 4, a/d non-QR, a-d QR: E[8] = Z/8"});

  unsigned checked = 0;
  for (u64 p = 5; checked < check_primes; p += 2) {
    if (!is_prime_u64(p)) continue;
    auto red = reduce_curve(member.curve, p);
    if (!red.good()) continue;
    const u64 N = group_order(*red.curve);
    const u64 D = *cert.divisor_for(p);
    if (N % D != 0)
      throw std::logic_error("certificate fails at p = " + std::to_string(p) + " for " + member.label);
    ++checked;
  }
  cert.verified_primes = checked;
  return cert;
}

}  // namespace ecmgal
