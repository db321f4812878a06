#include "ecmgal/gl2.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "ecmgal/factor.hpp"

namespace ecmgal {

namespace {

u32 modm(i64 v, u32 m) {
  i64 r = v % static_cast<i64>(m);
  return static_cast<u32>(r < 0 ? r + m : r);
}

void check_modulus(u32 m) {
  if (m < 2 || m > kMaxGL2Modulus) throw std::invalid_argument("GL2 modulus out of scope: " + std::to_string(m));
}

// (pi, n) with m = pi^n, or throws.
std::pair<u32, unsigned> prime_power(u32 m) {
  auto f = factor_u64(m);
  if (f.size() != 1) throw std::invalid_argument("modulus is not a prime power: " + std::to_string(m));
  return {static_cast<u32>(f[0].first), f[0].second};
}

u32 ipow(u32 b, unsigned e) {
  u32 r = 1;
  while (e--) r *= b;
  return r;
}

std::vector<std::vector<Rat>> empty_level(unsigned i) {
  return std::vector<std::vector<Rat>>(i + 1, std::vector<Rat>(i + 1, Rat(0)));
}

ProbTable census_table(const std::vector<Mat2>& elems, u32 pi, unsigned n, bool stable) {
  if (elems.empty()) throw std::invalid_argument("empty element set");
  ProbTable t;
  t.pi = pi;
  t.n = n;
  t.stable = stable;
  t.p.push_back(empty_level(0));
  t.p[0][0][0] = 1;
  for (unsigned i = 1; i <= n; ++i) {
    const u32 mod = ipow(pi, i);
    std::vector<std::vector<u64>> counts(i + 1, std::vector<u64>(i + 1, 0));
    for (const auto& g : elems) {
      FixShape s = fix_shape(g.reduce(mod));
      counts[valuation(s.d1, pi)][valuation(s.d2, pi)]++;
    }
    auto level = empty_level(i);
    for (unsigned l = 0; l <= i; ++l)
      for (unsigned j = l; j <= i; ++j) {
        level[l][j] = Rat(static_cast<unsigned long>(counts[l][j]), static_cast<unsigned long>(elems.size()));
        level[l][j].canonicalize();
      }
    t.p.push_back(std::move(level));
  }
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// Matrices

Mat2 Mat2::make(i64 a, i64 b, i64 c, i64 d, u32 m) { return Mat2{modm(a, m), modm(b, m), modm(c, m), modm(d, m), m}; }

u32 Mat2::det() const { return modm(static_cast<i64>(a) * d - static_cast<i64>(b) * c, m); }

bool Mat2::invertible() const { return std::gcd(det(), m) == 1; }

Mat2 Mat2::operator*(const Mat2& o) const {
  return Mat2{(a * o.a + b * o.c) % m, (a * o.b + b * o.d) % m, (c * o.a + d * o.c) % m, (c * o.b + d * o.d) % m, m};
}

Mat2 Mat2::inverse() const {
  const u32 dt = det();
  if (std::gcd(dt, m) != 1) throw std::domain_error("matrix not invertible");
  const u32 inv = static_cast<u32>(invmod(dt, m));
  return Mat2::make(static_cast<i64>(d) * inv, -static_cast<i64>(b) * inv, -static_cast<i64>(c) * inv,
                    static_cast<i64>(a) * inv, m);
}

Mat2 Mat2::reduce(u32 target) const {
  if (target == 0 || m % target != 0) throw std::invalid_argument("reduction target must divide the modulus");
  return Mat2{a % target, b % target, c % target, d % target, target};
}

Mat2 Mat2::from_index(u32 idx, u32 m) {
  Mat2 g;
  g.m = m;
  g.d = idx % m;
  idx /= m;
  g.c = idx % m;
  idx /= m;
  g.b = idx % m;
  g.a = idx / m;
  return g;
}

FixShape fix_shape(const Mat2& g) {
  const u32 m = g.m;
  // Smith normal form of an integer lift of g - Id: diag(content, det / content).
  const i64 e[4] = {modm(static_cast<i64>(g.a) - 1, m), g.b, g.c, modm(static_cast<i64>(g.d) - 1, m)};
  const i64 content = std::gcd(std::gcd(e[0], e[1]), std::gcd(e[2], e[3]));
  if (content == 0) return FixShape{m, m};
  const i64 det = e[0] * e[3] - e[1] * e[2];
  const u32 d1 = static_cast<u32>(std::gcd(content, static_cast<i64>(m)));
  const u32 d2 = static_cast<u32>(std::gcd(det / content, static_cast<i64>(m)));
  return FixShape{d1, d2};
}

u64 gl2_order(u32 m) {
  if (m < 1) throw std::invalid_argument("gl2_order: m must be positive");
  u64 total = 1;
  for (auto [pi, k] : factor_u64(m)) {
    u64 t = (pi - 1) * (pi - 1) * (pi + 1) * pi;
    for (unsigned i = 1; i < k; ++i) t *= pi * pi * pi * pi;
    total *= t;
  }
  return total;
}

std::vector<Mat2> enumerate_group(u32 m) {
  check_modulus(m);
  std::vector<Mat2> out;
  out.reserve(gl2_order(m));
  const u32 n4 = m * m * m * m;
  for (u32 idx = 0; idx < n4; ++idx) {
    Mat2 g = Mat2::from_index(idx, m);
    if (g.invertible()) out.push_back(g);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subgroups

bool SubgroupImage::contains(const Mat2& g) const {
  return std::binary_search(elements.begin(), elements.end(), g,
                            [](const Mat2& x, const Mat2& y) { return x.index() < y.index(); });
}

SubgroupImage subgroup_closure(u32 m, const std::vector<Mat2>& generators) {
  check_modulus(m);
  for (const auto& g : generators) {
    if (g.m != m) throw std::invalid_argument("generator modulus mismatch");
    if (!g.invertible()) throw std::invalid_argument("non-invertible generator");
  }
  const u32 n4 = m * m * m * m;
  std::vector<bool> seen(n4, false);
  std::vector<Mat2> queue{Mat2::identity(m)};
  seen[queue[0].index()] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Mat2 x = queue[head];
    for (const auto& s : generators) {
      Mat2 y = x * s;
      if (!seen[y.index()]) {
        seen[y.index()] = true;
        queue.push_back(y);
      }
    }
  }
  SubgroupImage G;
  G.modulus = m;
  G.generators = generators;
  for (u32 idx = 0; idx < n4; ++idx)
    if (seen[idx]) G.elements.push_back(Mat2::from_index(idx, m));
  if (gl2_order(m) % G.order() != 0) throw std::logic_error("closure order violates Lagrange");
  return G;
}

SubgroupImage full_group(u32 m) {
  SubgroupImage G;
  G.modulus = m;
  G.elements = enumerate_group(m);
  return G;
}

SubgroupImage conjugate(const SubgroupImage& G, const Mat2& h) {
  const Mat2 hi = h.inverse();
  SubgroupImage out;
  out.modulus = G.modulus;
  for (const auto& g : G.elements) out.elements.push_back(h * g * hi);
  for (const auto& g : G.generators) out.generators.push_back(h * g * hi);
  std::sort(out.elements.begin(), out.elements.end(),
            [](const Mat2& x, const Mat2& y) { return x.index() < y.index(); });
  return out;
}

Rat shape_probability(const SubgroupImage& G, const FixShape& T) {
  if (G.elements.empty()) throw std::invalid_argument("empty subgroup");
  u64 hits = 0;
  for (const auto& g : G.elements)
    if (fix_shape(g) == T) ++hits;
  Rat r(static_cast<unsigned long>(hits), static_cast<unsigned long>(G.order()));
  r.canonicalize();
  return r;
}

Rat shape_probability_conditional(const SubgroupImage& G, const FixShape& T, u32 a, u32 n) {
  if (n == 0 || G.modulus % n != 0) throw std::invalid_argument("conditioning modulus must divide m");
  if (std::gcd(a, n) != 1) throw std::invalid_argument("residue not coprime to conditioning modulus");
  u64 slice = 0, hits = 0;
  for (const auto& g : G.elements) {
    if (g.det() % n != a % n) continue;
    ++slice;
    if (fix_shape(g) == T) ++hits;
  }
  if (slice == 0) throw std::invalid_argument("empty determinant slice");
  Rat r(static_cast<unsigned long>(hits), static_cast<unsigned long>(slice));
  r.canonicalize();
  return r;
}

SubgroupImage reduce_image(const SubgroupImage& G, u32 target) {
  if (target < 2) throw std::invalid_argument("reduce_image: target level must be at least 1");
  std::vector<Mat2> gens;
  for (const auto& g : G.generators) gens.push_back(g.reduce(target));
  std::vector<Mat2> red;
  red.reserve(G.elements.size());
  for (const auto& g : G.elements) red.push_back(g.reduce(target));
  auto less = [](const Mat2& x, const Mat2& y) { return x.index() < y.index(); };
  std::sort(red.begin(), red.end(), less);
  red.erase(std::unique(red.begin(), red.end()), red.end());
  SubgroupImage out;
  out.modulus = target;
  out.elements = std::move(red);
  out.generators = std::move(gens);
  return out;
}

SubgroupImage lift_image(const SubgroupImage& G, u32 target) {
  check_modulus(target);
  const u32 m = G.modulus;
  if (target % m != 0) throw std::invalid_argument("lift_image: target must be a multiple of the modulus");
  SubgroupImage out;
  out.modulus = target;
  for (const auto& g : enumerate_group(target))
    if (G.contains(g.reduce(m))) out.elements.push_back(g);
  // Lifted generators plus the kernel of reduction; fall back to every element if they fall short.
  for (const auto& g : G.generators) out.generators.push_back(Mat2::make(g.a, g.b, g.c, g.d, target));
  for (u32 e = 0; e < 4; ++e)
    out.generators.push_back(Mat2::make(1 + (e == 0 ? m : 0), e == 1 ? m : 0, e == 2 ? m : 0, 1 + (e == 3 ? m : 0), target));
  if (subgroup_closure(target, out.generators).order() != out.order()) out.generators = out.elements;
  return out;
}

// ---------------------------------------------------------------------------
// Lifting

std::tuple<Rat, Rat, Rat> lift_constants(u32 pi) {
  if (!is_prime_u64(pi)) throw std::invalid_argument("lift_constants: pi must be prime");
  const unsigned long p4 = static_cast<unsigned long>(pi) * pi * pi * pi;
  Rat c1(1, p4);
  Rat c2(static_cast<unsigned long>((pi - 1) * (pi + 1) * (pi + 1)), p4);
  Rat c3(1, static_cast<unsigned long>(pi));
  c2.canonicalize();
  return {c1, c2, c3};
}

LiftCensus lift_census(u32 pi) {
  const u32 pi2 = pi * pi;
  check_modulus(pi2);
  LiftCensus out;
  bool first_line = true;
  for (const auto& g : enumerate_group(pi)) {
    const FixShape base = fix_shape(g);
    const bool is_id = base.d1 == pi;
    const bool line = !is_id && base.d2 == pi;
    if (!is_id && !line) continue;
    u64 line_hits = 0;
    for (u32 x = 0; x < pi2 * pi2; ++x) {
      const Mat2 X = Mat2::from_index(x, pi);
      Mat2 h{g.a + pi * X.a, g.b + pi * X.b, g.c + pi * X.c, g.d + pi * X.d, pi2};
      const FixShape s = fix_shape(h);
      if (is_id) {
        if (s.d1 == pi2) ++out.identity_full;
        else if (s.d2 == pi2) ++out.identity_partial;
        else ++out.identity_other;
      } else if (s.d2 == pi2) {
        ++line_hits;
      }
    }
    if (line) {
      ++out.line_fixers;
      out.line_lifts_min = first_line ? line_hits : std::min(out.line_lifts_min, line_hits);
      out.line_lifts_max = std::max(out.line_lifts_max, line_hits);
      first_line = false;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Probability tables

ProbTable prob_table(const SubgroupImage& G, bool assume_stable) {
  auto [pi, n] = prime_power(G.modulus);
  return census_table(G.elements, pi, n, assume_stable);
}

ProbTable prob_table_conditional(const SubgroupImage& G, u32 a, u32 nmod, bool assume_stable) {
  auto [pi, n] = prime_power(G.modulus);
  if (nmod == 0 || G.modulus % nmod != 0) throw std::invalid_argument("conditioning modulus must divide m");
  if (std::gcd(a, nmod) != 1) throw std::invalid_argument("residue not coprime to conditioning modulus");
  std::vector<Mat2> slice;
  for (const auto& g : G.elements)
    if (g.det() % nmod == a % nmod) slice.push_back(g);
  if (slice.empty()) throw std::invalid_argument("empty determinant slice");
  return census_table(slice, pi, n, assume_stable);
}

ProbTable extend_table(const ProbTable& table, unsigned kmax) {
  if (kmax < table.n) throw std::invalid_argument("extend_table: kmax below table level");
  auto [c1, c2, c3] = lift_constants(table.pi);
  ProbTable out = table;
  out.p.resize(table.n + 1);
  for (unsigned k = table.n; k < kmax; ++k) {
    const auto& cur = out.p[k];
    auto next = empty_level(k + 1);
    for (unsigned l = 0; l <= k; ++l)
      for (unsigned j = l; j <= k; ++j) {
        const Rat& v = cur[l][j];
        if (v == 0) continue;
        if (j < k) {
          next[l][j] += v;
        } else if (l < k) {
          next[l][k + 1] += v * c3;
          next[l][k] += v * (1 - c3);
        } else {
          next[k + 1][k + 1] += v * c1;
          next[k][k + 1] += v * c2;
          next[k][k] += v * (1 - c1 - c2);
        }
      }
    out.p.push_back(std::move(next));
  }
  return out;
}

namespace {

void require_stable(const ProbTable& t) {
  if (!t.stable) throw std::invalid_argument("lift hypothesis not asserted for this table");
  if (t.n < 1 || t.levels() < t.n) throw std::invalid_argument("malformed probability table");
}

Rat rpow(u32 b, unsigned e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return Rat(r);
}

Rat delta(const ProbTable& t, unsigned k) { return k % 2 == 1 ? t.at((k + 1) / 2, (k + 1) / 2, (k + 1) / 2) : Rat(0); }

}  // namespace

Rat prob_power_divides(const ProbTable& t, unsigned k) {
  require_stable(t);
  if (k == 0) return 1;
  const u32 pi = t.pi;
  const unsigned n = t.n;
  auto gamma = [&](unsigned h) -> Rat {
    Rat s = 0;
    for (unsigned l = 0; l <= h; ++l) s += rpow(pi, l) * t.at(n, l, n);
    return rpow(pi, n) * s;
  };
  auto S = [&](unsigned h) -> Rat {
    Rat s = delta(t, k);
    for (unsigned l = h; l <= k / 2; ++l) s += t.at(k - l, l, k - l);
    return rpow(pi, k) * s;
  };
  const Rat pk = rpow(pi, k);
  Rat r;
  if (k <= n) {
    r = S(0) / pk;
  } else if (k <= 2 * n) {
    r = (gamma(k - n - 1) + S(k - n)) / pk;
  } else {
    const Rat& pnn = t.at(n, n, n);
    r = (gamma(n) + pnn * rpow(pi, 2 * n - 1) - rpow(pi, 4 * n - 1) * pnn / pk) / pk;
  }
  r.canonicalize();
  return r;
}

Rat prob_power_divides_chain(const ProbTable& t, unsigned k) {
  if (k == 0) return 1;
  const ProbTable ext = t.levels() >= k ? t : extend_table(t, k);
  Rat s = delta(ext, k);
  for (unsigned l = 0; l <= k / 2; ++l) s += ext.at(k - l, l, k - l);
  s.canonicalize();
  return s;
}

Rat average_valuation(const ProbTable& t) {
  require_stable(t);
  const u32 pi = t.pi;
  const unsigned n = t.n;
  Rat v = 0;
  for (unsigned l = 1; l + 1 <= n; ++l) v += 2 * t.at(l, l, l);
  Rat s = 0;
  for (unsigned l = 0; l < n; ++l) s += t.at(n, l, n);
  v += Rat(pi, pi - 1) * s;
  for (unsigned l = 0; l + 2 <= n; ++l)
    for (unsigned i = l + 1; i < n; ++i) v += t.at(i, l, i);
  v += Rat(pi * (2 * pi + 1), (pi - 1) * (pi + 1)) * t.at(n, n, n);
  v.canonicalize();
  return v;
}

// ---------------------------------------------------------------------------
// JSON

std::string subgroup_to_json(const SubgroupImage& G) {
  nlohmann::ordered_json j;
  j["modulus"] = G.modulus;
  auto& mats = j["matrices"] = nlohmann::ordered_json::array();
  const auto& src = G.generators.empty() ? G.elements : G.generators;
  for (const auto& g : src) mats.push_back({{g.a, g.b}, {g.c, g.d}});
  return j.dump();
}

SubgroupImage subgroup_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("subgroup JSON: ") + e.what());
  }
  if (!j.contains("modulus") || !j.contains("matrices")) throw std::invalid_argument("subgroup JSON needs modulus and matrices");
  const u32 m = j["modulus"].get<u32>();
  check_modulus(m);
  std::vector<Mat2> gens;
  for (const auto& mat : j["matrices"]) {
    if (mat.size() != 2 || mat[0].size() != 2 || mat[1].size() != 2) throw std::invalid_argument("matrix must be 2x2");
    gens.push_back(Mat2::make(mat[0][0].get<i64>(), mat[0][1].get<i64>(), mat[1][0].get<i64>(), mat[1][1].get<i64>(), m));
  }
  return subgroup_closure(m, gens);
}

}  // namespace ecmgal
