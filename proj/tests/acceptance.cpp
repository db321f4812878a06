// One [PASS]/[FAIL] line per acceptance criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ecmgal/catalog.hpp"
#include "ecmgal/families.hpp"
#include "ecmgal/gl2.hpp"
#include "ecmgal/harness.hpp"
#include "ecmgal/literals.hpp"
#include "ecmgal/structure.hpp"

using namespace ecmgal;

namespace {

constexpr u64 kBound = u64{1} << 20;

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Records a failed sub-check without stopping the criterion.
struct Checker {
  Outcome out;
  std::ostringstream notes;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      out.ok = false;
      notes << " | failed: " << what;
    }
  }
  Outcome finish(const std::string& summary) {
    out.detail = summary + notes.str();
    return out;
  }
};

Rat q(long n, long d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

ScanCache& cache() {
  static ScanCache c;
  return c;
}

SubgroupImage catalog_image(const char* curve, u32 pi) { return known_image(named_curve(curve), pi)->image; }

Outcome exact_theory() {
  Checker c;
  c.expect(average_valuation(prob_table(full_group(2), true)) == q(14, 9), "vbar_2 full = 14/9");
  c.expect(average_valuation(prob_table(full_group(3), true)) == q(87, 128), "vbar_3 full = 87/128");
  c.expect(average_valuation(prob_table(full_group(5), true)) == q(695, 2304), "vbar_5 full = 695/2304");
  const SubgroupImage G3 = full_group(3), G5 = full_group(5);
  c.expect(shape_probability(G3, {3, 3}) == q(1, 48), "GL2(3) full 3-torsion 1/48");
  c.expect(shape_probability(G3, {1, 3}) == q(20, 48), "GL2(3) cyclic 20/48");
  c.expect(shape_probability(G5, {5, 5}) == q(1, 480), "GL2(5) full 5-torsion 1/480");
  c.expect(shape_probability(G5, {1, 5}) == q(114, 480), "GL2(5) cyclic 114/480");
  const SubgroupImage H3 = catalog_image("E2", 3), H5 = catalog_image("E2", 5);
  c.expect(H3.order() == 16 && H5.order() == 32, "E2 image orders 16 and 32");
  c.expect(shape_probability(H3, {3, 3}) == q(1, 16), "E2 full 3-torsion 1/16");
  c.expect(shape_probability(H3, {1, 3}) == q(4, 16), "E2 cyclic 3 4/16");
  c.expect(shape_probability(H5, {5, 5}) == q(1, 32), "E2 full 5-torsion 1/32");
  c.expect(shape_probability(H5, {1, 5}) == q(10, 32), "E2 cyclic 5 10/32");
  return c.finish("14/9, 87/128, 695/2304; 1/48, 20/48, 1/480, 114/480; 1/16, 4/16, 1/32, 10/32");
}

Outcome group_sizes() {
  Checker c;
  const std::size_t n3 = enumerate_group(3).size(), n5 = enumerate_group(5).size(), n4 = enumerate_group(4).size();
  c.expect(n3 == 48, "#GL2(Z/3) = 48");
  c.expect(n5 == 480, "#GL2(Z/5) = 480");
  c.expect(n4 == 96, "#GL2(Z/4) = 96");
  return c.finish("#GL2: m=3 -> " + std::to_string(n3) + ", m=5 -> " + std::to_string(n5) + ", m=4 -> " +
                  std::to_string(n4));
}

Outcome lift_brute_force() {
  Checker c;
  std::string summary;
  for (u32 pi : {2u, 3u}) {
    const LiftCensus census = lift_census(pi);
    const long p4 = static_cast<long>(pi) * pi * pi * pi;
    const Rat full = q(static_cast<long>(census.identity_full), p4);
    const Rat partial = q(static_cast<long>(census.identity_partial), p4);
    const Rat line_min = q(static_cast<long>(census.line_lifts_min), p4);
    const Rat line_max = q(static_cast<long>(census.line_lifts_max), p4);
    const auto [c1, c2, c3] = lift_constants(pi);
    const std::string tag = "pi=" + std::to_string(pi);
    c.expect(full == c1, tag + " identity lifts fixing everything");
    c.expect(partial == c2, tag + " identity lifts fixing a point of order pi^2");
    c.expect(line_min == c3 && line_max == c3, tag + " line-fixer lifts");
    c.expect(c1 == q(1, p4) && c2 == q(static_cast<long>((pi - 1) * (pi + 1) * (pi + 1)), p4) && c3 == q(1, pi),
             tag + " constants formula");
    summary += (summary.empty() ? "" : "; ") + tag + ": (" + full.get_str() + ", " + partial.get_str() + ", " +
               line_min.get_str() + ")";
  }
  return c.finish(summary);
}

Outcome closed_form_vs_chain() {
  Checker c;
  std::vector<ProbTable> tables;
  for (u32 m : {2u, 4u, 8u, 3u, 9u, 5u}) tables.push_back(prob_table(full_group(m), true));
  std::mt19937_64 rng(2024);
  const std::vector<u32> moduli = {4, 8, 9, 5};
  std::vector<std::vector<Mat2>> groups;
  for (u32 m : moduli) groups.push_back(enumerate_group(m));
  for (int t = 0; t < 20; ++t) {
    const std::size_t which = t % moduli.size();
    const auto& all = groups[which];
    std::vector<Mat2> gens;
    const int ngens = 1 + static_cast<int>(rng() % 2);
    for (int g = 0; g < ngens; ++g) gens.push_back(all[rng() % all.size()]);
    tables.push_back(prob_table(subgroup_closure(moduli[which], gens), true));
  }
  u64 comparisons = 0;
  for (const auto& t : tables) {
    for (unsigned k = 0; k <= 40; ++k) {
      ++comparisons;
      if (prob_power_divides(t, k) != prob_power_divides_chain(t, k)) {
        c.expect(false, "pi=" + std::to_string(t.pi) + " k=" + std::to_string(k));
        break;
      }
    }
  }
  return c.finish(std::to_string(tables.size()) + " images (6 full, 20 random), " + std::to_string(comparisons) +
                  " exact comparisons for k <= 40");
}

Outcome table1() {
  Checker c;
  const TableReport r = reproduce(cache(), "T1", kBound);
  double worst = 0;
  for (const auto& row : r.rows) {
    const bool ok = row.theory && std::isfinite(row.sigma) && row.sigma <= 4.0;
    c.expect(ok, row.label + " sigma " + fmt(row.sigma));
    if (std::isfinite(row.sigma)) worst = std::max(worst, row.sigma);
  }
  c.expect(r.rows.size() == 8, "eight rows");
  return c.finish(std::to_string(r.rows.size()) + " density rows at 2^20, max deviation " + fmt(worst) +
                  " sigma (limit 4)");
}

Outcome tolerance_rows(const TableReport& r, double tol, const std::function<bool(const ComparisonRow&)>& pick,
                       std::size_t expected_rows) {
  Checker c;
  double worst = 0;
  std::size_t used = 0;
  for (const auto& row : r.rows) {
    if (!pick(row)) continue;
    ++used;
    if (!row.theory) {
      c.expect(false, row.label + " has no theory value");
      continue;
    }
    const double diff = std::abs(row.experiment - row.theory->get_d());
    worst = std::max(worst, diff);
    c.expect(diff <= tol, row.label + " off by " + fmt(diff));
  }
  c.expect(used == expected_rows, "expected " + std::to_string(expected_rows) + " rows, got " + std::to_string(used));
  return c.finish(std::to_string(used) + " cells at 2^20, max |exp - theory| = " + fmt(worst) + " (limit " +
                  fmt(tol) + ")");
}

Outcome table2() {
  return tolerance_rows(reproduce(cache(), "T2", kBound), 0.02, [](const ComparisonRow&) { return true; }, 6);
}

Outcome table4() {
  return tolerance_rows(reproduce(cache(), "T4", kBound), 0.03, [](const ComparisonRow&) { return true; }, 16);
}

Outcome table3_split() {
  const TableReport r = reproduce(cache(), "T3", kBound);
  auto pick = [](const ComparisonRow& row) {
    const bool family = row.label.rfind("e generic", 0) == 0 || row.label.rfind("e = (g-1/g)/2", 0) == 0;
    return family && row.label.find("mod 4") != std::string::npos;
  };
  return tolerance_rows(r, 0.04, pick, 4);
}

// Structural checks for the three Montgomery 2-power torsion cases at one prime.
bool th2k_structure_holds(const ModCurve& mc, ClauseKind kind, u64 order) {
  switch (kind) {
    case ClauseKind::Th2kCase1: {
      const TorsionShape s = torsion_shape(mc, 2, 2, order);
      return s.i == 1 && s.j == 2;
    }
    case ClauseKind::Th2kCase2: {
      const TorsionShape s = torsion_shape(mc, 2, 2, order);
      return s.i >= 1 && s.j >= 2;
    }
    case ClauseKind::Th2kCase3: {
      const TorsionShape s = torsion_shape(mc, 2, 3, order);
      return s.i == 0 && s.j == 3;
    }
    default:
      return true;
  }
}

Outcome certificates() {
  Checker c;
  const u64 b16 = u64{1} << 16, b14 = u64{1} << 14;
  u64 primes_checked = 0;

  const Certificate gm = divisibility_certificate(parse_family_spec("ed24:gminv:g=9/2"));
  c.expect(gm.base_divisor() == 16, "d = -(77/36)^4 base divisor 16");
  const CertificateCheck gmc = check_certificate(cache(), gm, b16);
  c.expect(gmc.ok(), "16 | #E and 32-clause for d = -(77/36)^4 up to 2^16");
  bool saw32 = false;
  for (const auto& t : gmc.clauses)
    if (t.kind == ClauseKind::GMinv32) saw32 = t.applied > 0 && t.failures == 0;
  c.expect(saw32, "32 | #E clause applied without failure");
  primes_checked += gmc.primes;

  for (const char* spec : {"suyama:11", "suyama:9/4", "suyama:12"}) {
    const Certificate cert = divisibility_certificate(parse_family_spec(spec));
    c.expect(cert.base_divisor() == 12, std::string(spec) + " base divisor 12");
    const CertificateCheck chk = check_certificate(cache(), cert, b16);
    c.expect(chk.ok(), std::string(spec) + " 12 | #E up to 2^16");
    primes_checked += chk.primes;
  }

  std::mt19937_64 rng(99);
  u64 case_hits[3] = {0, 0, 0};
  int curves = 0;
  while (curves < 20) {
    const Rat A(static_cast<long>(rng() % 201) - 100, static_cast<long>(rng() % 9) + 1);
    const Rat B(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 9) + 1);
    if (B == 0 || A * A == 4) continue;
    Rat An = A, Bn = B;
    An.canonicalize();
    Bn.canonicalize();
    const CurveModel curve = make_montgomery(An, Bn);
    ++curves;
    const Certificate cert = divisibility_certificate(member_from_curve(curve));
    const CertificateCheck chk = check_certificate(cache(), cert, b14);
    c.expect(chk.ok(), "divisibility for " + curve_literal(curve));
    primes_checked += chk.primes;
    const OrderScan& scan = cache().orders(curve, b14);
    for (std::size_t t = 0; t < scan.primes.size(); ++t) {
      if (scan.orders[t] == 0) continue;
      const u64 p = scan.primes[t];
      const ModCurve mc = *reduce_curve(curve, p).curve;
      for (ClauseKind kind : cert.applicable(p)) {
        if (kind != ClauseKind::Th2kCase1 && kind != ClauseKind::Th2kCase2 && kind != ClauseKind::Th2kCase3) continue;
        ++case_hits[static_cast<int>(kind) - static_cast<int>(ClauseKind::Th2kCase1)];
        if (!th2k_structure_holds(mc, kind, scan.orders[t])) {
          c.expect(false, "2-power torsion shape for " + curve_literal(curve) + " at p=" + std::to_string(p));
        }
      }
    }
  }
  for (int i = 0; i < 3; ++i) c.expect(case_hits[i] > 0, "case " + std::to_string(i + 1) + " exercised");
  return c.finish(std::to_string(primes_checked) + " (curve, prime) pairs; 2-power cases exercised " +
                  std::to_string(case_hits[0]) + "/" + std::to_string(case_hits[1]) + "/" +
                  std::to_string(case_hits[2]) + " times over 20 random Montgomery curves");
}

Outcome eight_divides() {
  Checker c;
  struct Target {
    const char* spec;
    double expect;
  };
  std::string summary;
  for (const Target& t : {Target{"suyama:11", 0.75}, Target{"suyama:9/4", 0.75}, Target{"suyama:12", 0.625}}) {
    const DensityEstimate d = divisibility_scan(cache(), parse_family_spec(t.spec).curve, 2, 3, kBound);
    c.expect(std::abs(d.estimate - t.expect) <= 0.01, std::string(t.spec) + " Prob(8 | N) = " + fmt(d.estimate));
    summary += (summary.empty() ? "" : ", ") + std::string(t.spec) + " " + fmt(d.estimate);
  }
  return c.finish("Prob(8 | #E) at 2^20: " + summary + " (targets 0.75, 0.75, 0.625 +- 0.01)");
}

Outcome image_orders() {
  Checker c;
  struct Target {
    const char* curve;
    u32 m;
    double expect;
  };
  std::string summary;
  for (const Target& t : {Target{"E2", 3, 16}, Target{"E2", 5, 32}, Target{"E1", 5, 480}}) {
    const ImageOrderEstimate e = image_order_estimate(cache(), named_curve(t.curve), t.m, kBound);
    c.expect(std::abs(e.estimate - t.expect) <= 0.1 * t.expect,
             std::string(t.curve) + " m=" + std::to_string(t.m) + " -> " + fmt(e.estimate));
    summary += (summary.empty() ? "" : ", ") + std::string(t.curve) + " m=" + std::to_string(t.m) + " " +
               fmt(e.estimate);
  }
  return c.finish(summary + " (targets 16, 32, 480 +- 10%)");
}

Outcome oracles() {
  Checker c;
  std::mt19937_64 rng(4096);
  int curves = 0, mismatches = 0;
  while (curves < 1000) {
    const u64 p = 5 + rng() % ((u64{1} << 12) - 5);
    if (!is_prime_u64(p)) continue;
    PrimeField f(p);
    const ModCurve mc{.kind = CurveKind::ShortWeierstrass, .field = f, .c1 = rng() % p, .c2 = rng() % p};
    if (f.is_zero(model_invariant(mc))) continue;
    ++curves;
    if (group_order(mc, curves) != count_points_naive(mc)) ++mismatches;
  }
  c.expect(mismatches == 0, std::to_string(mismatches) + " group_order mismatches");
  u64 checked = 0;
  for (const char* name : {"E1", "E2", "E3"}) {
    for (auto [pi, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {3, 2}, {5, 1}}) {
      const CrossCheck x = divpoly_crosscheck(cache(), named_curve(name), pi, k, kBound, 100);
      checked += x.checked;
      c.expect(x.mismatches == 0, std::string(name) + " divpoly pi=" + std::to_string(pi));
    }
  }
  return c.finish("group_order = naive on 1000 curves (p < 2^12); " + std::to_string(checked) +
                  " torsion_shape vs division-polynomial checks on a 1% subsample of p <= 2^20");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const std::vector<Criterion> criteria = {
      {"C1 exact theory values", exact_theory},
      {"C2 GL2 group orders", group_sizes},
      {"C3 lift constants by exhaustive lifting", lift_brute_force},
      {"C4 closed form equals chain sum", closed_form_vs_chain},
      {"C5 T1 torsion densities within 4 sigma", table1},
      {"C6 T2 average valuations within 0.02", table2},
      {"C7 T4 family valuations within 0.03", table4},
      {"C8 T3 congruence split within 0.04", table3_split},
      {"C9 divisibility certificates", certificates},
      {"C10 Prob(8 | #E) shift", eight_divides},
      {"C11 image order estimates", image_orders},
      {"C12 oracle equivalence", oracles},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = Outcome{false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << cr.name << ": " << o.detail << " [" << fmt(secs) << " s]"
              << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
