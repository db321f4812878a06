#include "ecmgal/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ecmgal/catalog.hpp"
#include "ecmgal/divpoly.hpp"

namespace ecmgal {

namespace {

void check_scan_args(u64 bound, const std::optional<Condition>& cond) {
  if (bound > kMaxScanBound) throw std::invalid_argument("bound exceeds 2^26");
  if (bound < 5) throw std::invalid_argument("bound must be at least 5");
  if (cond) {
    if (cond->n == 0 || cond->a >= cond->n) throw std::invalid_argument("invalid condition: need 0 <= a < n");
    if (std::gcd(cond->a, cond->n) != 1) throw std::invalid_argument("invalid condition: gcd(a, n) != 1");
  }
}

bool passes(u64 p, const std::optional<Condition>& cond) { return !cond || p % cond->n == cond->a; }

u64 ipow(u64 b, unsigned e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

// m = pi^k with pi prime.
std::pair<unsigned, unsigned> prime_power(u32 m) {
  for (unsigned pi = 2; pi <= m; ++pi) {
    if (m % pi) continue;
    unsigned k = 0;
    u32 r = m;
    while (r % pi == 0) {
      r /= pi;
      ++k;
    }
    if (r != 1) return {0, 0};
    return {pi, k};
  }
  return {0, 0};
}

double sample_stderr(u64 n, u64 sum, u64 sumsq) {
  if (n < 2) return 0;
  const double mean = static_cast<double>(sum) / static_cast<double>(n);
  const double var = (static_cast<double>(sumsq) - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1);
  return std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
}

ComparisonRow valuation_row(ScanCache& cache, const std::string& label, const ResolvedCurve& rc, u32 pi, u64 bound,
                            std::optional<Condition> cond) {
  auto rep = valuation_scan(cache, rc.curve, pi, bound, 0, cond);
  std::optional<Rat> theory;
  bool heuristic = false;
  if (auto rec = known_image(rc.curve, pi, rc.family())) {
    if (auto table = theory_table(*rec, cond)) theory = average_valuation(*table);
    heuristic = rec->heuristic;
  }
  return make_row(label, theory, rep.mean, rep.stderr_, heuristic, rep.excluded);
}

TableReport table1(ScanCache& cache, u64 bound) {
  TableReport t{"T1", bound, {}};
  for (const char* name : {"E1", "E2"}) {
    const ResolvedCurve rc = resolve_curve(name);
    for (unsigned pi : {3u, 5u}) {
      const auto rec = known_image(rc.curve, pi);
      for (auto [i, j] : {std::pair{1u, 1u}, std::pair{0u, 1u}}) {
        auto d = density_scan(cache, rc.curve, pi, 1, i, j, bound);
        std::optional<Rat> theory;
        if (rec) theory = shape_probability(rec->image, FixShape{static_cast<u32>(ipow(pi, i)), static_cast<u32>(ipow(pi, j))});
        const std::string shape = i == 1 ? "Z/" + std::to_string(pi) + " x Z/" + std::to_string(pi) : "Z/" + std::to_string(pi);
        t.rows.push_back(make_row(std::string(name) + " E(F_p)[" + std::to_string(pi) + "] = " + shape, theory,
                                  d.estimate, d.stderr_, rec && rec->heuristic, d.excluded));
      }
    }
  }
  return t;
}

TableReport table2(ScanCache& cache, u64 bound) {
  TableReport t{"T2", bound, {}};
  for (const char* name : {"E1", "E3"}) {
    const ResolvedCurve rc = resolve_curve(name);
    for (u32 pi : {2u, 3u, 5u})
      t.rows.push_back(valuation_row(cache, std::string(name) + " vbar_" + std::to_string(pi), rc, pi, bound, std::nullopt));
  }
  return t;
}

const std::vector<std::pair<std::string, std::string>>& ed24_members() {
  static const std::vector<std::pair<std::string, std::string>> m{
      {"e generic (E_{-11^4})", "ed24:generic:e=11"},
      {"e = g^2 (E_{-9^4})", "ed24:g2:g=3"},
      {"e = (2g^2+2g+1)/(2g+1) (E_{-(5/3)^4})", "ed24:rat:g=1"},
      {"e = g^2/2 (E_{-(81/8)^4})", "ed24:g2half:g=9/2"},
      {"e = (g-1/g)/2 (E_{-(77/36)^4})", "ed24:gminv:g=9/2"},
  };
  return m;
}

TableReport table3(ScanCache& cache, u64 bound) {
  TableReport t{"T3", bound, {}};
  for (const auto& [label, spec] : ed24_members()) {
    const ResolvedCurve rc = resolve_curve(spec);
    t.rows.push_back(valuation_row(cache, label + " vbar_2", rc, 2, bound, std::nullopt));
    t.rows.push_back(valuation_row(cache, label + " vbar_2, p = 3 mod 4", rc, 2, bound, Condition{3, 4}));
    t.rows.push_back(valuation_row(cache, label + " vbar_2, p = 1 mod 4", rc, 2, bound, Condition{1, 4}));
  }
  return t;
}

TableReport table4(ScanCache& cache, u64 bound) {
  TableReport t{"T4", bound, {}};
  std::vector<std::pair<std::string, std::string>> curves{
      {"Suyama sigma=12", "suyama:12"},
      {"Suyama-11 sigma=11", "suyama:11"},
      {"Suyama-9/4 sigma=9/4", "suyama:9/4"},
      {"Z/2xZ/4 E_{-11^4}", "ed24:generic:e=11"},
      {"e=(g-1/g)/2 E_{-(77/36)^4}", "ed24:gminv:g=9/2"},
      {"e=g^2 E_{-9^4}", "ed24:g2:g=3"},
      {"e=g^2/2 E_{-(81/8)^4}", "ed24:g2half:g=9/2"},
      {"e=(2g^2+2g+1)/(2g+1) E_{-(5/3)^4}", "ed24:rat:g=1"},
  };
  for (const auto& [label, spec] : curves) {
    const ResolvedCurve rc = resolve_curve(spec);
    for (u32 pi : {2u, 3u}) t.rows.push_back(valuation_row(cache, label + " vbar_" + std::to_string(pi), rc, pi, bound, std::nullopt));
  }
  return t;
}

}  // namespace

DensityEstimate make_density(u64 hits, u64 total, u64 excluded) {
  DensityEstimate d;
  d.hits = hits;
  d.total = total;
  d.excluded = excluded;
  if (total) {
    d.estimate = static_cast<double>(hits) / static_cast<double>(total);
    d.stderr_ = std::sqrt(d.estimate * (1 - d.estimate) / static_cast<double>(total));
  }
  return d;
}

DensityEstimate density_scan(ScanCache& cache, const CurveModel& curve, unsigned pi, unsigned k, unsigned i,
                             unsigned j, u64 bound, std::optional<Condition> cond) {
  check_scan_args(bound, cond);
  if (i > j || j > k) throw std::invalid_argument("shape must satisfy i <= j <= k");
  const OrderScan& ord = cache.orders(curve, bound);
  const auto& shapes = cache.shapes(curve, bound, pi, k);
  u64 hits = 0, total = 0, excluded = 0;
  for (std::size_t t = 0; t < ord.primes.size(); ++t) {
    const u64 p = ord.primes[t];
    if (p == pi || !passes(p, cond)) continue;
    if (ord.orders[t] == 0) {
      ++excluded;
      continue;
    }
    ++total;
    if (shapes[t].i == i && shapes[t].j == j) ++hits;
  }
  return make_density(hits, total, excluded);
}

DensityEstimate divisibility_scan(ScanCache& cache, const CurveModel& curve, unsigned pi, unsigned k, u64 bound,
                                  std::optional<Condition> cond) {
  check_scan_args(bound, cond);
  const OrderScan& ord = cache.orders(curve, bound);
  const u64 d = ipow(pi, k);
  u64 hits = 0, total = 0, excluded = 0;
  for (std::size_t t = 0; t < ord.primes.size(); ++t) {
    const u64 p = ord.primes[t];
    if (p == pi || !passes(p, cond)) continue;
    if (ord.orders[t] == 0) {
      ++excluded;
      continue;
    }
    ++total;
    if (ord.orders[t] % d == 0) ++hits;
  }
  return make_density(hits, total, excluded);
}

ValuationReport valuation_scan(ScanCache& cache, const CurveModel& curve, u32 pi, u64 bound, u32 split,
                               std::optional<Condition> cond) {
  check_scan_args(bound, cond);
  if (pi < 2) throw std::invalid_argument("pi must be prime");
  const OrderScan& ord = cache.orders(curve, bound);
  ValuationReport r;
  r.label = curve_literal(curve);
  r.pi = pi;
  r.bound = bound;
  r.split = split;
  std::vector<ClassBreakdown> cls(split);
  u64 sumsq = 0;
  for (std::size_t t = 0; t < ord.primes.size(); ++t) {
    const u64 p = ord.primes[t];
    if (p == pi || !passes(p, cond)) continue;
    if (ord.orders[t] == 0) {
      ++r.excluded;
      continue;
    }
    const u64 v = valuation(ord.orders[t], pi);
    ++r.count;
    r.valuation_sum += v;
    sumsq += v * v;
    if (split) {
      auto& c = cls[p % split];
      ++c.count;
      c.valuation_sum += v;
    }
  }
  if (r.count) r.mean = static_cast<double>(r.valuation_sum) / static_cast<double>(r.count);
  r.stderr_ = sample_stderr(r.count, r.valuation_sum, sumsq);
  for (u32 a = 0; a < split; ++a) {
    auto& c = cls[a];
    if (!c.count) continue;
    c.a = a;
    c.mean = static_cast<double>(c.valuation_sum) / static_cast<double>(c.count);
    r.classes.push_back(c);
  }
  return r;
}

ImageOrderEstimate image_order_estimate(ScanCache& cache, const CurveModel& curve, u32 m, u64 bound) {
  auto [pi, k] = prime_power(m);
  const bool ok = pi != 0 && (k == 1 ? (pi == 2 || pi == 3 || pi == 5 || pi == 7) : m <= 16);
  if (!ok) throw std::invalid_argument("m must be a prime in {2,3,5,7} or a prime power <= 16");
  auto d = density_scan(cache, curve, pi, k, k, k, bound);
  if (d.hits < 30) throw std::runtime_error("insufficient hits (" + std::to_string(d.hits) + " < 30) for m = " + std::to_string(m));
  ImageOrderEstimate e;
  e.hits = d.hits;
  e.total = d.total;
  e.estimate = 1.0 / d.estimate;
  e.stderr_ = d.stderr_ / (d.estimate * d.estimate);
  return e;
}

std::optional<ProbTable> theory_table(const ImageRecord& rec, std::optional<Condition> cond) {
  if (!cond || cond->n == 1) return rec.table();
  const u32 m = rec.image.modulus;
  if (m % cond->n == 0) return prob_table_conditional(rec.image, cond->a, cond->n, true);
  auto [pi, k] = prime_power(cond->n);
  if (pi != rec.pi) return std::nullopt;
  const u32 target = std::max(m, cond->n);
  if (target > kMaxGL2Modulus) return std::nullopt;
  return prob_table_conditional(lift_image(rec.image, target), cond->a, cond->n, true);
}

ComparisonRow make_row(std::string label, std::optional<Rat> theory, double experiment, double stderr_,
                       bool heuristic, u64 excluded) {
  ComparisonRow r;
  r.label = std::move(label);
  r.theory = std::move(theory);
  r.experiment = experiment;
  r.stderr_ = stderr_;
  r.heuristic = heuristic;
  r.excluded = excluded;
  r.sigma = std::numeric_limits<double>::quiet_NaN();
  if (r.theory) {
    const double diff = std::abs(experiment - r.theory->get_d());
    if (stderr_ > 0) r.sigma = diff / stderr_;
    else if (diff == 0) r.sigma = 0;
    else r.sigma = std::numeric_limits<double>::infinity();
  }
  return r;
}

TableReport reproduce(ScanCache& cache, const std::string& table_id, u64 bound) {
  if (bound < (u64{1} << 16)) throw std::invalid_argument("reproduce needs bound >= 2^16");
  if (table_id == "T1") return table1(cache, bound);
  if (table_id == "T2") return table2(cache, bound);
  if (table_id == "T3") return table3(cache, bound);
  if (table_id == "T4") return table4(cache, bound);
  throw std::invalid_argument("unknown table id: " + table_id);
}

TableReport probe(ScanCache& cache, const ResolvedCurve& rc, unsigned pi, unsigned k, u64 bound,
                  std::optional<Condition> cond) {
  TableReport t{"probe", bound, {}};
  const auto rec = known_image(rc.curve, pi, rc.family());
  std::optional<ProbTable> table;
  if (rec) table = theory_table(*rec, cond);
  if (table && table->levels() < k) table = extend_table(*table, k);
  for (unsigned j = 0; j <= k; ++j)
    for (unsigned i = 0; i <= j; ++i) {
      auto d = density_scan(cache, rc.curve, pi, k, i, j, bound, cond);
      std::optional<Rat> theory;
      if (table) theory = table->at(k, i, j);
      t.rows.push_back(make_row(rc.label + " (" + std::to_string(i) + "," + std::to_string(j) + ")", theory,
                                d.estimate, d.stderr_, rec && rec->heuristic, d.excluded));
    }
  return t;
}

CrossCheck divpoly_crosscheck(ScanCache& cache, const CurveModel& curve, unsigned pi, unsigned k, u64 bound,
                              u64 modulus) {
  const OrderScan& ord = cache.orders(curve, bound);
  const auto& shapes = cache.shapes(curve, bound, pi, k);
  CrossCheck out;
  for (std::size_t t = 0; t < ord.primes.size(); ++t) {
    const u64 p = ord.primes[t];
    if (ord.orders[t] == 0 || p == pi) continue;
    auto red = reduce_curve(curve, p);
    if (curve_hash(*red.curve) % modulus != 0) continue;
    ++out.checked;
    const u64 expect = ipow(pi, shapes[t].i + shapes[t].j);
    if (torsion_size_mod_p(*red.curve, pi, k) != expect) {
      ++out.mismatches;
      out.failing_primes.push_back(p);
    }
  }
  return out;
}

CertificateCheck check_certificate(ScanCache& cache, const Certificate& cert, u64 bound) {
  const OrderScan& ord = cache.orders(cert.member.curve, bound);
  CertificateCheck out;
  for (const auto& c : cert.clauses) out.clauses.push_back(ClauseTally{c.kind, c.divisor, 0, 0});
  for (std::size_t t = 0; t < ord.primes.size(); ++t) {
    const u64 N = ord.orders[t];
    if (N == 0) {
      ++out.excluded;
      continue;
    }
    ++out.primes;
    const auto kinds = cert.applicable(ord.primes[t]);
    bool failed = false;
    for (auto& tally : out.clauses) {
      if (std::find(kinds.begin(), kinds.end(), tally.kind) == kinds.end()) continue;
      ++tally.applied;
      if (N % tally.divisor != 0) {
        ++tally.failures;
        failed = true;
      }
    }
    if (failed && out.failing_primes.size() < 16) out.failing_primes.push_back(ord.primes[t]);
  }
  return out;
}

}  // namespace ecmgal
