#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>

#include "ecmgal/harness.hpp"

namespace ecmgal {

namespace {

constexpr int kRestarts = 64;

// (d1, d2, det, trace) of a Frobenius element; fix shape entries are group exponents.
using Fingerprint = std::tuple<u32, u32, u32, u32>;

Fingerprint fingerprint_of(const Mat2& g) {
  const FixShape f = fix_shape(g);
  return {f.d1, f.d2, g.det(), (g.a + g.d) % g.m};
}

std::map<Fingerprint, double> census(const SubgroupImage& H) {
  std::map<Fingerprint, double> out;
  const double w = 1.0 / static_cast<double>(H.order());
  for (const auto& g : H.elements) out[fingerprint_of(g)] += w;
  return out;
}

bool covers(const std::map<Fingerprint, double>& predicted, const std::map<Fingerprint, u64>& observed) {
  for (const auto& [fp, n] : observed)
    if (!predicted.count(fp)) return false;
  return true;
}

// Pearson statistic; classes that are impossible under H but observed make it infinite.
std::pair<double, unsigned> chi_square(const std::map<Fingerprint, double>& predicted,
                                       const std::map<Fingerprint, u64>& observed, u64 total) {
  double chi = 0;
  for (const auto& [fp, q] : predicted) {
    const double e = q * static_cast<double>(total);
    auto it = observed.find(fp);
    const double o = it == observed.end() ? 0.0 : static_cast<double>(it->second);
    chi += (o - e) * (o - e) / e;
  }
  if (!covers(predicted, observed)) chi = std::numeric_limits<double>::infinity();
  return {chi, predicted.size() > 1 ? static_cast<unsigned>(predicted.size() - 1) : 1u};
}

}  // namespace

IdentifyResult identify_image(ScanCache& cache, const CurveModel& curve, u32 m, u64 bound, u64 seed) {
  unsigned pi = 0, k = 0;
  for (unsigned q = 2; q <= m; ++q)
    if (m % q == 0) {
      pi = q;
      break;
    }
  for (u32 r = m; pi && r % pi == 0; r /= pi) ++k;
  u32 check = 1;
  for (unsigned i = 0; i < k; ++i) check *= pi;
  if (m < 2 || m > 8 || check != m) throw std::invalid_argument("identify_image: m must be a prime power <= 8");

  const OrderScan& ord = cache.orders(curve, bound);
  const auto& shapes = cache.shapes(curve, bound, pi, k);
  std::map<Fingerprint, u64> observed;
  u64 total = 0;
  for (std::size_t t = 0; t < ord.primes.size(); ++t) {
    const u64 p = ord.primes[t], N = ord.orders[t];
    if (N == 0 || p == pi) continue;
    u32 d1 = 1, d2 = 1;
    for (unsigned i = 0; i < shapes[t].i; ++i) d1 *= pi;
    for (unsigned i = 0; i < shapes[t].j; ++i) d2 *= pi;
    const u32 trace = static_cast<u32>((p + 1 + static_cast<u64>(m) * (4 * isqrt(p) + 4) - N) % m);
    ++observed[{d1, d2, static_cast<u32>(p % m), trace}];
    ++total;
  }
  if (total == 0) throw std::runtime_error("identify_image: no good primes below bound");

  std::vector<Mat2> candidates;
  for (const auto& g : enumerate_group(m))
    if (observed.count(fingerprint_of(g))) candidates.push_back(g);

  IdentifyResult best;
  best.samples = total;
  best.chi2 = std::numeric_limits<double>::infinity();
  auto consider = [&](const SubgroupImage& H) {
    auto [chi, dof] = chi_square(census(H), observed, total);
    const bool better = chi < best.chi2 || (chi == best.chi2 && H.order() < best.image.order());
    if (better) {
      best.chi2 = chi;
      best.dof = dof;
      best.image = H;
    }
  };
  // Closure of every element with an observed fingerprint.
  consider(subgroup_closure(m, candidates));

  // Randomized growth: add candidates until all observed fingerprints are possible.
  std::mt19937_64 rng(seed ^ std::hash<std::string>{}(curve_literal(curve)));
  for (int r = 0; r < kRestarts; ++r) {
    std::vector<Mat2> order = candidates;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Mat2> gens;
    SubgroupImage H = subgroup_closure(m, {Mat2::identity(m)});
    for (const auto& g : order) {
      if (H.contains(g)) continue;
      gens.push_back(g);
      H = subgroup_closure(m, gens);
      if (covers(census(H), observed)) break;
    }
    consider(H);
  }
  best.threshold = best.dof + 4.0 * std::sqrt(2.0 * best.dof);
  best.resolved = best.chi2 <= best.threshold;
  return best;
}

}  // namespace ecmgal
