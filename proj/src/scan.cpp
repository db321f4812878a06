#include "ecmgal/scan.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>

namespace ecmgal {

namespace {

void check_bound(u64 bound) {
  if (bound < 5) throw std::invalid_argument("scan bound must be at least 5");
  if (bound > kMaxScanBound) throw std::invalid_argument("scan bound exceeds 2^26");
}

int thread_count(const ScanConfig& cfg) {
  return cfg.threads ? static_cast<int>(cfg.threads) : omp_get_max_threads();
}

u64 order_at(const CurveModel& curve, u64 p, u64 seed) {
  auto red = reduce_curve(curve, p);
  return red.good() ? group_order(*red.curve, seed) : 0;
}

TorsionShape shape_at(const CurveModel& curve, u64 p, u64 order, unsigned pi, unsigned k, u64 seed) {
  if (order == 0 || p == pi) return TorsionShape{0, 0, pi, 0};
  auto red = reduce_curve(curve, p);
  return torsion_shape(*red.curve, pi, k, order, seed);
}

// Every index is written by exactly one iteration, so the result does not depend on the
// schedule or the thread count.
template <class F>
void for_each_index(std::size_t n, const ScanConfig& cfg, F&& body) {
  if (cfg.policy == ExecPolicy::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 256) num_threads(thread_count(cfg))
  for (long long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

std::string key_of(const CurveModel& curve, u64 bound) { return curve_literal(curve) + "|" + std::to_string(bound); }

}  // namespace

std::size_t OrderScan::excluded() const { return static_cast<std::size_t>(std::count(orders.begin(), orders.end(), 0)); }

std::vector<u64> scan_primes(u64 bound) {
  check_bound(bound);
  auto s = sieve_primes(bound);
  std::vector<u64> out;
  out.reserve(s.primes.size());
  for (auto p : s.primes)
    if (p > 3) out.push_back(p);
  return out;
}

OrderScan scan_orders(const CurveModel& curve, u64 bound, const ScanConfig& cfg) {
  OrderScan out;
  out.bound = bound;
  out.primes = scan_primes(bound);
  out.orders.assign(out.primes.size(), 0);
  for_each_index(out.primes.size(), cfg, [&](std::size_t i) { out.orders[i] = order_at(curve, out.primes[i], cfg.seed); });
  return out;
}

std::vector<TorsionShape> scan_shapes(const CurveModel& curve, const OrderScan& orders, unsigned pi, unsigned k,
                                      const ScanConfig& cfg) {
  std::vector<TorsionShape> out(orders.primes.size());
  for_each_index(out.size(), cfg, [&](std::size_t i) {
    out[i] = shape_at(curve, orders.primes[i], orders.orders[i], pi, k, cfg.seed);
  });
  return out;
}

const OrderScan& ScanCache::orders(const CurveModel& curve, u64 bound) {
  const std::string key = key_of(curve, bound);
  std::lock_guard lock(mu_);
  auto& slot = orders_[key];
  if (!slot) slot = std::make_unique<OrderScan>(scan_orders(curve, bound, cfg_));
  return *slot;
}

const std::vector<TorsionShape>& ScanCache::shapes(const CurveModel& curve, u64 bound, unsigned pi, unsigned k) {
  const OrderScan& ord = orders(curve, bound);
  const std::string key = key_of(curve, bound) + "|" + std::to_string(pi) + "^" + std::to_string(k);
  std::lock_guard lock(mu_);
  auto& slot = shapes_[key];
  if (!slot) slot = std::make_unique<std::vector<TorsionShape>>(scan_shapes(curve, ord, pi, k, cfg_));
  return *slot;
}

}  // namespace ecmgal
