#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ecmgal/curves.hpp"
#include "ecmgal/structure.hpp"

namespace ecmgal {

inline constexpr u64 kDefaultBound = u64{1} << 20;
inline constexpr u64 kMaxScanBound = u64{1} << 26;

enum class ExecPolicy { Serial, Parallel };

/// Primes 5 <= p <= bound.
std::vector<u64> scan_primes(u64 bound);

/// #E(F_p) for every prime of scan_primes(bound); 0 marks bad reduction.
struct OrderScan {
  u64 bound = 0;
  std::vector<u64> primes;
  std::vector<u64> orders;

  std::size_t excluded() const;
};

struct ScanConfig {
  ExecPolicy policy = ExecPolicy::Parallel;
  unsigned threads = 0;  // 0: OpenMP default
  u64 seed = 0;
};

OrderScan scan_orders(const CurveModel& curve, u64 bound, const ScanConfig& cfg = {});

/// pi-primary torsion shape at level k for every good prime of `orders`; level 0 at bad primes and p = pi.
std::vector<TorsionShape> scan_shapes(const CurveModel& curve, const OrderScan& orders, unsigned pi, unsigned k,
                                      const ScanConfig& cfg = {});

/// Memoizes order and shape scans per (curve, bound).
class ScanCache {
 public:
  explicit ScanCache(ScanConfig cfg = {}) : cfg_(cfg) {}

  const ScanConfig& config() const { return cfg_; }
  const OrderScan& orders(const CurveModel& curve, u64 bound);
  const std::vector<TorsionShape>& shapes(const CurveModel& curve, u64 bound, unsigned pi, unsigned k);

 private:
  ScanConfig cfg_;
  std::mutex mu_;
  std::map<std::string, std::unique_ptr<OrderScan>> orders_;
  std::map<std::string, std::unique_ptr<std::vector<TorsionShape>>> shapes_;
};

}  // namespace ecmgal
