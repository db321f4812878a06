#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecmgal/catalog.hpp"
#include "ecmgal/families.hpp"
#include "ecmgal/gl2.hpp"
#include "ecmgal/literals.hpp"
#include "ecmgal/scan.hpp"

namespace ecmgal {

/// Restrict a scan to p = a (mod n); gcd(a, n) = 1.
struct Condition {
  u32 a = 0;
  u32 n = 1;
};

/// Probability table of a catalogued image, restricted to the det slice of `cond` when given.
/// The image is lifted to its full preimage when the conditioning modulus is a higher power of
/// pi, which is exact because the index is stable from the record's level. nullopt if the
/// conditioning modulus is not a power of pi or needs a level beyond the enumeration limit.
std::optional<ProbTable> theory_table(const ImageRecord& rec, std::optional<Condition> cond);

struct DensityEstimate {
  u64 hits = 0;
  u64 total = 0;
  u64 excluded = 0;  // bad-reduction primes that passed the congruence filter
  double estimate = 0;
  double stderr_ = 0;  // sqrt(q (1 - q) / total)
};

DensityEstimate make_density(u64 hits, u64 total, u64 excluded = 0);

/// Fraction of good primes p <= bound with E(F_p)[pi^k] = Z/pi^i x Z/pi^j, T = (i, j).
DensityEstimate density_scan(ScanCache& cache, const CurveModel& curve, unsigned pi, unsigned k, unsigned i,
                             unsigned j, u64 bound, std::optional<Condition> cond = std::nullopt);

/// Fraction of good primes with pi^k | #E(F_p).
DensityEstimate divisibility_scan(ScanCache& cache, const CurveModel& curve, unsigned pi, unsigned k, u64 bound,
                                  std::optional<Condition> cond = std::nullopt);

struct ClassBreakdown {
  u32 a = 0;
  u64 count = 0;
  u64 valuation_sum = 0;
  double mean = 0;
};

struct ValuationReport {
  std::string label;
  u32 pi = 2;
  u64 bound = 0;
  u64 count = 0;
  u64 excluded = 0;
  u64 valuation_sum = 0;
  double mean = 0;
  double stderr_ = 0;
  std::optional<Rat> theory;
  u32 split = 0;  // 0: no breakdown
  std::vector<ClassBreakdown> classes;
};

/// Mean of v_pi(#E(F_p)) over good p <= bound, optionally broken down by p mod split.
ValuationReport valuation_scan(ScanCache& cache, const CurveModel& curve, u32 pi, u64 bound, u32 split = 0,
                               std::optional<Condition> cond = std::nullopt);

struct ImageOrderEstimate {
  double estimate = 0;
  double stderr_ = 0;
  u64 hits = 0;
  u64 total = 0;
};

/// 1 / Prob(E[m] inside E(F_p)): m a prime in {2,3,5,7} or a prime power <= 16.
ImageOrderEstimate image_order_estimate(ScanCache& cache, const CurveModel& curve, u32 m, u64 bound);

struct IdentifyResult {
  bool resolved = false;
  SubgroupImage image;
  double chi2 = 0;
  unsigned dof = 0;
  double threshold = 0;
  u64 samples = 0;
  bool heuristic = true;
};

/// Candidate image in GL2(Z/mZ), m a prime power <= 8, matched to Frobenius fingerprints.
IdentifyResult identify_image(ScanCache& cache, const CurveModel& curve, u32 m, u64 bound, u64 seed = 0);

struct ComparisonRow {
  std::string label;
  std::optional<Rat> theory;
  double experiment = 0;
  double stderr_ = 0;
  double sigma = 0;  // |experiment - theory| / stderr; NaN without theory, inf when stderr is 0
  bool heuristic = false;
  u64 excluded = 0;
};

ComparisonRow make_row(std::string label, std::optional<Rat> theory, double experiment, double stderr_,
                       bool heuristic, u64 excluded);

struct TableReport {
  std::string table;
  u64 bound = 0;
  std::vector<ComparisonRow> rows;
};

/// Theory against experiment for T1, T2, T3 or T4.
TableReport reproduce(ScanCache& cache, const std::string& table_id, u64 bound);

/// Density report: every shape (i, j) at level k, theory attached when the image is catalogued.
TableReport probe(ScanCache& cache, const ResolvedCurve& curve, unsigned pi, unsigned k, u64 bound,
                  std::optional<Condition> cond = std::nullopt);

struct CrossCheck {
  u64 checked = 0;
  u64 mismatches = 0;
  std::vector<u64> failing_primes;
};

/// Compares #E(F_p)[pi^k] from torsion_shape with division-polynomial root counting on the
/// primes whose hash falls in a 1-in-`modulus` bucket.
CrossCheck divpoly_crosscheck(ScanCache& cache, const CurveModel& curve, unsigned pi, unsigned k, u64 bound,
                              u64 modulus = 100);

struct ClauseTally {
  ClauseKind kind = ClauseKind::Always;
  u64 divisor = 1;
  u64 applied = 0;
  u64 failures = 0;
};

struct CertificateCheck {
  u64 primes = 0;  // good primes examined
  u64 excluded = 0;
  std::vector<ClauseTally> clauses;
  std::vector<u64> failing_primes;  // first few only

  bool ok() const { return failing_primes.empty(); }
};

/// Checks every clause of `cert` against #E(F_p) for all good p <= bound.
CertificateCheck check_certificate(ScanCache& cache, const Certificate& cert, u64 bound);

}  // namespace ecmgal
