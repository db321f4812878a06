#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecmgal/curves.hpp"
#include "ecmgal/families.hpp"
#include "ecmgal/gl2.hpp"

namespace ecmgal {

/// A curated Galois image at level pi^n, the level from which its index is taken as stable.
struct ImageRecord {
  std::string key;  // "E1", "E2", "E3" or a family name
  u32 pi = 2;
  unsigned n = 1;
  /// Inferred from Frobenius statistics rather than proven.
  bool heuristic = false;
  std::string provenance;
  SubgroupImage image;

  ProbTable table() const { return prob_table(image, true); }
};

/// Image for a named curve (compared by model) or, when `family` is given, for that family.
std::optional<ImageRecord> known_image(const CurveModel& curve, u32 pi,
                                       std::optional<FamilyTag> family = std::nullopt);

/// Every catalog entry, for listing and tests.
std::vector<ImageRecord> catalog_entries();

}  // namespace ecmgal
