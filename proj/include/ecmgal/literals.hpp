#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ecmgal/curves.hpp"
#include "ecmgal/families.hpp"

namespace ecmgal {

/// E1: y^2 = x^3 + 5x + 7, E2: y^2 = x^3 - 11x + 14 (CM), E3: y^2 = x^3 - 10875x + 526250.
CurveModel named_curve(std::string_view name);
/// "E1".."E3" when the model matches a named curve.
std::optional<std::string> curve_name(const CurveModel& c);

/// A curve as the harness sees it: a model plus optional family data.
struct ResolvedCurve {
  CurveModel curve;
  std::string label;
  std::optional<FamilyMember> member;

  std::optional<FamilyTag> family() const {
    return member ? std::optional<FamilyTag>(member->tag) : std::nullopt;
  }
};

/// Accepts a named curve, a curve literal (`w:a,b`, `m:A,B`, `e:a,d`) or a family spec.
ResolvedCurve resolve_curve(std::string_view text);

}  // namespace ecmgal
