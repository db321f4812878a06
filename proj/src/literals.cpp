#include "ecmgal/literals.hpp"

#include <array>

namespace ecmgal {

namespace {

struct Named {
  const char* name;
  long a, b;
};

constexpr std::array<Named, 3> kNamed{{{"E1", 5, 7}, {"E2", -11, 14}, {"E3", -10875, 526250}}};

}  // namespace

CurveModel named_curve(std::string_view name) {
  for (const auto& n : kNamed)
    if (name == n.name) return make_weierstrass(n.a, n.b);
  throw std::invalid_argument("unknown named curve: " + std::string(name));
}

std::optional<std::string> curve_name(const CurveModel& c) {
  if (c.kind != CurveKind::ShortWeierstrass) return std::nullopt;
  for (const auto& n : kNamed)
    if (c.c1 == n.a && c.c2 == n.b) return std::string(n.name);
  return std::nullopt;
}

ResolvedCurve resolve_curve(std::string_view text) {
  ResolvedCurve r;
  r.label = std::string(text);
  if (text.size() == 2 && text[0] == 'E') {
    r.curve = named_curve(text);
    return r;
  }
  auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  if (head == "w" || head == "m" || head == "e") {
    r.curve = parse_curve_literal(text);
    if (auto n = curve_name(r.curve)) r.label = *n;
    if (r.curve.kind != CurveKind::ShortWeierstrass) r.member = member_from_curve(r.curve);
    return r;
  }
  r.member = parse_family_spec(text);
  r.curve = r.member->curve;
  return r;
}

}  // namespace ecmgal
