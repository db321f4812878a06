#include "ecmgal/catalog.hpp"

#include <array>

#include "ecmgal/literals.hpp"

namespace ecmgal {

namespace {

using Gens = std::vector<std::array<int, 4>>;

constexpr const char* kFit =
    "best chi-square fit among det-surjective subgroups of the torsion-forced ambient group, p < 2^18";

ImageRecord make_record(std::string key, u32 pi, unsigned n, bool heuristic, std::string provenance,
                        const Gens& gens) {
  u32 m = 1;
  for (unsigned i = 0; i < n; ++i) m *= pi;
  std::vector<Mat2> g;
  for (const auto& x : gens) g.push_back(Mat2::make(x[0], x[1], x[2], x[3], m));
  ImageRecord r{std::move(key), pi, n, heuristic, std::move(provenance), subgroup_closure(m, g)};
  return r;
}

ImageRecord full_record(std::string key, u32 pi, std::string provenance) {
  // The swap, [0,1;1,1] and the diagonal units generate GL2(F_pi).
  Gens g{{0, 1, 1, 0}, {0, 1, 1, 1}};
  for (u32 a = 2; a < pi; ++a) g.push_back({static_cast<int>(a), 0, 0, 1});
  return make_record(std::move(key), pi, 1, false, std::move(provenance), g);
}

std::vector<ImageRecord> build() {
  std::vector<ImageRecord> out;
  const std::string gl = "surjective mod pi (degree of Q(E[pi]) equals #GL2)";
  for (u32 pi : {2u, 3u, 5u, 7u}) out.push_back(full_record("E1", pi, gl));

  out.push_back(make_record("E2", 3, 1, false, "CM: normalizer of the non-split Cartan, order 16",
                            {{0, 1, 1, 2}, {0, 1, 2, 0}}));
  out.push_back(make_record("E2", 5, 1, false, "CM: normalizer of the split Cartan, order 32",
                            {{0, 1, 2, 0}, {0, 1, 3, 2}}));

  out.push_back(make_record("E3", 2, 3, false,
                            "index-2 kernel of sgn(g mod 2) chi_{-8}(det g); disc = -2 * square",
                            {{0, 1, 1, 2}, {0, 1, 5, 1}}));
  out.push_back(make_record("E3", 3, 1, true, std::string("Borel, order 12; ") + kFit,
                            {{1, 0, 0, 2}, {1, 1, 0, 1}, {2, 0, 0, 1}}));
  out.push_back(make_record("E3", 5, 1, true, std::string("Borel with d = +-1, order 40; ") + kFit,
                            {{1, 0, 0, 4}, {1, 1, 0, 1}, {2, 0, 0, 1}}));

  const std::string suy = std::string(family_name(FamilyTag::Suyama));
  const std::string suy11 = std::string(family_name(FamilyTag::Suyama11));
  const std::string suy94 = std::string(family_name(FamilyTag::Suyama94));
  out.push_back(make_record(suy, 2, 2, true, std::string("order 16 mod 4; ") + kFit,
                            {{1, 0, 0, 3}, {1, 1, 0, 1}, {3, 0, 0, 1}}));
  out.push_back(make_record(suy11, 2, 2, true, std::string("order 8 mod 4; ") + kFit,
                            {{1, 1, 0, 3}, {3, 0, 0, 1}}));
  out.push_back(make_record(suy94, 2, 3, true, std::string("order 128 mod 8; ") + kFit,
                            {{1, 0, 0, 3}, {1, 0, 0, 5}, {1, 1, 0, 1}, {3, 0, 4, 1}}));
  for (const auto& k : {suy, suy11, suy94})
    out.push_back(make_record(k, 3, 1, false, "rational 3-torsion point: Borel fixing it, order 6",
                              {{1, 0, 0, 2}, {1, 1, 0, 1}}));

  const std::string fit8 = std::string("mod 8; ") + kFit;
  out.push_back(make_record(std::string(family_name(FamilyTag::Ed24Generic)), 2, 3, true, "order 32 " + fit8,
                            {{1, 0, 0, 5}, {1, 0, 4, 1}, {1, 2, 0, 3}, {1, 4, 0, 1}, {5, 0, 0, 1}}));
  out.push_back(make_record(std::string(family_name(FamilyTag::Ed24GMinv)), 2, 3, true, "order 16 " + fit8,
                            {{1, 0, 0, 3}, {1, 0, 0, 5}, {1, 0, 4, 1}, {1, 4, 0, 1}}));
  out.push_back(make_record(std::string(family_name(FamilyTag::Ed24G2)), 2, 3, true, "order 16 " + fit8,
                            {{1, 0, 0, 5}, {1, 0, 4, 1}, {1, 4, 0, 3}, {5, 0, 0, 3}}));
  out.push_back(make_record(std::string(family_name(FamilyTag::Ed24Rat)), 2, 3, true, "order 16 " + fit8,
                            {{1, 0, 0, 5}, {1, 0, 4, 1}, {1, 4, 0, 3}, {5, 0, 0, 3}}));
  out.push_back(make_record(std::string(family_name(FamilyTag::Ed24G2Half)), 2, 3, true, "order 16 " + fit8,
                            {{1, 0, 0, 7}, {1, 0, 4, 3}, {1, 4, 0, 1}, {5, 0, 0, 1}}));
  for (FamilyTag t : {FamilyTag::Ed24Generic, FamilyTag::Ed24GMinv, FamilyTag::Ed24G2, FamilyTag::Ed24Rat,
                      FamilyTag::Ed24G2Half}) {
    auto r = full_record(std::string(family_name(t)), 3, "generic mod 3 (no rational 3-torsion)");
    r.heuristic = true;
    out.push_back(std::move(r));
  }
  return out;
}

const std::vector<ImageRecord>& entries() {
  static const std::vector<ImageRecord> all = build();
  return all;
}

}  // namespace

std::vector<ImageRecord> catalog_entries() { return entries(); }

std::optional<ImageRecord> known_image(const CurveModel& curve, u32 pi, std::optional<FamilyTag> family) {
  std::string key;
  if (family) key = std::string(family_name(*family));
  else if (auto n = curve_name(curve)) key = *n;
  else return std::nullopt;
  for (const auto& r : entries())
    if (r.key == key && r.pi == pi) return r;
  return std::nullopt;
}

}  // namespace ecmgal
