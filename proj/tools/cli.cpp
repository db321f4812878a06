#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <cmath>
#include <ostream>
#include <sstream>

#include "ecmgal/catalog.hpp"
#include "ecmgal/families.hpp"
#include "ecmgal/harness.hpp"
#include "ecmgal/report.hpp"

namespace ecmgal::cli {

namespace {

using json = nlohmann::ordered_json;

// Raised for bad flag values found after parsing; maps to the usage exit code.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string curve;
  std::string spec;
  std::string table;
  unsigned pi = 0;
  unsigned k = 1;
  unsigned m = 0;
  u64 bound = kDefaultBound;
  std::optional<u32> mod;
  std::optional<u32> res;
  unsigned threads = 0;
  bool json = false;
  std::string format = "text";
  u64 seed = 0;
  bool identify = false;
  unsigned check_primes = 25;
};

enum class Format { Text, Json, Csv };

Format output_format(const Options& o) {
  if (o.json) return Format::Json;
  if (o.format == "json") return Format::Json;
  if (o.format == "csv") return Format::Csv;
  return Format::Text;
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

std::string text_number(double x) { return std::isfinite(x) ? format_float(x) : "-"; }

std::string render_text(const TableReport& r) {
  std::size_t w = 5;
  for (const auto& row : r.rows) w = std::max(w, row.label.size());
  std::ostringstream out;
  out << r.table << "  bound=" << r.bound << "\n";
  out << pad("label", w) << "  " << pad("theory", 12) << pad("theory_dec", 12) << pad("experiment", 12)
      << pad("stderr", 12) << pad("sigma", 10) << "flag\n";
  for (const auto& row : r.rows) {
    out << pad(row.label, w) << "  " << pad(row.theory ? rat_to_string(*row.theory) : "-", 12)
        << pad(row.theory ? format_float(row.theory->get_d()) : "-", 12) << pad(text_number(row.experiment), 12)
        << pad(text_number(row.stderr_), 12) << pad(text_number(row.sigma), 10) << (row.heuristic ? "HEURISTIC" : "")
        << "\n";
  }
  return out.str();
}

std::string render_text(const ValuationReport& r) {
  std::ostringstream out;
  out << r.label << "  pi=" << r.pi << "  bound=" << r.bound << "\n";
  out << "mean valuation " << format_float(r.mean) << " +- " << format_float(r.stderr_) << " over " << r.count
      << " primes (" << r.excluded << " excluded)\n";
  if (r.theory) out << "theory " << rat_to_string(*r.theory) << " = " << format_float(r.theory->get_d()) << "\n";
  for (const auto& c : r.classes)
    out << "  p = " << c.a << " mod " << r.split << ": " << format_float(c.mean) << " over " << c.count << "\n";
  return out.str();
}

std::string emit_json(const json& j, Format f) {
  if (f == Format::Csv) {
    std::string head, vals;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_structured()) continue;
      head += (head.empty() ? "" : ",") + it.key();
      vals += (vals.empty() ? "" : ",") + (it.value().is_string() ? it.value().get<std::string>() : it.value().dump());
    }
    return head + "\n" + vals + "\n";
  }
  if (f == Format::Json) return j.dump(2) + "\n";
  std::ostringstream out;
  for (auto it = j.begin(); it != j.end(); ++it)
    out << it.key() << ": " << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) << "\n";
  return out.str();
}

json number(double x) { return std::isfinite(x) ? json(std::stod(format_float(x))) : json(nullptr); }

std::optional<Condition> condition_of(const Options& o) {
  if (!o.res) return std::nullopt;
  if (!o.mod) throw UsageError("--res needs --mod");
  if (*o.mod == 0 || *o.res >= *o.mod) throw UsageError("--res must lie in [0, --mod)");
  if (std::gcd(*o.res, *o.mod) != 1) throw UsageError("gcd(--res, --mod) must be 1");
  return Condition{*o.res, *o.mod};
}

ResolvedCurve curve_of(const Options& o) {
  try {
    if (!o.curve.empty()) return resolve_curve(o.curve);
    if (!o.spec.empty()) return resolve_curve(o.spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  throw UsageError("--curve or --spec is required");
}

void check_bound(const Options& o) {
  if (o.bound < 5 || o.bound > kMaxScanBound) throw UsageError("--bound must lie in [5, 2^26]");
}

void check_pi(const Options& o) {
  if (o.pi < 2) throw UsageError("--pi is required");
  if (!is_prime_u64(o.pi) || o.pi > 31) throw UsageError("--pi must be a prime <= 31");
}

// m = pi^e with pi prime; prime m in {2,3,5,7}, prime powers up to 16 (8 with --identify).
void check_m(const Options& o) {
  if (o.m < 2) throw UsageError("--m is required");
  u32 pi = 2;
  while (o.m % pi) ++pi;
  u32 rest = o.m;
  while (rest % pi == 0) rest /= pi;
  const bool prime = o.m == pi;
  const bool ok = rest == 1 && (prime ? pi <= 7 : o.m <= (o.identify ? 8u : 16u));
  if (!ok || (o.identify && o.m > 8))
    throw UsageError(o.identify ? "--m must be a prime power <= 8 with --identify"
                                : "--m must be a prime in {2,3,5,7} or a prime power <= 16");
}

std::string cmd_probe(const Options& o) {
  const ResolvedCurve rc = curve_of(o);
  check_bound(o);
  check_pi(o);
  if (o.k < 1 || std::pow(double(o.pi), double(o.k)) > double(1 << 20)) throw UsageError("--k must satisfy 1 <= k and pi^k <= 2^20");
  const auto cond = condition_of(o);
  ScanCache cache(ScanConfig{ExecPolicy::Parallel, o.threads, o.seed});
  const TableReport r = probe(cache, rc, o.pi, o.k, o.bound, cond);
  const Format f = output_format(o);
  return f == Format::Text ? render_text(r) : render(r, f == Format::Json ? ExportFormat::Json : ExportFormat::Csv);
}

std::string cmd_valuation(const Options& o) {
  const ResolvedCurve rc = curve_of(o);
  check_bound(o);
  check_pi(o);
  const auto cond = condition_of(o);
  ScanCache cache(ScanConfig{ExecPolicy::Parallel, o.threads, o.seed});
  ValuationReport r = valuation_scan(cache, rc.curve, o.pi, o.bound, o.mod.value_or(0), cond);
  r.label = rc.label;
  if (auto rec = known_image(rc.curve, o.pi, rc.family())) {
    if (auto table = theory_table(*rec, cond)) r.theory = average_valuation(*table);
  }
  const Format f = output_format(o);
  return f == Format::Text ? render_text(r) : render(r, f == Format::Json ? ExportFormat::Json : ExportFormat::Csv);
}

std::string cmd_galois_order(const Options& o, int& status) {
  const ResolvedCurve rc = curve_of(o);
  check_bound(o);
  check_m(o);
  ScanCache cache(ScanConfig{ExecPolicy::Parallel, o.threads, o.seed});
  json j;
  j["curve"] = rc.label;
  j["m"] = o.m;
  j["bound"] = o.bound;
  const auto est = image_order_estimate(cache, rc.curve, o.m, o.bound);
  j["estimate"] = number(est.estimate);
  j["stderr"] = number(est.stderr_);
  j["hits"] = est.hits;
  j["total"] = est.total;
  if (o.identify) {
    const auto id = identify_image(cache, rc.curve, o.m, o.bound, o.seed);
    j["identify"] = id.resolved ? "HEURISTIC" : "UNRESOLVED";
    j["image_order"] = id.image.order();
    j["chi2"] = number(id.chi2);
    j["dof"] = id.dof;
    j["threshold"] = number(id.threshold);
    if (!id.resolved) status = kExitCompute;
  }
  return emit_json(j, output_format(o));
}

std::string cmd_family(const Options& o) {
  if (o.spec.empty()) throw UsageError("--spec is required");
  FamilyMember m;
  try {
    m = parse_family_spec(o.spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  json j;
  j["spec"] = o.spec;
  j["family"] = std::string(family_name(m.tag));
  if (m.sigma) j["sigma"] = rat_to_string(*m.sigma);
  if (m.g) j["g"] = rat_to_string(*m.g);
  if (m.e) j["e"] = rat_to_string(*m.e);
  if (m.curve.kind == CurveKind::Montgomery) {
    j["A"] = rat_to_string(m.curve.c1);
    j["B"] = rat_to_string(m.curve.c2);
  } else {
    j["a"] = rat_to_string(m.curve.c1);
    j["d"] = rat_to_string(m.curve.c2);
  }
  j["curve"] = curve_literal(m.curve);
  const auto cert = divisibility_certificate(m, o.check_primes);
  j["base_divisor"] = cert.base_divisor();
  return emit_json(j, output_format(o));
}

std::string cmd_certify(const Options& o, int& status) {
  const ResolvedCurve rc = curve_of(o);
  check_bound(o);
  if (!rc.member) throw UsageError("certify needs a Montgomery or twisted Edwards curve or a family spec");
  const auto cert = divisibility_certificate(*rc.member, o.check_primes);
  ScanCache cache(ScanConfig{ExecPolicy::Parallel, o.threads, o.seed});
  const auto chk = check_certificate(cache, cert, o.bound);
  json j;
  j["curve"] = rc.label;
  j["family"] = std::string(family_name(rc.member->tag));
  j["bound"] = o.bound;
  j["base_divisor"] = cert.base_divisor();
  j["primes"] = chk.primes;
  j["excluded_primes"] = chk.excluded;
  j["status"] = chk.ok() ? "VERIFIED" : "FAILED";
  json clauses = json::array();
  for (std::size_t i = 0; i < cert.clauses.size(); ++i) {
    json c;
    c["description"] = cert.clauses[i].description;
    c["divisor"] = cert.clauses[i].divisor;
    c["applied"] = chk.clauses[i].applied;
    c["failures"] = chk.clauses[i].failures;
    clauses.push_back(std::move(c));
  }
  j["clauses"] = clauses;
  if (!chk.ok()) {
    j["failing_primes"] = chk.failing_primes;
    status = kExitCompute;
  }
  return emit_json(j, output_format(o));
}

std::string cmd_reproduce(const Options& o) {
  check_bound(o);
  if (o.table != "T1" && o.table != "T2" && o.table != "T3" && o.table != "T4")
    throw UsageError("--table must be one of T1, T2, T3, T4");
  if (o.bound < (u64{1} << 16)) throw UsageError("reproduce needs --bound >= 65536");
  ScanCache cache(ScanConfig{ExecPolicy::Parallel, o.threads, o.seed});
  const TableReport r = reproduce(cache, o.table, o.bound);
  const Format f = output_format(o);
  return f == Format::Text ? render_text(r) : render(r, f == Format::Json ? ExportFormat::Json : ExportFormat::Csv);
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--bound", o.bound, "scan primes p <= bound (default 2^20, max 2^26)");
  sub->add_option("--threads", o.threads, "worker threads (default: hardware)");
  sub->add_option("--seed", o.seed, "seed for point sampling (default 0)");
  sub->add_flag("--json", o.json, "JSON output (same as --format json)");
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
}

void add_curve(CLI::App* sub, Options& o) {
  sub->add_option("--curve", o.curve, "E1, E2, E3, w:a,b, m:A,B, e:a,d or a family spec");
  sub->add_option("--spec", o.spec, "family spec, e.g. suyama:11, ed24:gminv:g=9/2");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ecmgal: Galois images, torsion statistics and ECM-friendly curve families"};
  app.require_subcommand(1);
  Options o;

  auto* probe_cmd = app.add_subcommand("probe", "torsion-shape densities at level pi^k");
  add_curve(probe_cmd, o);
  probe_cmd->add_option("--pi", o.pi, "prime pi")->required();
  probe_cmd->add_option("--k", o.k, "level k (default 1)");
  probe_cmd->add_option("--mod", o.mod, "condition on p = res (mod n): n");
  probe_cmd->add_option("--res", o.res, "condition on p = res (mod n): res");
  add_common(probe_cmd, o);

  auto* val_cmd = app.add_subcommand("valuation", "average pi-adic valuation of #E(F_p)");
  add_curve(val_cmd, o);
  val_cmd->add_option("--pi", o.pi, "prime pi")->required();
  val_cmd->add_option("--mod", o.mod, "break down by p mod n");
  val_cmd->add_option("--res", o.res, "restrict to p = res (mod n)");
  add_common(val_cmd, o);

  auto* gal_cmd = app.add_subcommand("galois-order", "estimate #rho_m(Gal) from full m-torsion frequency");
  add_curve(gal_cmd, o);
  gal_cmd->add_option("--m", o.m, "m: prime in {2,3,5,7} or prime power <= 16")->required();
  gal_cmd->add_flag("--identify", o.identify, "also run the heuristic image identifier (m <= 8)");
  add_common(gal_cmd, o);

  auto* fam_cmd = app.add_subcommand("family", "construct a family member");
  fam_cmd->add_option("--spec", o.spec, "family spec")->required();
  fam_cmd->add_option("--check-primes", o.check_primes, "primes used to self-check the certificate (default 25)");
  fam_cmd->add_flag("--json", o.json, "JSON output (same as --format json)");
  fam_cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));

  auto* cert_cmd = app.add_subcommand("certify", "verify a divisibility certificate for all good p <= bound");
  add_curve(cert_cmd, o);
  cert_cmd->add_option("--check-primes", o.check_primes, "primes used at construction (default 25)");
  add_common(cert_cmd, o);

  auto* rep_cmd = app.add_subcommand("reproduce", "theory against experiment for one table");
  rep_cmd->add_option("--table", o.table, "T1, T2, T3 or T4")->required();
  add_common(rep_cmd, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  int status = kExitOk;
  try {
    std::string report;
    if (*probe_cmd) report = cmd_probe(o);
    else if (*val_cmd) report = cmd_valuation(o);
    else if (*gal_cmd) report = cmd_galois_order(o, status);
    else if (*fam_cmd) report = cmd_family(o);
    else if (*cert_cmd) report = cmd_certify(o, status);
    else report = cmd_reproduce(o);
    out << report;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCompute;
  }
  return status;
}

}  // namespace ecmgal::cli
