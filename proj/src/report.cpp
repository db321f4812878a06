#include "ecmgal/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace ecmgal {

namespace {

using json = nlohmann::ordered_json;

json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_float(x));
}

double number_from(const json& j) { return j.is_null() ? std::nan("") : j.get<double>(); }

void put_theory(json& j, const std::optional<Rat>& theory) {
  if (theory) {
    j["theory_rat"] = rat_to_string(*theory);
    j["theory_dec"] = number(theory->get_d());
  } else {
    j["theory_rat"] = nullptr;
    j["theory_dec"] = nullptr;
  }
}

std::optional<Rat> theory_from(const json& j) {
  if (!j.contains("theory_rat") || j["theory_rat"].is_null()) return std::nullopt;
  return parse_rat(j["theory_rat"].get<std::string>());
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(double x) { return std::isfinite(x) ? format_float(x) : std::string(); }

}  // namespace

ExportFormat parse_format(const std::string& name) {
  if (name == "json") return ExportFormat::Json;
  if (name == "csv") return ExportFormat::Csv;
  throw std::invalid_argument("unknown format: " + name);
}

std::string format_float(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string to_json(const TableReport& r) {
  json j;
  j["table"] = r.table;
  j["bound"] = r.bound;
  j["rows"] = json::array();
  for (const auto& row : r.rows) {
    json o;
    o["label"] = row.label;
    put_theory(o, row.theory);
    o["experiment"] = number(row.experiment);
    o["stderr"] = number(row.stderr_);
    o["sigma"] = number(row.sigma);
    o["bound"] = r.bound;
    o["excluded_primes"] = row.excluded;
    o["heuristic"] = row.heuristic;
    j["rows"].push_back(std::move(o));
  }
  return j.dump(2) + "\n";
}

std::string to_csv(const TableReport& r) {
  std::string out = "label,theory,experiment,sigma\n";
  for (const auto& row : r.rows) {
    out += csv_field(row.label) + "," + (row.theory ? rat_to_string(*row.theory) : std::string()) + "," +
           csv_number(row.experiment) + "," + csv_number(row.sigma) + "\n";
  }
  return out;
}

TableReport table_from_json(const std::string& text) {
  const json j = json::parse(text);
  TableReport r;
  r.table = j.at("table").get<std::string>();
  r.bound = j.at("bound").get<u64>();
  for (const auto& o : j.at("rows")) {
    ComparisonRow row;
    row.label = o.at("label").get<std::string>();
    row.theory = theory_from(o);
    row.experiment = number_from(o.at("experiment"));
    row.stderr_ = number_from(o.at("stderr"));
    row.sigma = number_from(o.at("sigma"));
    row.excluded = o.at("excluded_primes").get<u64>();
    row.heuristic = o.at("heuristic").get<bool>();
    r.rows.push_back(std::move(row));
  }
  return r;
}

std::string to_json(const ValuationReport& r) {
  json j;
  j["label"] = r.label;
  j["pi"] = r.pi;
  j["bound"] = r.bound;
  j["count"] = r.count;
  j["excluded_primes"] = r.excluded;
  j["valuation_sum"] = r.valuation_sum;
  j["mean"] = number(r.mean);
  j["stderr"] = number(r.stderr_);
  put_theory(j, r.theory);
  j["split"] = r.split;
  j["classes"] = json::array();
  for (const auto& c : r.classes) {
    json o;
    o["a"] = c.a;
    o["count"] = c.count;
    o["valuation_sum"] = c.valuation_sum;
    o["mean"] = number(c.mean);
    j["classes"].push_back(std::move(o));
  }
  return j.dump(2) + "\n";
}

std::string to_csv(const ValuationReport& r) {
  std::string out = "class,count,mean,theory\n";
  out += "all," + std::to_string(r.count) + "," + csv_number(r.mean) + "," +
         (r.theory ? rat_to_string(*r.theory) : std::string()) + "\n";
  for (const auto& c : r.classes)
    out += std::to_string(c.a) + " mod " + std::to_string(r.split) + "," + std::to_string(c.count) + "," +
           csv_number(c.mean) + ",\n";
  return out;
}

ValuationReport valuation_from_json(const std::string& text) {
  const json j = json::parse(text);
  ValuationReport r;
  r.label = j.at("label").get<std::string>();
  r.pi = j.at("pi").get<u32>();
  r.bound = j.at("bound").get<u64>();
  r.count = j.at("count").get<u64>();
  r.excluded = j.at("excluded_primes").get<u64>();
  r.valuation_sum = j.at("valuation_sum").get<u64>();
  r.mean = number_from(j.at("mean"));
  r.stderr_ = number_from(j.at("stderr"));
  r.theory = theory_from(j);
  r.split = j.at("split").get<u32>();
  for (const auto& o : j.at("classes")) {
    ClassBreakdown c;
    c.a = o.at("a").get<u32>();
    c.count = o.at("count").get<u64>();
    c.valuation_sum = o.at("valuation_sum").get<u64>();
    c.mean = number_from(o.at("mean"));
    r.classes.push_back(c);
  }
  return r;
}

std::string render(const TableReport& r, ExportFormat f) { return f == ExportFormat::Json ? to_json(r) : to_csv(r); }
std::string render(const ValuationReport& r, ExportFormat f) { return f == ExportFormat::Json ? to_json(r) : to_csv(r); }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace ecmgal
