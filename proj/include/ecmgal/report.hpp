#pragma once

#include <string>

#include "ecmgal/harness.hpp"

namespace ecmgal {

enum class ExportFormat { Json, Csv };

ExportFormat parse_format(const std::string& name);

/// Six significant digits, the precision used for every float in exports.
std::string format_float(double x);

std::string to_json(const TableReport& r);
std::string to_csv(const TableReport& r);
TableReport table_from_json(const std::string& text);

std::string to_json(const ValuationReport& r);
std::string to_csv(const ValuationReport& r);
ValuationReport valuation_from_json(const std::string& text);

std::string render(const TableReport& r, ExportFormat f);
std::string render(const ValuationReport& r, ExportFormat f);

/// Writes `content` to `path`; throws std::runtime_error on I/O failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace ecmgal
