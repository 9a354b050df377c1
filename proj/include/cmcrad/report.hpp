#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace cmcrad {

/// One report cell. monostate serializes as an empty CSV field / JSON null.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string, bool>;

struct ReportSummary {
  int pass = 0;
  int fail = 0;
  int not_applicable = 0;
  int errors = 0;
};

struct SweepReport {
  std::string mode;
  /// Ordered key/value metadata (tool version, tolerances, ...).
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  ReportSummary summary;
};

enum class ReportFormat { Table, Json, Csv };

/// Throws Usage for anything other than table, json, csv.
ReportFormat parse_format(std::string_view name);

/// 12 significant digits; "nan"/"inf"/"-inf" for non-finite values.
std::string format_number(double x);

/// Deterministic serialization with stable column and key order.
std::string emit_report(const SweepReport& report, ReportFormat format);

}  // namespace cmcrad
