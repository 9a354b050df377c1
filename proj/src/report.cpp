#include "cmcrad/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "cmcrad/error.hpp"

namespace cmcrad {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string cell_text(const Cell& cell) {
  return std::visit(overloaded{
                        [](std::monostate) { return std::string(); },
                        [](std::int64_t v) { return std::to_string(v); },
                        [](double v) { return format_number(v); },
                        [](const std::string& v) { return v; },
                        [](bool v) { return std::string(v ? "true" : "false"); },
                    },
                    cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
  return std::visit(overloaded{
                        [](std::monostate) { return nlohmann::ordered_json(nullptr); },
                        [](std::int64_t v) { return nlohmann::ordered_json(v); },
                        [](double v) {
                          // Rounded to 12 significant digits; the shortest round-trip
                          // form of the rounded value is what gets printed.
                          if (!std::isfinite(v)) return nlohmann::ordered_json(nullptr);
                          return nlohmann::ordered_json(std::strtod(format_number(v).c_str(), nullptr));
                        },
                        [](const std::string& v) { return nlohmann::ordered_json(v); },
                        [](bool v) { return nlohmann::ordered_json(v); },
                    },
                    cell);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string emit_json(const SweepReport& r) {
  nlohmann::ordered_json doc;
  doc["mode"] = r.mode;
  doc["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.metadata) doc["metadata"][k] = v;
  doc["columns"] = r.columns;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
      obj[r.columns[c]] = c < row.size() ? cell_json(row[c]) : nlohmann::ordered_json(nullptr);
    }
    doc["rows"].push_back(std::move(obj));
  }
  doc["summary"] = {{"pass", r.summary.pass},
                    {"fail", r.summary.fail},
                    {"not_applicable", r.summary.not_applicable},
                    {"errors", r.summary.errors}};
  return doc.dump(2) + "\n";
}

std::string emit_csv(const SweepReport& r) {
  std::ostringstream os;
  for (std::size_t c = 0; c < r.columns.size(); ++c) os << (c ? "," : "") << csv_escape(r.columns[c]);
  os << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
      os << (c ? "," : "") << (c < row.size() ? csv_escape(cell_text(row[c])) : "");
    }
    os << '\n';
  }
  return os.str();
}

std::string emit_table(const SweepReport& r) {
  std::vector<std::size_t> width(r.columns.size());
  std::vector<std::vector<std::string>> text;
  for (std::size_t c = 0; c < r.columns.size(); ++c) width[c] = r.columns[c].size();
  for (const auto& row : r.rows) {
    auto& line = text.emplace_back();
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
      line.push_back(c < row.size() ? cell_text(row[c]) : "");
      width[c] = std::max(width[c], line.back().size());
    }
  }

  std::ostringstream os;
  os << "# mode: " << r.mode << '\n';
  for (const auto& [k, v] : r.metadata) os << "# " << k << ": " << v << '\n';
  auto emit_line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      os << (c ? "  " : "") << cells[c];
      if (c + 1 < cells.size()) os << std::string(width[c] - cells[c].size(), ' ');
    }
    os << '\n';
  };
  emit_line(r.columns);
  for (const auto& line : text) emit_line(line);
  os << "# summary: pass=" << r.summary.pass << " fail=" << r.summary.fail
     << " not_applicable=" << r.summary.not_applicable << " errors=" << r.summary.errors << '\n';
  return os.str();
}

}  // namespace

ReportFormat parse_format(std::string_view name) {
  if (name == "table") return ReportFormat::Table;
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  throw Error(ErrorKind::Usage, "unknown format '" + std::string(name) + "' (expected table, json or csv)");
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string emit_report(const SweepReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return emit_json(report);
    case ReportFormat::Csv: return emit_csv(report);
    case ReportFormat::Table: return emit_table(report);
  }
  return {};
}

}  // namespace cmcrad
