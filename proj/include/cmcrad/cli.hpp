#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cmcrad/report.hpp"

namespace cmcrad::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitHypothesisOnly = 2;
inline constexpr int kExitUsage = 64;

enum class Mode { Bound, Cap, Mesh, Sweep };

std::string to_string(Mode mode);

/// Repeated keys accumulate into grids; comma-separated values are split.
using KeyValues = std::map<std::string, std::vector<std::string>>;

/// Flat `key = value` config. '#' starts a comment. Unknown keys and malformed lines
/// throw ConfigParse naming the line.
KeyValues parse_config(std::istream& in);

struct SweepSpec {
  Mode mode = Mode::Bound;
  std::vector<int> n;
  std::vector<double> delta;
  std::vector<double> H;
  std::vector<double> K;
  std::vector<double> S;
  std::vector<double> kappa;
  std::vector<double> rho;
  std::vector<int> levels;
  double tol = 1e-12;
  std::string out;
  ReportFormat format = ReportFormat::Table;
  std::uint64_t seed = 0;
  int jobs = 0;
  bool auto_grid = false;
  int property_samples = 0;
  std::string mesh_out;
};

/// Validates grids and mode-specific required keys; throws Usage on violations.
SweepSpec make_sweep_spec(Mode mode, const KeyValues& values);

/// Executes the pipeline for `spec` and collects the report (no I/O besides mesh export).
SweepReport execute(const SweepSpec& spec);

/// Exit code for a finished report: 1 on any failure or error, 2 when every row is
/// not-applicable, 0 otherwise.
int exit_code_for(const ReportSummary& summary);

/// Command-line entry point; args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cmcrad::cli
