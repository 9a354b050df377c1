#include "cmcrad/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "cmcrad/bound_core.hpp"
#include "cmcrad/mesh.hpp"
#include "cmcrad/mesh_verify.hpp"
#include "cmcrad/sweep.hpp"

namespace cmcrad::cli {

namespace {

constexpr const char* kToolName = "cmcrad";
constexpr const char* kToolVersion = "1.0.0";

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{"mode", "n",   "delta", "H",    "K",        "S",
                                          "kappa", "rho", "levels", "tol", "out",      "format",
                                          "seed", "jobs", "auto-grid", "property-samples", "mesh-out"};
  return keys;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0' || !std::isfinite(v)) {
    throw Error(ErrorKind::Usage, "--" + key + ": '" + text + "' is not a finite number");
  }
  return v;
}

long long parse_integer(const std::string& key, const std::string& text) {
  char* end = nullptr;
  const long long v = std::strtoll(text.c_str(), &end, 10);
  if (text.empty() || *end != '\0') throw Error(ErrorKind::Usage, "--" + key + ": '" + text + "' is not an integer");
  return v;
}

std::vector<double> doubles(const KeyValues& kv, const std::string& key) {
  std::vector<double> out;
  if (auto it = kv.find(key); it != kv.end()) {
    for (const auto& s : it->second) out.push_back(parse_double(key, s));
  }
  return out;
}

std::vector<int> integers(const KeyValues& kv, const std::string& key) {
  std::vector<int> out;
  if (auto it = kv.find(key); it != kv.end()) {
    for (const auto& s : it->second) out.push_back(static_cast<int>(parse_integer(key, s)));
  }
  return out;
}

std::optional<std::string> single(const KeyValues& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end() || it->second.empty()) return std::nullopt;
  if (it->second.size() > 1) throw Error(ErrorKind::Usage, "--" + key + " takes a single value");
  return it->second.front();
}

void require(bool present, Mode mode, const std::string& key) {
  if (!present) throw Error(ErrorKind::Usage, to_string(mode) + " requires --" + key);
}

std::vector<std::pair<std::string, std::string>> base_metadata(const SweepSpec& spec) {
  std::vector<std::pair<std::string, std::string>> meta{
      {"tool", kToolName}, {"version", kToolVersion}, {"tolerance", format_number(spec.tol)}};
  // Wall-clock time would break byte-identical reruns; only a caller-pinned epoch is recorded.
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) meta.emplace_back("timestamp", epoch);
  return meta;
}

void count(ReportSummary& s, VerificationStatus status) {
  switch (status) {
    case VerificationStatus::Pass: ++s.pass; break;
    case VerificationStatus::Fail: ++s.fail; break;
    case VerificationStatus::NotApplicable: ++s.not_applicable; break;
  }
}

Cell optional_number(bool present, double v) { return present ? Cell(v) : Cell(std::monostate{}); }

SweepReport run_bound(const SweepSpec& spec) {
  SweepReport r;
  r.mode = to_string(spec.mode);
  r.metadata = base_metadata(spec);
  r.columns = {"n", "delta", "H", "K", "S", "status", "source", "k_star", "A", "B", "c", "message"};

  std::vector<std::optional<double>> s_values;
  if (spec.S.empty()) s_values.push_back(std::nullopt);
  for (double s : spec.S) s_values.push_back(s);

  for (int n : spec.n)
    for (double delta : spec.delta)
      for (double H : spec.H)
        for (double K : spec.K)
          for (const auto& S : s_values) {
            std::vector<Cell> row{std::int64_t{n}, delta, H, K, optional_number(S.has_value(), S.value_or(0.0))};
            try {
              const BoundResult b = best_bound({n, delta, H, K, S});
              row.insert(row.end(), {std::string("ok"), to_string(b.source), b.k_star, b.A, b.B, b.c, std::string()});
              ++r.summary.pass;
            } catch (const Error& e) {
              if (e.kind() != ErrorKind::NoApplicableBound) throw;
              row.insert(row.end(), {std::string("n/a"), Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, std::string(e.what())});
              ++r.summary.not_applicable;
            }
            r.rows.push_back(std::move(row));
          }
  return r;
}

void append_cap_rows(SweepReport& r, const std::vector<CapOutcome>& outcomes) {
  r.columns = {"n",      "kappa", "H", "delta",   "c_int", "q",      "rho_star",
               "c_best", "source", "k_star", "ratio", "status", "note"};
  for (const CapOutcome& o : outcomes) {
    std::vector<Cell> row{std::int64_t{o.key.n}, o.key.kappa, o.key.H, o.key.delta};
    if (!o.record) {
      row.insert(row.end(), {Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, std::string("error"), o.error});
      ++r.summary.errors;
    } else {
      const VerificationRecord& v = *o.record;
      const bool has = v.bound.has_value();
      row.insert(row.end(), {v.c_int, v.q, v.rho_star, optional_number(has, v.c_best),
                             has ? Cell(to_string(v.bound->source)) : Cell{}, optional_number(has, has ? v.bound->k_star : 0.0),
                             optional_number(has, v.ratio), to_string(v.status), v.note});
      count(r.summary, v.status);
    }
    r.rows.push_back(std::move(row));
  }
}

SweepReport run_cap(const SweepSpec& spec) {
  SweepReport r;
  r.mode = to_string(spec.mode);
  r.metadata = base_metadata(spec);
  const std::vector<CapCaseKey> cases =
      spec.auto_grid ? standard_cap_grid() : cap_grid(spec.n, spec.kappa, spec.delta, spec.H);
  append_cap_rows(r, run_cap_sweep(cases, spec.jobs, spec.tol));

  if (spec.property_samples > 0) {
    const PropertyCheckSummary p = run_property_checks(spec.property_samples, spec.seed);
    r.metadata.emplace_back("seed", std::to_string(spec.seed));
    r.metadata.emplace_back("property_samples", std::to_string(p.samples));
    r.metadata.emplace_back("property_violations", std::to_string(p.crude_violations + p.remainder_violations));
    r.metadata.emplace_back("min_crude_slack", format_number(p.min_crude_slack));
    r.metadata.emplace_back("min_potential_remainder", format_number(p.min_remainder));
    r.summary.fail += p.crude_violations + p.remainder_violations;
  }
  return r;
}

SweepReport run_mesh(const SweepSpec& spec) {
  SweepReport r;
  r.mode = to_string(spec.mode);
  r.metadata = base_metadata(spec);
  const MeshVerifyOptions options;
  r.metadata.emplace_back("marginal_band", format_number(options.marginal_band));
  r.columns = {"kappa",  "H",        "rho",        "delta",          "level",    "vertices", "h_max",
               "lambda1", "oracle_lambda", "rel_error", "radius", "distortion", "verdict", "oracle_verdict",
               "c_best", "bound_ok", "order",     "status"};

  for (double kappa : spec.kappa)
    for (double H : spec.H)
      for (double rho : spec.rho)
        for (double delta : spec.delta) {
          const ConvergenceReport c = mesh_verify(kappa, H, rho, delta, spec.levels, options);
          const std::string status = c.pass ? "pass" : "fail";
          (c.pass ? r.summary.pass : r.summary.fail)++;
          for (const LevelResult& l : c.levels) {
            r.rows.push_back({kappa, H, rho, delta, std::int64_t{l.level}, std::int64_t{l.vertices}, l.h_max,
                              l.lambda1, c.oracle_lambda, l.rel_error, l.radius, l.distortion, to_string(l.verdict),
                              to_string(c.oracle_verdict), optional_number(c.bound.has_value(), c.bound ? c.bound->c : 0.0),
                              l.bound_ok ? Cell(*l.bound_ok) : Cell{}, c.empirical_order, status});
          }
          if (!spec.mesh_out.empty()) {
            std::ofstream file(spec.mesh_out);
            if (!file) throw Error(ErrorKind::Io, "cannot write mesh to " + spec.mesh_out);
            write_polygon_mesh(build_cap_mesh(kappa, H, rho, spec.levels.back()), file);
          }
        }
  return r;
}

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Bound: return "bound";
    case Mode::Cap: return "cap";
    case Mode::Mesh: return "mesh";
    case Mode::Sweep: return "sweep";
  }
  return "?";
}

KeyValues parse_config(std::istream& in) {
  KeyValues kv;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::ConfigParse, "line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_keys().count(key)) {
      throw Error(ErrorKind::ConfigParse, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    const auto values = split_commas(value);
    if (values.empty()) {
      throw Error(ErrorKind::ConfigParse, "line " + std::to_string(lineno) + ": empty value for '" + key + "'");
    }
    auto& slot = kv[key];
    slot.insert(slot.end(), values.begin(), values.end());
  }
  return kv;
}

SweepSpec make_sweep_spec(Mode mode, const KeyValues& kv) {
  SweepSpec spec;
  spec.mode = mode;
  if (auto m = single(kv, "mode"); m && *m != to_string(mode)) {
    throw Error(ErrorKind::Usage, "config mode '" + *m + "' does not match subcommand '" + to_string(mode) + "'");
  }
  spec.n = integers(kv, "n");
  spec.delta = doubles(kv, "delta");
  spec.H = doubles(kv, "H");
  spec.K = doubles(kv, "K");
  spec.S = doubles(kv, "S");
  spec.kappa = doubles(kv, "kappa");
  spec.rho = doubles(kv, "rho");
  spec.levels = integers(kv, "levels");
  if (auto v = single(kv, "tol")) spec.tol = parse_double("tol", *v);
  if (auto v = single(kv, "out")) spec.out = *v;
  if (auto v = single(kv, "format")) spec.format = parse_format(*v);
  if (auto v = single(kv, "seed")) spec.seed = static_cast<std::uint64_t>(parse_integer("seed", *v));
  if (auto v = single(kv, "jobs")) spec.jobs = static_cast<int>(parse_integer("jobs", *v));
  if (auto v = single(kv, "auto-grid")) spec.auto_grid = *v == "true" || *v == "1";
  if (auto v = single(kv, "property-samples")) spec.property_samples = static_cast<int>(parse_integer("property-samples", *v));
  if (auto v = single(kv, "mesh-out")) spec.mesh_out = *v;

  if (!(spec.tol > 0.0)) throw Error(ErrorKind::Usage, "--tol must be positive");
  if (spec.jobs < 0) throw Error(ErrorKind::Usage, "--jobs must be nonnegative");
  if (spec.property_samples < 0) throw Error(ErrorKind::Usage, "--property-samples must be nonnegative");
  for (int n : spec.n) {
    if (n < 2 || n > 4) throw Error(ErrorKind::Usage, "--n must be 2, 3 or 4 (got " + std::to_string(n) + ")");
  }
  for (double d : spec.delta) {
    if (!(d >= 0.0 && d < 1.0)) throw Error(ErrorKind::Usage, "--delta must lie in [0, 1)");
  }

  switch (mode) {
    case Mode::Bound:
      require(!spec.n.empty(), mode, "n");
      require(!spec.delta.empty(), mode, "delta");
      require(!spec.H.empty(), mode, "H");
      require(!spec.K.empty(), mode, "K");
      break;
    case Mode::Sweep:
      if (spec.auto_grid) break;
      [[fallthrough]];
    case Mode::Cap:
      require(!spec.n.empty(), mode, "n");
      require(!spec.kappa.empty(), mode, "kappa");
      require(!spec.H.empty(), mode, "H");
      require(!spec.delta.empty(), mode, "delta");
      break;
    case Mode::Mesh:
      if (spec.n.empty()) spec.n = {2};
      if (spec.n != std::vector<int>{2}) throw Error(ErrorKind::Usage, "mesh verification is for n = 2 only");
      require(!spec.kappa.empty(), mode, "kappa");
      require(!spec.H.empty(), mode, "H");
      require(!spec.rho.empty(), mode, "rho");
      require(!spec.delta.empty(), mode, "delta");
      require(!spec.levels.empty(), mode, "levels");
      for (int l : spec.levels) {
        if (l < 0 || l > 9) throw Error(ErrorKind::Usage, "--levels must lie in [0, 9]");
      }
      if (!spec.mesh_out.empty() &&
          spec.kappa.size() * spec.H.size() * spec.rho.size() * spec.delta.size() != 1) {
        throw Error(ErrorKind::Usage, "--mesh-out needs exactly one mesh case");
      }
      break;
  }
  if (mode != Mode::Sweep && spec.auto_grid) throw Error(ErrorKind::Usage, "--auto-grid is a sweep option");
  return spec;
}

SweepReport execute(const SweepSpec& spec) {
  switch (spec.mode) {
    case Mode::Bound: return run_bound(spec);
    case Mode::Cap:
    case Mode::Sweep: return run_cap(spec);
    case Mode::Mesh: return run_mesh(spec);
  }
  return {};
}

int exit_code_for(const ReportSummary& s) {
  if (s.fail > 0 || s.errors > 0) return kExitFailure;
  if (s.pass == 0 && s.not_applicable > 0) return kExitHypothesisOnly;
  return kExitOk;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Radius-estimate verification for delta-stable CMC hypersurfaces", kToolName};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  KeyValues flag_values;
  std::string config_path;
  bool auto_grid = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key = value config file (repeated keys form grids)");
    for (const char* key : {"n", "delta", "H", "K", "S", "kappa", "rho", "levels"}) {
      sub->add_option(std::string("--") + key, flag_values[key])->delimiter(',')->allow_extra_args(false);
    }
    for (const char* key : {"tol", "out", "format", "seed", "jobs", "property-samples", "mesh-out"}) {
      sub->add_option(std::string("--") + key, flag_values[key]);
    }
  };

  CLI::App* bound = app.add_subcommand("bound", "closed-form radius bounds for given (n, delta, H, K[, S])");
  CLI::App* cap = app.add_subcommand("cap", "umbilic-cap verification against the best bound");
  CLI::App* mesh = app.add_subcommand("mesh", "mesh-level stability and radius check (n = 2)");
  CLI::App* sweep = app.add_subcommand("sweep", "parallel cap verification over parameter grids");
  for (CLI::App* sub : {bound, cap, mesh, sweep}) add_common(sub);
  sweep->add_flag("--auto-grid", auto_grid, "use the standard n, kappa, delta, H grid");

  std::vector<std::string> argv_store{kToolName};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Mode mode = Mode::Bound;
  if (cap->parsed()) mode = Mode::Cap;
  if (mesh->parsed()) mode = Mode::Mesh;
  if (sweep->parsed()) mode = Mode::Sweep;

  try {
    KeyValues values;
    if (!config_path.empty()) {
      std::ifstream file(config_path);
      if (!file) throw Error(ErrorKind::ConfigParse, "cannot open config file " + config_path);
      values = parse_config(file);
    }
    for (auto& [key, list] : flag_values) {
      if (!list.empty()) values[key] = list;
    }
    if (auto_grid) values["auto-grid"] = {"true"};

    const SweepSpec spec = make_sweep_spec(mode, values);
    const SweepReport report = execute(spec);
    const std::string text = emit_report(report, spec.format);
    if (spec.out.empty()) {
      out << text;
    } else {
      std::ofstream file(spec.out, std::ios::binary);
      if (!file || !(file << text)) throw Error(ErrorKind::Io, "cannot write report to " + spec.out);
    }
    for (const auto& row : report.rows) {
      const auto status_col = std::find(report.columns.begin(), report.columns.end(), "status");
      const auto msg_col = std::find_if(report.columns.begin(), report.columns.end(),
                                        [](const std::string& c) { return c == "message" || c == "note"; });
      if (status_col == report.columns.end() || msg_col == report.columns.end()) break;
      const auto& status = row[status_col - report.columns.begin()];
      const auto& msg = row[msg_col - report.columns.begin()];
      if (std::holds_alternative<std::string>(msg) && !std::get<std::string>(msg).empty() &&
          std::get<std::string>(status) != "pass") {
        err << std::get<std::string>(msg) << '\n';
      }
    }
    return exit_code_for(report.summary);
  } catch (const Error& e) {
    err << e.what() << '\n';
    if (e.kind() == ErrorKind::Usage || e.kind() == ErrorKind::ConfigParse) return kExitUsage;
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace cmcrad::cli
