#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cmcrad/space_forms.hpp"

namespace cmcrad {

struct CapCaseKey {
  int n = 2;
  double kappa = 0.0;
  double delta = 0.0;
  double H = 0.0;

  auto operator<=>(const CapCaseKey&) const = default;
};

struct CapOutcome {
  CapCaseKey key;
  std::optional<VerificationRecord> record;
  /// Set when the case raised an error instead of producing a record.
  std::string error;
};

/// n in {2,3,4}, kappa in {-1, 0}, `delta_count` deltas evenly spaced from 0 to 95% of
/// delta_threshold(n), and `h_count` mean curvatures above 2 sqrt|min(0, kappa)|.
std::vector<CapCaseKey> standard_cap_grid(int delta_count = 8, int h_count = 6);

/// Cartesian product of the given grids.
std::vector<CapCaseKey> cap_grid(std::span<const int> n, std::span<const double> kappa,
                                 std::span<const double> delta, std::span<const double> H);

/// Runs verify_cap_bound on every case with up to `jobs` worker threads (0 = hardware
/// concurrency). Results come back sorted by case key regardless of completion order.
std::vector<CapOutcome> run_cap_sweep(std::span<const CapCaseKey> cases, int jobs = 0, double tol = 1e-12);

struct PropertyCheckSummary {
  int samples = 0;
  int crude_violations = 0;
  int remainder_violations = 0;
  double min_crude_slack = 0.0;
  double min_remainder = 0.0;
};

/// Randomized traceless-matrix inequality checks (crude estimate and potential remainder),
/// `samples_per_n` matrices for each n in {2,3,4}, k drawn inside the admissible interval.
PropertyCheckSummary run_property_checks(int samples_per_n, std::uint64_t seed);

}  // namespace cmcrad
