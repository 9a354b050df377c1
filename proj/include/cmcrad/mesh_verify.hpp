#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cmcrad/bound_core.hpp"

namespace cmcrad {

enum class StabilityVerdict { Stable, Unstable, Marginal };

std::string to_string(StabilityVerdict verdict);

struct MeshVerifyOptions {
  /// Half-width of the marginal band for lambda_1(L^delta), in units of c_int.
  double marginal_band = 1e-2;
  double ode_tol = 1e-11;
  double eigen_tol = 1e-13;
};

struct LevelResult {
  int level = 0;
  int vertices = 0;
  double h_max = 0.0;
  /// Smallest Dirichlet eigenvalue of -L^delta on the mesh.
  double lambda1 = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
  double radius = 0.0;
  double distortion = 0.0;
  StabilityVerdict verdict = StabilityVerdict::Marginal;
  /// radius <= c_best (with the usual relative slack); only for stable levels with a bound.
  std::optional<bool> bound_ok;
};

struct ConvergenceReport {
  double kappa = 0.0;
  double H = 0.0;
  double rho = 0.0;
  double delta = 0.0;
  double c_int = 0.0;
  double q = 0.0;
  /// lambda1_ball(rho) - q from the radial shooting oracle.
  double oracle_lambda = 0.0;
  double rho_star = 0.0;
  StabilityVerdict oracle_verdict = StabilityVerdict::Marginal;
  std::optional<BoundResult> bound;
  std::vector<LevelResult> levels;
  /// Least-squares slope of log(abs_error) against log(h_max); NaN with fewer than 2 levels.
  double empirical_order = 0.0;
  bool verdict_agrees = false;
  bool pass = false;
};

/// Classifies lambda_1(L^delta): marginal within +-band, otherwise stable iff
/// lambda1 >= -1e-8 c_int.
StabilityVerdict classify_stability(double lambda1, double c_int, double band);

/// Least-squares slope of log(errors) against log(h).
double empirical_order(std::span<const double> h, std::span<const double> errors);

/// Mesh-level check of the cap (kappa, H, rho) for n = 2 at each refinement level.
ConvergenceReport mesh_verify(double kappa, double H, double rho, double delta, std::span<const int> levels,
                              const MeshVerifyOptions& options = {});

}  // namespace cmcrad
