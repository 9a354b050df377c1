#include "cmcrad/mesh_verify.hpp"

#include <cmath>
#include <limits>

#include "cmcrad/mesh.hpp"
#include "cmcrad/space_forms.hpp"
#include "cmcrad/stability_operator.hpp"

namespace cmcrad {

std::string to_string(StabilityVerdict verdict) {
  switch (verdict) {
    case StabilityVerdict::Stable: return "stable";
    case StabilityVerdict::Unstable: return "unstable";
    case StabilityVerdict::Marginal: return "marginal";
  }
  return "?";
}

StabilityVerdict classify_stability(double lambda1, double c_int, double band) {
  if (std::abs(lambda1) <= band * c_int) return StabilityVerdict::Marginal;
  return lambda1 >= -1e-8 * c_int ? StabilityVerdict::Stable : StabilityVerdict::Unstable;
}

double empirical_order(std::span<const double> h, std::span<const double> errors) {
  const std::size_t m = std::min(h.size(), errors.size());
  if (m < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = m * sxx - sx * sx;
  return (m * sxy - sx * sy) / denom;
}

ConvergenceReport mesh_verify(double kappa, double H, double rho, double delta, std::span<const int> levels,
                              const MeshVerifyOptions& options) {
  if (levels.empty()) throw Error(ErrorKind::Domain, "mesh_verify needs at least one level");
  const SphereGeometry g = sphere_from_H(2, kappa, H);
  const CapCase cap = make_cap_case(g, delta, rho);

  ConvergenceReport report;
  report.kappa = kappa;
  report.H = H;
  report.rho = rho;
  report.delta = delta;
  report.c_int = g.c_int;
  report.q = cap.q;
  report.oracle_lambda = lambda1_ball(2, g.c_int, rho, options.ode_tol) - cap.q;
  report.rho_star = max_stable_cap_radius(2, kappa, H, delta);
  report.oracle_verdict = classify_stability(report.oracle_lambda, g.c_int, options.marginal_band);

  try {
    report.bound = best_bound({2, delta, H, kappa, 6.0 * kappa});
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoApplicableBound) throw;
  }

  std::vector<double> hs;
  std::vector<double> errs;
  for (int level : levels) {
    const TriMesh mesh = build_cap_mesh(kappa, H, rho, level);
    const SpectralProblem problem = assemble_stability(mesh, delta);

    LevelResult row;
    row.level = level;
    row.vertices = mesh.vertex_count();
    row.h_max = mesh.max_edge_length();
    row.lambda1 = lambda1_dirichlet(problem, options.eigen_tol);
    row.abs_error = std::abs(row.lambda1 - report.oracle_lambda);
    row.rel_error = row.abs_error / std::abs(report.oracle_lambda);
    row.radius = intrinsic_radius(mesh);
    row.distortion = edge_path_distortion(mesh);
    row.verdict = classify_stability(row.lambda1, g.c_int, options.marginal_band);
    if (row.verdict == StabilityVerdict::Stable && report.bound) {
      row.bound_ok = row.radius <= report.bound->c * (1.0 + kBoundSlack);
    }
    report.levels.push_back(row);
    hs.push_back(row.h_max);
    errs.push_back(row.abs_error);
  }

  report.empirical_order = empirical_order(hs, errs);
  const LevelResult& finest = report.levels.back();
  report.verdict_agrees = finest.verdict == report.oracle_verdict;
  report.pass = report.verdict_agrees && finest.bound_ok.value_or(true);
  return report;
}

}  // namespace cmcrad
