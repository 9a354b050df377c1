#pragma once

#include <optional>
#include <string>

#include "cmcrad/bound_core.hpp"

namespace cmcrad {

/// Umbilic geodesic sphere of mean curvature H in the space form of curvature kappa.
struct SphereGeometry {
  int n = 2;
  double kappa = 0.0;
  double H = 0.0;
  /// Geodesic radius in the ambient space form.
  double r_ambient = 0.0;
  /// |A|^2 = n H^2
  double normA2 = 0.0;
  /// Ric(nu) = n kappa
  double ric_nu = 0.0;
  /// Intrinsic sectional curvature kappa + H^2.
  double c_int = 0.0;

  /// Radius of the sphere as an intrinsic round sphere, 1/sqrt(c_int).
  double intrinsic_radius() const;
  /// Intrinsic distance from a pole to its antipode.
  double antipodal_distance() const;
};

/// Intrinsic geodesic ball of radius rho on an umbilic sphere, with the potential
/// q = (1 - delta)(|A|^2 + Ric(nu)) of the delta-stability operator.
struct CapCase {
  SphereGeometry geometry;
  double delta = 0.0;
  double rho = 0.0;
  double q = 0.0;
};

/// Throws InvalidCap unless 0 < rho < pi/sqrt(c_int).
CapCase make_cap_case(const SphereGeometry& geometry, double delta, double rho);

/// (1 - delta)(|A|^2 + Ric(nu)) = n (1 - delta) c_int.
double stability_potential(const SphereGeometry& geometry, double delta);

/// Generalized cotangent: principal curvature of the geodesic sphere of radius r.
double cot_kappa(double kappa, double r);

/// Inverts cot_kappa. Throws UnattainableCurvature for H <= sqrt(-kappa) (kappa < 0),
/// H <= 0 (kappa = 0) or H < 0 (kappa > 0).
SphereGeometry sphere_from_H(int n, double kappa, double H);

/// First Dirichlet eigenvalue of the Laplacian on the geodesic ball of radius rho in the
/// round n-sphere of curvature c_int, by shooting on the radial equation and bisecting
/// the eigenvalue until the bracket is below tol * c_int.
double lambda1_ball(int n, double c_int, double rho, double tol = 1e-10);

/// Largest cap radius rho* with lambda1_ball(rho*) >= n (1 - delta) c_int.
double max_stable_cap_radius(int n, double kappa, double H, double delta, double tol = 1e-12);

enum class VerificationStatus { Pass, Fail, NotApplicable };

std::string to_string(VerificationStatus status);

struct VerificationRecord {
  int n = 2;
  double kappa = 0.0;
  double H = 0.0;
  double delta = 0.0;
  double c_int = 0.0;
  double q = 0.0;
  double rho_star = 0.0;
  /// Present when at least one bound's hypotheses hold.
  std::optional<BoundResult> bound;
  double c_best = 0.0;
  double ratio = 0.0;
  bool pass = false;
  VerificationStatus status = VerificationStatus::NotApplicable;
  /// Why no bound applies, when that is the case.
  std::string note;
};

/// Relative slack allowed in rho* <= c_best.
inline constexpr double kBoundSlack = 1e-8;

VerificationRecord verify_cap_bound(int n, double kappa, double H, double delta, double tol = 1e-12);

/// Lowest eigenvalue of -L^delta on the closed umbilic sphere: -n (1 - delta)(H^2 + kappa).
double closed_sphere_lowest_eigenvalue(int n, double kappa, double H, double delta);

}  // namespace cmcrad
