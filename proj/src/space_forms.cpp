#include "cmcrad/space_forms.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/numeric/odeint.hpp>

namespace cmcrad {

namespace {

namespace odeint = boost::numeric::odeint;

using RadialState = std::array<double, 2>;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// f'' + (n-1) sqrt(c) cot(sqrt(c) s) f' + lambda f = 0, state (f, f').
struct RadialEquation {
  int n;
  double sqrt_c;
  double lambda;

  void operator()(const RadialState& x, RadialState& dxds, double s) const {
    dxds[0] = x[1];
    dxds[1] = -(n - 1) * sqrt_c / std::tan(sqrt_c * s) * x[1] - lambda * x[0];
  }
};

// True when the regular radial solution with eigenvalue `lambda` vanishes somewhere in
// (0, rho]. By Sturm comparison this holds exactly when lambda >= lambda_1(ball of radius rho).
bool radial_solution_vanishes(int n, double c, double lambda, double rho) {
  const RadialEquation eq{n, std::sqrt(c), lambda};

  // Series start past the removable singularity at the pole: f ~ 1 - lambda s^2 / (2n).
  const double s0 = 1e-4 * std::min(rho, 1.0 / std::sqrt(lambda + c));
  RadialState x{1.0 - lambda * s0 * s0 / (2.0 * n), -lambda * s0 / n};

  // At most a quarter oscillation per step so no pair of zeros is skipped.
  const double max_step = 0.25 / std::sqrt(lambda + c);
  auto stepper = odeint::make_controlled(1e-13, 1e-12, odeint::runge_kutta_dopri5<RadialState>());

  double s = s0;
  double ds = std::min(max_step, 0.01 * rho);
  int attempts = 0;
  while (s < rho) {
    if (++attempts > 1000000) {
      throw Error(ErrorKind::NonConvergence, "radial integration exceeded its step budget");
    }
    double step = std::min({ds, max_step, rho - s});
    const bool last = step == rho - s;
    const double s_before = s;
    if (stepper.try_step(eq, x, s, step) != odeint::success) {
      ds = step;
      continue;
    }
    ds = step;
    if (last) s = rho;
    if (s == s_before) throw Error(ErrorKind::NonConvergence, "radial integration stalled");
    if (x[0] <= 0.0) return true;
  }
  return false;
}

}  // namespace

double SphereGeometry::intrinsic_radius() const { return 1.0 / std::sqrt(c_int); }

double SphereGeometry::antipodal_distance() const { return std::numbers::pi / std::sqrt(c_int); }

CapCase make_cap_case(const SphereGeometry& geometry, double delta, double rho) {
  if (!(rho > 0.0 && rho < geometry.antipodal_distance())) {
    throw Error(ErrorKind::InvalidCap, "cap radius " + fmt(rho) + " is outside (0, " +
                                           fmt(geometry.antipodal_distance()) + ")");
  }
  return {geometry, delta, rho, stability_potential(geometry, delta)};
}

double stability_potential(const SphereGeometry& geometry, double delta) {
  return geometry.n * (1.0 - delta) * geometry.c_int;
}

double cot_kappa(double kappa, double r) {
  if (!(r > 0.0)) throw Error(ErrorKind::Domain, "cot_kappa needs r > 0, got " + fmt(r));
  if (kappa > 0.0) {
    const double s = std::sqrt(kappa);
    if (!(r < std::numbers::pi / s)) {
      throw Error(ErrorKind::Domain, "cot_kappa needs r < pi/sqrt(kappa) for kappa > 0");
    }
    return s / std::tan(s * r);
  }
  if (kappa < 0.0) {
    const double s = std::sqrt(-kappa);
    return s / std::tanh(s * r);
  }
  return 1.0 / r;
}

SphereGeometry sphere_from_H(int n, double kappa, double H) {
  if (n < 2) throw Error(ErrorKind::DimensionOutOfRange, "n must be at least 2");
  SphereGeometry g;
  g.n = n;
  g.kappa = kappa;
  g.H = H;
  if (kappa < 0.0) {
    const double s = std::sqrt(-kappa);
    if (!(H > s)) {
      throw Error(ErrorKind::UnattainableCurvature,
                  "H = " + fmt(H) + " is not above the horosphere value " + fmt(s));
    }
    g.r_ambient = std::atanh(s / H) / s;
  } else if (kappa == 0.0) {
    if (!(H > 0.0)) throw Error(ErrorKind::UnattainableCurvature, "spheres in flat space need H > 0");
    g.r_ambient = 1.0 / H;
  } else {
    if (!(H >= 0.0)) throw Error(ErrorKind::UnattainableCurvature, "H must be nonnegative");
    const double s = std::sqrt(kappa);
    g.r_ambient = std::atan2(s, H) / s;
  }
  g.normA2 = n * H * H;
  g.ric_nu = n * kappa;
  g.c_int = kappa + H * H;
  return g;
}

double lambda1_ball(int n, double c_int, double rho, double tol) {
  if (n < 2) throw Error(ErrorKind::DimensionOutOfRange, "n must be at least 2");
  if (!(c_int > 0.0)) throw Error(ErrorKind::Domain, "c_int must be positive");
  if (!(rho > 0.0 && rho < std::numbers::pi / std::sqrt(c_int))) {
    throw Error(ErrorKind::Domain, "rho = " + fmt(rho) + " is not inside the round sphere");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::Domain, "tol must be positive");

  double lo = 0.0;
  double hi = std::max(n * c_int, 4.0 / (rho * rho));
  int doublings = 0;
  while (!radial_solution_vanishes(n, c_int, hi, rho)) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 200) throw Error(ErrorKind::NonConvergence, "could not bracket lambda_1");
  }

  const double abs_tol = tol * c_int;
  for (int it = 0; hi - lo > abs_tol; ++it) {
    if (it > 400) throw Error(ErrorKind::NonConvergence, "lambda_1 bisection did not converge");
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (radial_solution_vanishes(n, c_int, mid, rho) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double max_stable_cap_radius(int n, double kappa, double H, double delta, double tol) {
  const SphereGeometry g = sphere_from_H(n, kappa, H);
  if (!(delta >= 0.0 && delta < 1.0)) throw Error(ErrorKind::Domain, "delta must lie in [0, 1)");
  const double q = stability_potential(g, delta);
  const double antipode = g.antipodal_distance();

  // A cap of radius rho is delta-stable iff lambda_1(rho) >= q, i.e. iff the radial
  // solution at eigenvalue q has no zero inside the cap.
  auto stable = [&](double rho) { return !radial_solution_vanishes(n, g.c_int, q, rho); };

  double lo = 1e-3 * antipode;
  if (!stable(lo)) throw Error(ErrorKind::NonConvergence, "tiny caps should be stable");
  double hi = 0.999 * antipode;
  for (int i = 0; stable(hi); ++i) {
    if (i > 12) throw Error(ErrorKind::NonConvergence, "no unstable cap found below the antipode");
    lo = hi;
    hi = antipode - 0.1 * (antipode - hi);
  }

  const double abs_tol = tol * antipode;
  for (int it = 0; hi - lo > abs_tol; ++it) {
    if (it > 400) throw Error(ErrorKind::NonConvergence, "rho* bisection did not converge");
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (stable(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::string to_string(VerificationStatus status) {
  switch (status) {
    case VerificationStatus::Pass: return "pass";
    case VerificationStatus::Fail: return "fail";
    case VerificationStatus::NotApplicable: return "n/a";
  }
  return "?";
}

VerificationRecord verify_cap_bound(int n, double kappa, double H, double delta, double tol) {
  const SphereGeometry g = sphere_from_H(n, kappa, H);
  VerificationRecord rec;
  rec.n = n;
  rec.kappa = kappa;
  rec.H = H;
  rec.delta = delta;
  rec.c_int = g.c_int;
  rec.q = stability_potential(g, delta);
  rec.rho_star = max_stable_cap_radius(n, kappa, H, delta, tol);
  rec.c_best = std::numeric_limits<double>::quiet_NaN();
  rec.ratio = std::numeric_limits<double>::quiet_NaN();

  BoundInput in{n, delta, H, kappa, std::nullopt};
  if (n == 2) in.S_inf = n * (n + 1) * kappa;
  try {
    rec.bound = best_bound(in);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoApplicableBound) throw;
    rec.note = e.what();
    rec.status = VerificationStatus::NotApplicable;
    return rec;
  }
  rec.c_best = rec.bound->c;
  rec.ratio = rec.rho_star / rec.c_best;
  rec.pass = rec.rho_star <= rec.c_best * (1.0 + kBoundSlack);
  rec.status = rec.pass ? VerificationStatus::Pass : VerificationStatus::Fail;
  return rec;
}

double closed_sphere_lowest_eigenvalue(int n, double kappa, double H, double delta) {
  const SphereGeometry g = sphere_from_H(n, kappa, H);
  return -stability_potential(g, delta);
}

}  // namespace cmcrad
