#include "cmcrad/bound_core.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "cmcrad/golden_section.hpp"

namespace cmcrad {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

// k-search grid and endpoint clamping.
constexpr int kGridPoints = 64;
constexpr double kEndpointOffset = 1e-9;

void require_dimension(int n) {
  if (n < 2 || n > 4) {
    throw Error(ErrorKind::DimensionOutOfRange, "n = " + std::to_string(n) + " is not one of 2, 3, 4");
  }
}

std::string format_rational(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// Sectional-bound objective for the k search; +inf wherever B <= 0.
double bound_objective(const BoundInput& in, double k) {
  const double A = coeff_A(in.n, k);
  const double B = coeff_B(in.n, k, in.delta, in.H, in.K_inf);
  if (!(B > 0.0) || !(A > 0.0)) return kInf;
  return std::numbers::pi * std::sqrt(A / B);
}

}  // namespace

std::string to_string(BoundSource source) {
  return source == BoundSource::Sectional ? "sectional" : "scalar";
}

std::string Hypotheses::failures() const {
  std::string out;
  auto add = [&](bool ok, const char* name) {
    if (ok) return;
    if (!out.empty()) out += ", ";
    out += name;
  };
  add(h_threshold, "H-threshold");
  add(delta_threshold, "delta-threshold");
  add(k_admissible, "k-interval");
  add(b_positive, "B>0");
  return out;
}

Rational delta_threshold(int n) {
  require_dimension(n);
  // Solves 5(n-1)/(4n(1-d)) = 4/(n-1).
  return Rational(1) - Rational(5 * (n - 1) * (n - 1), 16 * n);
}

double delta_threshold_value(int n) { return to_double(delta_threshold(n)); }

Rational scalar_delta_threshold() { return Rational(3, 4); }

KInterval k_interval(int n, double delta) {
  require_dimension(n);
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::Domain, "delta = " + format_double(delta) + " is outside [0, 1)");
  }
  const Rational threshold = delta_threshold(n);
  if (delta >= to_double(threshold)) {
    throw Error(ErrorKind::EmptyInterval, "delta = " + format_double(delta) + " is not below the threshold " +
                                              format_rational(threshold) + " for n = " + std::to_string(n));
  }
  KInterval iv{5.0 * (n - 1) / (4.0 * n * (1.0 - delta)), 4.0 / (n - 1)};
  if (!(iv.lo < iv.hi)) {
    throw Error(ErrorKind::EmptyInterval, "k-interval collapsed at delta = " + format_double(delta));
  }
  return iv;
}

ExactKInterval k_interval(int n, const Rational& delta) {
  require_dimension(n);
  if (delta < Rational(0) || delta >= Rational(1)) {
    throw Error(ErrorKind::Domain, "delta = " + format_rational(delta) + " is outside [0, 1)");
  }
  ExactKInterval iv{Rational(5 * (n - 1), 4 * n) / (Rational(1) - delta), Rational(4, n - 1)};
  if (iv.empty()) {
    throw Error(ErrorKind::EmptyInterval, "delta = " + format_rational(delta) + " is not below the threshold " +
                                              format_rational(delta_threshold(n)) + " for n = " +
                                              std::to_string(n));
  }
  return iv;
}

double coeff_A(int n, double k) {
  require_dimension(n);
  const double denom = 4.0 - k * (n - 1);
  if (!(denom > 0.0)) {
    throw Error(ErrorKind::Domain, "k = " + format_double(k) + " is not below 4/(n-1)");
  }
  return 4.0 * (k * (2 - n) + (n - 1)) / denom;
}

double coeff_B(int n, double k, double delta, double H, double K_inf) {
  require_dimension(n);
  const double x = k * n * (1.0 - delta);
  const double h_coeff = x - n * n + 5 * n - 5;
  const double k_coeff = x + n - 1;
  return h_coeff * H * H + k_coeff * std::min(0.0, K_inf);
}

double mean_curvature_threshold(double K_inf) { return 2.0 * std::sqrt(std::abs(std::min(0.0, K_inf))); }

double check_quotient_bound(int n, double k, double delta) {
  require_dimension(n);
  const double x = k * n * (1.0 - delta);
  const double denom = x - n * n + 5 * n - 5;
  if (!(denom > 0.0)) {
    throw Error(ErrorKind::Domain, "quotient denominator " + format_double(denom) + " is not positive");
  }
  return (x + n - 1) / denom;
}

BoundResult evaluate_bound_fixed_k(const BoundInput& in, double k) {
  require_dimension(in.n);
  BoundResult r;
  r.k_star = k;
  r.source = BoundSource::Sectional;
  r.hypotheses.h_threshold = std::abs(in.H) > mean_curvature_threshold(in.K_inf);
  r.hypotheses.delta_threshold = in.delta >= 0.0 && in.delta < delta_threshold_value(in.n);
  if (r.hypotheses.delta_threshold) {
    r.hypotheses.k_admissible = k_interval(in.n, in.delta).contains(k);
  }
  r.A = k < 4.0 / (in.n - 1) ? coeff_A(in.n, k) : kNaN;
  r.B = coeff_B(in.n, k, in.delta, in.H, in.K_inf);
  r.hypotheses.b_positive = r.B > 0.0;
  r.c = r.hypotheses.all() && r.A > 0.0 ? std::numbers::pi * std::sqrt(r.A / r.B) : kNaN;
  return r;
}

BoundResult radius_bound_fixed_k(const BoundInput& in, double k) {
  BoundResult r = evaluate_bound_fixed_k(in, k);
  if (!r.hypotheses.all()) {
    throw HypothesisError("sectional bound at k = " + format_double(k) + " violates: " + r.hypotheses.failures(),
                          r.hypotheses);
  }
  return r;
}

BoundResult radius_bound(const BoundInput& in) {
  const KInterval iv = k_interval(in.n, in.delta);
  if (!(std::abs(in.H) > mean_curvature_threshold(in.K_inf))) {
    Hypotheses flags{false, true, true, false};
    throw HypothesisError("|H| = " + format_double(std::abs(in.H)) + " is not above 2 sqrt|min(0,K)| = " +
                              format_double(mean_curvature_threshold(in.K_inf)),
                          flags);
  }

  const double eps = kEndpointOffset * iv.width();
  const double a = iv.lo + eps;
  const double b = iv.hi - eps;
  const double step = (b - a) / (kGridPoints - 1);

  std::array<double, kGridPoints> grid{};
  int best = 0;
  for (int i = 0; i < kGridPoints; ++i) {
    grid[i] = bound_objective(in, a + i * step);
    if (grid[i] < grid[best]) best = i;
  }
  if (!std::isfinite(grid[best])) {
    Hypotheses flags{true, true, true, false};
    throw HypothesisError("B <= 0 across the whole k-interval", flags);
  }

  const double lo = a + std::max(0, best - 1) * step;
  const double hi = a + std::min(kGridPoints - 1, best + 1) * step;
  const ScalarMinimum refined =
      golden_section_minimize([&](double k) { return bound_objective(in, k); }, lo, hi, 1e-12 * (b - a));

  const double k_star = refined.value <= grid[best] ? refined.x : a + best * step;
  return radius_bound_fixed_k(in, k_star);
}

BoundResult radius_bound_scalar(double delta, double H, double S_inf) {
  if (!(delta >= 0.0)) throw Error(ErrorKind::Domain, "delta must be nonnegative");
  BoundResult r;
  r.source = BoundSource::Scalar;
  r.hypotheses.h_threshold = true;
  r.hypotheses.delta_threshold = delta < to_double(scalar_delta_threshold());
  r.hypotheses.k_admissible = r.hypotheses.delta_threshold;
  r.B = 3.0 * H * H + S_inf;
  r.hypotheses.b_positive = r.B > 0.0;
  if (!r.hypotheses.delta_threshold) {
    throw HypothesisError("delta = " + format_double(delta) + " is not below 3/4 for the scalar bound",
                          r.hypotheses);
  }
  if (!r.hypotheses.b_positive) {
    throw HypothesisError("3H^2 + S = " + format_double(r.B) + " is not positive", r.hypotheses);
  }
  r.k_star = 1.0 / (1.0 - delta);
  r.A = 4.0 * (1.0 - delta) / (3.0 - 4.0 * delta);
  r.c = 2.0 * std::numbers::pi * std::sqrt((1.0 - delta) / ((3.0 - 4.0 * delta) * r.B));
  return r;
}

BoundResult best_bound(const BoundInput& in) {
  require_dimension(in.n);
  std::vector<BoundResult> candidates;
  std::string reasons;
  auto note = [&](const std::string& what) {
    if (!reasons.empty()) reasons += "; ";
    reasons += what;
  };

  try {
    candidates.push_back(radius_bound(in));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::EmptyInterval && e.kind() != ErrorKind::HypothesisViolation) throw;
    note(e.what());
  }

  if (in.n == 2 && in.S_inf) {
    try {
      candidates.push_back(radius_bound_scalar(in.delta, in.H, *in.S_inf));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::HypothesisViolation) throw;
      note(e.what());
    }
  } else if (in.n != 2) {
    note("no scalar-curvature bound for n = " + std::to_string(in.n));
  } else {
    note("no scalar-curvature lower bound supplied");
  }

  if (candidates.empty()) throw Error(ErrorKind::NoApplicableBound, reasons);

  const BoundResult* best = &candidates.front();
  for (const auto& c : candidates) {
    if (c.c < best->c) best = &c;
  }
  return *best;
}

}  // namespace cmcrad
