#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/rational.hpp>

#include "cmcrad/error.hpp"

namespace cmcrad {

using Rational = boost::rational<std::int64_t>;

/// Parameters of a radius estimate. Curvatures are in 1/length^2, H in 1/length.
struct BoundInput {
  int n = 2;
  double delta = 0.0;
  double H = 0.0;
  /// Lower bound on the ambient sectional curvature.
  double K_inf = 0.0;
  /// Lower bound on the ambient scalar curvature; only used when n == 2.
  std::optional<double> S_inf;
};

/// Open interval of admissible conformal exponents k.
struct KInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double k) const { return lo < k && k < hi; }
  double width() const { return hi - lo; }
};

struct ExactKInterval {
  Rational lo;
  Rational hi;

  bool empty() const { return lo >= hi; }
};

enum class BoundSource { Sectional, Scalar };

std::string to_string(BoundSource source);

struct Hypotheses {
  bool h_threshold = false;
  bool delta_threshold = false;
  bool k_admissible = false;
  bool b_positive = false;

  bool all() const { return h_threshold && delta_threshold && k_admissible && b_positive; }
  /// Comma-separated names of the failed hypotheses ("" when all hold).
  std::string failures() const;
};

struct BoundResult {
  double k_star = 0.0;
  double A = 0.0;
  double B = 0.0;
  /// Bound on the intrinsic distance to the boundary; NaN when hypotheses fail.
  double c = 0.0;
  BoundSource source = BoundSource::Sectional;
  Hypotheses hypotheses;
};

/// Thrown when a bound is requested outside its hypotheses; carries every flag.
class HypothesisError : public Error {
public:
  HypothesisError(const std::string& message, Hypotheses flags)
      : Error(ErrorKind::HypothesisViolation, message), flags_(flags) {}

  const Hypotheses& flags() const noexcept { return flags_; }

private:
  Hypotheses flags_;
};

/// Supremum of delta for which the k-interval is nonempty: 27/32, 7/12, 19/64.
Rational delta_threshold(int n);
double delta_threshold_value(int n);

/// Supremum of delta for the scalar-curvature variant (n = 2): 3/4.
Rational scalar_delta_threshold();

/// Throws EmptyInterval when delta >= delta_threshold(n). For the floating-point
/// overload, passing the double nearest the threshold counts as "at the threshold".
KInterval k_interval(int n, double delta);
ExactKInterval k_interval(int n, const Rational& delta);

double coeff_A(int n, double k);

/// (kn(1-d) - n^2 + 5n - 5) H^2 + (kn(1-d) + n - 1) min(0, K). May be <= 0.
double coeff_B(int n, double k, double delta, double H, double K_inf);

/// 2 sqrt(|min(0, K)|).
double mean_curvature_threshold(double K_inf);

/// (kn(1-d) + n - 1) / (kn(1-d) - n^2 + 5n - 5); Domain error if the denominator is <= 0.
double check_quotient_bound(int n, double k, double delta);

/// Evaluates the sectional bound at a fixed k, recording hypothesis flags instead
/// of throwing. c is NaN unless every hypothesis holds.
BoundResult evaluate_bound_fixed_k(const BoundInput& input, double k);

/// As above but throws HypothesisError when any hypothesis fails.
BoundResult radius_bound_fixed_k(const BoundInput& input, double k);

/// Sectional bound minimized over the admissible k-interval.
BoundResult radius_bound(const BoundInput& input);

/// Scalar-curvature bound for surfaces (n = 2), k fixed at 1/(1-delta).
BoundResult radius_bound_scalar(double delta, double H, double S_inf);

/// Smallest c among the bounds whose hypotheses hold; NoApplicableBound otherwise.
BoundResult best_bound(const BoundInput& input);

}  // namespace cmcrad
