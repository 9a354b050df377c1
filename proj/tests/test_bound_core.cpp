#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cmcrad/bound_core.hpp"
#include "cmcrad/traceless.hpp"

using namespace cmcrad;
using std::numbers::pi;

namespace {

// Independent restatement of the sectional estimate, kept free of library calls.
double oracle_c(int n, double k, double delta, double H, double K) {
  const double A = 4.0 * (k * (2 - n) + (n - 1)) / (4.0 - k * (n - 1));
  const double B = (k * n * (1 - delta) - n * n + 5 * n - 5) * H * H + (k * n * (1 - delta) + n - 1) * std::min(0.0, K);
  return pi * std::sqrt(A / B);
}

// Dense scan over the open k-interval with step 1e-4.
double oracle_min_c(int n, double delta, double H, double K, double* k_best = nullptr) {
  const double lo = 5.0 * (n - 1) / (4.0 * n * (1 - delta));
  const double hi = 4.0 / (n - 1);
  double best = INFINITY;
  // Interior grid plus the two probes the optimizer may clamp to.
  std::vector<double> ks{lo + 1e-9 * (hi - lo), hi - 1e-9 * (hi - lo)};
  for (double k = lo + 1e-4; k < hi; k += 1e-4) ks.push_back(k);
  for (double k : ks) {
    const double c = oracle_c(n, k, delta, H, K);
    if (std::isfinite(c) && c < best) {
      best = c;
      if (k_best) *k_best = k;
    }
  }
  return best;
}

// R_11 summed from R_1j1j = Kbar_1j + h_11 h_jj - h_1j^2 with h = H I + Phi.
double oracle_ricci(const Eigen::MatrixXd& phi, double H, double sectional_sum) {
  const int n = static_cast<int>(phi.rows());
  const Eigen::MatrixXd h = H * Eigen::MatrixXd::Identity(n, n) + phi;
  double r = sectional_sum;
  for (int j = 1; j < n; ++j) r += h(0, 0) * h(j, j) - h(0, j) * h(0, j);
  return r;
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("delta thresholds are exact rationals") {
  CHECK(delta_threshold(2) == Rational(27, 32));
  CHECK(delta_threshold(3) == Rational(7, 12));
  CHECK(delta_threshold(4) == Rational(19, 64));
  CHECK(delta_threshold_value(3) == doctest::Approx(7.0 / 12.0).epsilon(1e-15));
  CHECK(kind_of([] { delta_threshold(5); }) == ErrorKind::DimensionOutOfRange);
  for (int n = 2; n <= 4; ++n) {
    // The open interval (5(n-1)/(4n(1-delta)), 4/(n-1)) closes up exactly at the threshold.
    const Rational t = delta_threshold(n);
    CHECK(Rational(5 * (n - 1), 4 * n) / (Rational(1) - t) == Rational(4, n - 1));
    CHECK(kind_of([&] { k_interval(n, t); }) == ErrorKind::EmptyInterval);
    const ExactKInterval below = k_interval(n, t - Rational(1, 1000000));
    CHECK_FALSE(below.empty());
    CHECK(below.hi == Rational(4, n - 1));
  }
}

TEST_CASE("k interval endpoints") {
  const KInterval a = k_interval(3, 0.0);
  CHECK(a.lo == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(a.hi == doctest::Approx(2.0).epsilon(1e-15));
  const KInterval b = k_interval(2, 0.0);
  CHECK(b.lo == doctest::Approx(5.0 / 8.0).epsilon(1e-15));
  CHECK(b.hi == doctest::Approx(4.0).epsilon(1e-15));
  CHECK_FALSE(b.contains(b.lo));
  CHECK_FALSE(b.contains(b.hi));

  CHECK(kind_of([] { k_interval(2, 27.0 / 32.0); }) == ErrorKind::EmptyInterval);
  CHECK(kind_of([] { k_interval(2, -0.1); }) == ErrorKind::Domain);
  CHECK(kind_of([] { k_interval(2, 1.0); }) == ErrorKind::Domain);
  try {
    k_interval(3, 7.0 / 12.0);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("7/12") != std::string::npos);
  }
}

TEST_CASE("coefficient A") {
  for (double delta : {0.0, 0.3, 0.7}) {
    CHECK(coeff_A(2, 1.0 / (1.0 - delta)) == doctest::Approx(4 * (1 - delta) / (3 - 4 * delta)).epsilon(1e-14));
  }
  CHECK(coeff_A(2, 1.75) == doctest::Approx(16.0 / 9.0).epsilon(1e-15));
  CHECK(coeff_A(3, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(kind_of([] { coeff_A(3, 2.0); }) == ErrorKind::Domain);
}

TEST_CASE("coefficient B") {
  for (double k : {0.7, 1.0, 2.5}) {
    for (double H : {1.0, 2.0, 3.3}) {
      CHECK(coeff_B(2, k, 0.0, H, -1.0) == doctest::Approx((2 * k + 1) * (H * H - 1)).epsilon(1e-14));
    }
  }
  CHECK(coeff_B(2, 1.0, 0.0, 2.0, -1.0) == doctest::Approx(9.0));
  for (double delta : {0.0, 0.25, 0.6}) {
    CHECK(coeff_B(2, 1.0 / (1.0 - delta), delta, 1.7, 0.0) == doctest::Approx(3 * 1.7 * 1.7).epsilon(1e-14));
  }
  CHECK(coeff_B(4, 15.0 / 16.0, 0.0, 1.0, 0.0) == doctest::Approx(11.0 / 4.0).epsilon(1e-15));
  // Positive ambient curvature is clipped to zero.
  CHECK(coeff_B(3, 1.0, 0.1, 1.2, 5.0) == doctest::Approx(coeff_B(3, 1.0, 0.1, 1.2, 0.0)));
}

TEST_CASE("mean curvature threshold") {
  CHECK(mean_curvature_threshold(0.0) == 0.0);
  CHECK(mean_curvature_threshold(-1.0) == doctest::Approx(2.0));
  CHECK(mean_curvature_threshold(5.0) == 0.0);
}

TEST_CASE("quotient bound examples and range") {
  CHECK(check_quotient_bound(2, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(check_quotient_bound(3, 1.0, 0.0) == doctest::Approx(5.0 / 4.0).epsilon(1e-15));
  CHECK(check_quotient_bound(4, 1.0, 0.0) == doctest::Approx(7.0 / 3.0).epsilon(1e-15));
  for (int n = 2; n <= 4; ++n) {
    const double top = delta_threshold_value(n);
    for (int i = 0; i < 20; ++i) {
      const double delta = top * i / 20.0;
      const KInterval iv = k_interval(n, delta);
      for (int j = 1; j < 50; ++j) {
        const double k = iv.lo + iv.width() * j / 50.0;
        const double q = check_quotient_bound(n, k, delta);
        CHECK(q < 4.0);
        CHECK(coeff_A(n, k) > 0.0);
      }
    }
  }
}

TEST_CASE("fixed-k sectional bound") {
  const BoundResult r = radius_bound_fixed_k({2, 0.0, 2.5, -1.0, std::nullopt}, 1.75);
  CHECK(r.c == doctest::Approx(4 * std::sqrt(2.0) / 9 * pi / std::sqrt(5.25)).epsilon(1e-13));
  CHECK(r.c == doctest::Approx(0.8618).epsilon(1e-4));
  CHECK(r.source == BoundSource::Sectional);

  const BoundResult flat = radius_bound_fixed_k({2, 0.0, 1.0, 0.0, std::nullopt}, 1.0);
  CHECK(flat.c == doctest::Approx(2 * pi / 3).epsilon(1e-14));

  const BoundResult bad = evaluate_bound_fixed_k({2, 0.0, 2.0, -1.0, std::nullopt}, 5.0 / 8.0);
  CHECK_FALSE(bad.hypotheses.k_admissible);
  CHECK_FALSE(bad.hypotheses.h_threshold);
  CHECK(std::isnan(bad.c));
  try {
    radius_bound_fixed_k({2, 0.0, 2.0, -1.0, std::nullopt}, 5.0 / 8.0);
    FAIL("expected a hypothesis violation");
  } catch (const HypothesisError& e) {
    CHECK_FALSE(e.flags().k_admissible);
    CHECK_FALSE(e.flags().h_threshold);
    CHECK(e.kind() == ErrorKind::HypothesisViolation);
  }
}

TEST_CASE("optimized sectional bound matches dense k scan") {
  const BoundResult r = radius_bound({2, 0.0, 2.5, -1.0, std::nullopt});
  CHECK(r.k_star == doctest::Approx(1.75).epsilon(1e-6));
  CHECK(r.c == doctest::Approx(0.8617924812).epsilon(1e-9));

  for (int n = 2; n <= 4; ++n) {
    for (double K : {-1.0, 0.0}) {
      for (double frac : {0.0, 0.5, 0.9}) {
        const double delta = frac * delta_threshold_value(n);
        const double H = mean_curvature_threshold(K) + 0.7;
        const double scan = oracle_min_c(n, delta, H, K);
        const BoundResult b = radius_bound({n, delta, H, K, std::nullopt});
        CAPTURE(n);
        CAPTURE(K);
        CAPTURE(delta);
        CHECK(b.c <= scan * (1 + 1e-12));
        CHECK(b.c == doctest::Approx(scan).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("H scaling of the optimized bound") {
  const double c3 = radius_bound({2, 0.0, 3.0, -1.0, std::nullopt}).c;
  const double c5 = radius_bound({2, 0.0, 5.0, -1.0, std::nullopt}).c;
  CHECK(c3 / c5 == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
  CHECK(kind_of([] { radius_bound({3, 7.0 / 12.0, 3.0, -1.0, std::nullopt}); }) == ErrorKind::EmptyInterval);
  CHECK(kind_of([] { radius_bound({3, 0.0, 1.0, -1.0, std::nullopt}); }) == ErrorKind::HypothesisViolation);
}

TEST_CASE("scalar curvature bound") {
  CHECK(radius_bound_scalar(0.0, 2.5, -6.0).c == doctest::Approx(2 * pi / (3 * std::sqrt(2.5 * 2.5 - 2))).epsilon(1e-14));
  CHECK(radius_bound_scalar(0.0, 2.5, -6.0).c == doctest::Approx(1.0159).epsilon(1e-4));
  CHECK(radius_bound_scalar(0.0, 1.0, 0.0).c == doctest::Approx(2 * pi / 3).epsilon(1e-14));
  CHECK(radius_bound_scalar(0.5, 1.0, 0.0).c == doctest::Approx(2 * pi / std::sqrt(6.0)).epsilon(1e-14));
  CHECK(radius_bound_scalar(0.0, 1.0, 0.0).source == BoundSource::Scalar);
  CHECK(kind_of([] { radius_bound_scalar(0.75, 1.0, 0.0); }) == ErrorKind::HypothesisViolation);
  CHECK(kind_of([] { radius_bound_scalar(0.0, 1.0, -3.0); }) == ErrorKind::HypothesisViolation);
}

TEST_CASE("scalar bound equals fixed-k sectional form at k = 1/(1-delta)") {
  for (double delta : {0.0, 0.2, 0.5, 0.7}) {
    for (double H : {0.5, 1.0, 2.0}) {
      const double k = 1.0 / (1.0 - delta);
      const double A = coeff_A(2, k);
      const double B = 3 * H * H;  // sectional B with K = 0 at this k
      const double direct = pi * std::sqrt(A / B);
      const double s = radius_bound_scalar(delta, H, 0.0).c;
      CHECK(std::abs(direct - s) <= 1e-12 * s);
      if (delta < 27.0 / 32.0) {
        const double fixed = radius_bound_fixed_k({2, delta, H, 0.0, std::nullopt}, k).c;
        CHECK(std::abs(fixed - s) <= 1e-12 * s);
      }
    }
  }
}

TEST_CASE("best bound selection") {
  const BoundResult both = best_bound({2, 0.0, 2.5, -1.0, -6.0});
  CHECK(both.source == BoundSource::Sectional);
  CHECK(both.c == doctest::Approx(0.8617924812).epsilon(1e-9));

  const BoundResult scalar_only = best_bound({2, 0.0, 1.6, -1.0, -6.0});
  CHECK(scalar_only.source == BoundSource::Scalar);
  CHECK(scalar_only.c == doctest::Approx(2 * pi / std::sqrt(3 * 1.68)).epsilon(1e-12));

  CHECK(kind_of([] { best_bound({3, 0.0, 1.0, -1.0, std::nullopt}); }) == ErrorKind::NoApplicableBound);
}

TEST_CASE("bound is nondecreasing in delta and dominates probed k") {
  for (int n = 2; n <= 4; ++n) {
    for (double K : {-1.0, 0.0}) {
      const double H = mean_curvature_threshold(K) + 1.0;
      double prev = 0.0;
      for (int i = 0; i < 25; ++i) {
        const double delta = 0.98 * delta_threshold_value(n) * i / 24.0;
        const BoundInput in{n, delta, H, K, std::nullopt};
        const BoundResult r = radius_bound(in);
        CHECK(r.c >= prev * (1 - 1e-12));
        prev = r.c;
        const KInterval iv = k_interval(n, delta);
        for (int j = 1; j < 20; ++j) {
          const BoundResult probe = evaluate_bound_fixed_k(in, iv.lo + iv.width() * j / 20.0);
          if (probe.hypotheses.all()) CHECK(r.c <= probe.c * (1 + 1e-12));
        }
      }
    }
  }
}

TEST_CASE("traceless inequality examples") {
  const TracelessMatrix zero(Eigen::MatrixXd::Zero(3, 3));
  CHECK(check_traceless_crude(zero).slack == 0.0);
  CHECK(check_traceless_crude(zero).holds);
  CHECK(check_potential_remainder(zero, 1.0, 0.0) == 0.0);

  Eigen::MatrixXd d(2, 2);
  d << 1, 0, 0, -1;
  const TracelessMatrix diag(d);
  CHECK(check_traceless_crude(diag).slack == doctest::Approx(0.0));
  CHECK(check_traceless_crude(diag).holds);

  const double eps = 1e-3;
  // k |Phi|^2 - 5/4 Phi_11^2 = (5/8 + eps) 2 - 5/4 = 2 eps: tight as k approaches the endpoint.
  CHECK(check_potential_remainder(diag, 5.0 / 8.0 + eps, 0.0) == doctest::Approx(2 * eps).epsilon(1e-9));
  CHECK(check_potential_remainder(diag, 5.0 / 8.0 + eps, 0.0) > 0.0);

  CHECK(kind_of([&] { check_potential_remainder(diag, 0.5, 0.0); }) == ErrorKind::PreconditionViolation);
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 0, 0, 0;
  CHECK(kind_of([&] { TracelessMatrix{bad}; }) == ErrorKind::Domain);
}

TEST_CASE("random traceless matrices satisfy both inequalities") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int n = 2; n <= 4; ++n) {
    double min_crude = INFINITY;
    double min_rem = INFINITY;
    for (int i = 0; i < 10000; ++i) {
      const TracelessMatrix phi = TracelessMatrix::random(n, rng, 0.1 + 10 * unit(rng));
      CHECK(std::abs(phi.entries().trace()) < 1e-10);
      const Eigen::MatrixXd& m = phi.entries();
      double off = 0.0;
      for (int j = 1; j < n; ++j) off += m(0, j) * m(0, j);
      const double crude = m.squaredNorm() - (n / (n - 1.0) * m(0, 0) * m(0, 0) + 2 * off);
      CHECK(check_traceless_crude(phi).slack == doctest::Approx(crude).epsilon(1e-9).scale(m.squaredNorm()));
      min_crude = std::min(min_crude, check_traceless_crude(phi).slack / std::max(1.0, m.squaredNorm()));

      const double delta = 0.999 * delta_threshold_value(n) * unit(rng);
      const KInterval iv = k_interval(n, delta);
      const double k = iv.lo + (1e-6 + (1 - 2e-6) * unit(rng)) * iv.width();
      min_rem = std::min(min_rem, check_potential_remainder(phi, k, delta) / std::max(1.0, m.squaredNorm()));
    }
    CAPTURE(n);
    CHECK(min_crude >= -1e-12);
    CHECK(min_rem >= -1e-12);
  }
}

TEST_CASE("Gauss contraction matches the unsimplified equation") {
  Eigen::MatrixXd zero2 = Eigen::MatrixXd::Zero(2, 2);
  for (double H : {0.0, 1.5, 2.5}) {
    CHECK(gauss_ricci_contraction(TracelessMatrix(zero2), H, -1.0) == doctest::Approx(H * H - 1));
  }
  CHECK(gauss_ricci_contraction(TracelessMatrix(zero2), 0.0, 0.0) == 0.0);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int n = 2; n <= 4; ++n) {
    for (int i = 0; i < 2000; ++i) {
      const TracelessMatrix phi = TracelessMatrix::random(n, rng, 2.0);
      const double H = u(rng);
      const double sum = (n - 1) * u(rng);
      const double expect = oracle_ricci(phi.entries(), H, sum);
      const double got = gauss_ricci_contraction(phi, H, sum);
      const double scale = std::max({1.0, std::abs(expect), phi.norm2(), H * H});
      CHECK(std::abs(got - expect) <= 1e-10 * scale);
    }
  }
}
