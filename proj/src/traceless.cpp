#include "cmcrad/traceless.hpp"

#include <cmath>
#include <string>

#include "cmcrad/error.hpp"

namespace cmcrad {

TracelessMatrix::TracelessMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw Error(ErrorKind::Domain, "traceless matrix must be square and nonempty");
  }
  const double scale = std::max(1.0, entries_.norm());
  if ((entries_ - entries_.transpose()).norm() > 1e-12 * scale) {
    throw Error(ErrorKind::Domain, "matrix is not symmetric");
  }
  if (std::abs(entries_.trace()) > 1e-12 * scale) {
    throw Error(ErrorKind::Domain, "matrix trace " + std::to_string(entries_.trace()) + " is not zero");
  }
}

TracelessMatrix TracelessMatrix::random(int n, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      m(i, j) = m(j, i) = normal(rng);
    }
  }
  m.diagonal().array() -= m.trace() / n;
  return TracelessMatrix(std::move(m));
}

double TracelessMatrix::first_row_offdiag2() const {
  return entries_.row(0).tail(n() - 1).squaredNorm();
}

InequalitySlack check_traceless_crude(const TracelessMatrix& phi) {
  const int n = phi.n();
  const double lhs = phi.norm2();
  const double rhs = static_cast<double>(n) / (n - 1) * phi.phi11() * phi.phi11() + 2.0 * phi.first_row_offdiag2();
  const double slack = lhs - rhs;
  return {slack, slack >= -1e-12 * std::max(1.0, lhs)};
}

double check_potential_remainder(const TracelessMatrix& phi, double k, double delta) {
  const int n = phi.n();
  const double k_min = 5.0 * (n - 1) / (4.0 * n * (1.0 - delta));
  if (!(k > k_min)) {
    throw Error(ErrorKind::PreconditionViolation,
                "k = " + std::to_string(k) + " is not above 5(n-1)/(4n(1-delta)) = " + std::to_string(k_min));
  }
  return k * (1.0 - delta) * phi.norm2() - 1.25 * phi.phi11() * phi.phi11() - phi.first_row_offdiag2();
}

double gauss_ricci_contraction(const TracelessMatrix& phi, double H, double ambient_sectional_sum) {
  const int n = phi.n();
  const double p11 = phi.phi11();
  return ambient_sectional_sum - p11 * p11 + (n - 2) * p11 * H + (n - 1) * H * H - phi.first_row_offdiag2();
}

}  // namespace cmcrad
