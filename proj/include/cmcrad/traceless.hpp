#pragma once

#include <random>

#include <Eigen/Dense>

namespace cmcrad {

/// Symmetric traceless n x n matrix: the umbilicity defect of a shape operator.
class TracelessMatrix {
public:
  /// Validates symmetry and trace (both to 1e-12 relative to the Frobenius norm).
  explicit TracelessMatrix(Eigen::MatrixXd entries);

  /// Gaussian symmetric matrix projected onto the traceless subspace.
  static TracelessMatrix random(int n, std::mt19937_64& rng, double scale = 1.0);

  int n() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }

  /// |Phi|^2
  double norm2() const { return entries_.squaredNorm(); }
  double phi11() const { return entries_(0, 0); }
  /// sum_{j>=2} Phi_1j^2
  double first_row_offdiag2() const;

private:
  Eigen::MatrixXd entries_;
};

struct InequalitySlack {
  double slack = 0.0;
  bool holds = true;
};

/// |Phi|^2 - (n/(n-1) Phi_11^2 + 2 sum_{j>=2} Phi_1j^2); holds when slack >= -1e-12 |Phi|^2.
InequalitySlack check_traceless_crude(const TracelessMatrix& phi);

/// k(1-d)|Phi|^2 - 5/4 Phi_11^2 - sum_{j>=2} Phi_1j^2.
/// Throws PreconditionViolation unless k > 5(n-1)/(4n(1-d)).
double check_potential_remainder(const TracelessMatrix& phi, double k, double delta);

/// Ricci curvature R_11 of the hypersurface from the contracted Gauss equation with
/// shape operator H I + Phi; `ambient_sectional_sum` is sum_{j>=2} of the ambient R_1j1j.
double gauss_ricci_contraction(const TracelessMatrix& phi, double H, double ambient_sectional_sum);

}  // namespace cmcrad
