#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "cmcrad/mesh.hpp"

namespace cmcrad {

/// Discrete delta-stability form on a triangulated disk: piecewise-linear stiffness
/// with cotangent weights, lumped mass, and the potential folded in as -q_i m_i.
struct SpectralProblem {
  /// Full cotangent stiffness (all vertices), symmetric PSD with constants in the kernel.
  Eigen::SparseMatrix<double> stiffness;
  /// Diagonal lumped mass (all vertices), one third of the adjacent triangle areas.
  Eigen::SparseMatrix<double> mass;
  /// (1 - delta)(|A|^2 + Ric(nu)) per vertex.
  Eigen::VectorXd potential;

  /// Interior vertex ids, in increasing order; row r of the reduced system is interior[r].
  std::vector<int> interior;
  /// K_II - diag(q m)_II after Dirichlet elimination.
  Eigen::SparseMatrix<double> operator_interior;
  Eigen::VectorXd mass_interior;
};

/// Cotangent of the corner opposite side `opposite` in a flat triangle with the given sides.
double corner_cotangent(double opposite, double side1, double side2);

/// Throws DegenerateTriangle when a face has area below 1e-14 of the mean face area.
SpectralProblem assemble_stability(const TriMesh& mesh, double delta);

struct DirichletEigenpair {
  double value = 0.0;
  /// Mass-normalized, on interior vertices.
  Eigen::VectorXd vector;
  int iterations = 0;
};

/// Smallest generalized eigenpair of (operator_interior, mass_interior) by shifted inverse
/// iteration. The shift sits below -max(potential), which keeps the shifted matrix positive
/// definite. Converged when successive Rayleigh quotients differ by less than tol relatively.
DirichletEigenpair smallest_dirichlet_eigenpair(const SpectralProblem& problem, double tol = 1e-13,
                                                int max_iterations = 20000);

double lambda1_dirichlet(const SpectralProblem& problem, double tol = 1e-13);

}  // namespace cmcrad
