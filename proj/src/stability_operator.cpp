#include "cmcrad/stability_operator.hpp"

#include <cmath>
#include <string>

#include <Eigen/SparseCholesky>

#include "cmcrad/error.hpp"

namespace cmcrad {

namespace {

double cotangent_with_area(double opposite, double side1, double side2, double area) {
  return (side1 * side1 + side2 * side2 - opposite * opposite) / (4.0 * area);
}

}  // namespace

double corner_cotangent(double opposite, double side1, double side2) {
  return cotangent_with_area(opposite, side1, side2, triangle_area(opposite, side1, side2));
}

SpectralProblem assemble_stability(const TriMesh& mesh, double delta) {
  const int nv = mesh.vertex_count();
  if (mesh.faces.empty()) throw Error(ErrorKind::Domain, "mesh has no faces");
  if (mesh.curvature_term.size() != nv || static_cast<int>(mesh.boundary.size()) != nv) {
    throw Error(ErrorKind::Domain, "mesh potential or boundary flags missing");
  }

  std::vector<std::array<double, 3>> lengths;  // side opposite corner c
  std::vector<double> areas;
  lengths.reserve(mesh.faces.size());
  areas.reserve(mesh.faces.size());
  double area_sum = 0.0;
  for (const auto& f : mesh.faces) {
    const std::array<double, 3> l{mesh.edge_length(f[1], f[2]), mesh.edge_length(f[2], f[0]),
                                  mesh.edge_length(f[0], f[1])};
    lengths.push_back(l);
    areas.push_back(triangle_area(l[0], l[1], l[2]));
    area_sum += areas.back();
  }
  const double mean_area = area_sum / static_cast<double>(areas.size());

  std::vector<Eigen::Triplet<double>> k_entries;
  k_entries.reserve(12 * mesh.faces.size());
  Eigen::VectorXd lumped = Eigen::VectorXd::Zero(nv);
  for (std::size_t t = 0; t < mesh.faces.size(); ++t) {
    const auto& f = mesh.faces[t];
    const auto& l = lengths[t];
    const double area = areas[t];
    if (!(area >= 1e-14 * mean_area)) {
      throw Error(ErrorKind::DegenerateTriangle, "face " + std::to_string(t) + " has area " + std::to_string(area));
    }
    for (int c = 0; c < 3; ++c) {
      const int i = f[(c + 1) % 3];
      const int j = f[(c + 2) % 3];
      const double w = 0.5 * cotangent_with_area(l[c], l[(c + 1) % 3], l[(c + 2) % 3], area);
      k_entries.emplace_back(i, j, -w);
      k_entries.emplace_back(j, i, -w);
      k_entries.emplace_back(i, i, w);
      k_entries.emplace_back(j, j, w);
      lumped[f[c]] += area / 3.0;
    }
  }

  SpectralProblem p;
  p.stiffness.resize(nv, nv);
  p.stiffness.setFromTriplets(k_entries.begin(), k_entries.end());
  p.mass.resize(nv, nv);
  std::vector<Eigen::Triplet<double>> m_entries;
  for (int v = 0; v < nv; ++v) m_entries.emplace_back(v, v, lumped[v]);
  p.mass.setFromTriplets(m_entries.begin(), m_entries.end());
  p.potential = (1.0 - delta) * mesh.curvature_term;

  const Eigen::VectorXd row_sums = p.stiffness * Eigen::VectorXd::Ones(nv);
  const double diag_scale = p.stiffness.diagonal().cwiseAbs().maxCoeff();
  if (row_sums.cwiseAbs().maxCoeff() > 1e-10 * diag_scale) {
    throw Error(ErrorKind::Domain, "stiffness does not annihilate constants");
  }

  std::vector<int> reduced(nv, -1);
  for (int v = 0; v < nv; ++v) {
    if (!mesh.boundary[v]) {
      reduced[v] = static_cast<int>(p.interior.size());
      p.interior.push_back(v);
    }
  }
  const int ni = static_cast<int>(p.interior.size());
  std::vector<Eigen::Triplet<double>> a_entries;
  for (int col = 0; col < p.stiffness.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(p.stiffness, col); it; ++it) {
      const int r = reduced[it.row()];
      const int c = reduced[it.col()];
      if (r >= 0 && c >= 0) a_entries.emplace_back(r, c, it.value());
    }
  }
  p.mass_interior.resize(ni);
  for (int r = 0; r < ni; ++r) {
    const int v = p.interior[r];
    p.mass_interior[r] = lumped[v];
    a_entries.emplace_back(r, r, -p.potential[v] * lumped[v]);
  }
  p.operator_interior.resize(ni, ni);
  p.operator_interior.setFromTriplets(a_entries.begin(), a_entries.end());
  return p;
}

DirichletEigenpair smallest_dirichlet_eigenpair(const SpectralProblem& problem, double tol, int max_iterations) {
  const Eigen::Index ni = problem.operator_interior.rows();
  if (ni == 0) throw Error(ErrorKind::Domain, "no interior vertices");

  const Eigen::VectorXd& m = problem.mass_interior;
  double potential_max = 0.0;
  for (int v : problem.interior) potential_max = std::max(potential_max, problem.potential[v]);

  double shift = -potential_max;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  bool factored = false;
  for (int attempt = 0; attempt < 5 && !factored; ++attempt) {
    Eigen::SparseMatrix<double> shifted = problem.operator_interior;
    shifted.diagonal() -= shift * m;
    solver.compute(shifted);
    factored = solver.info() == Eigen::Success && (solver.vectorD().array() > 0.0).all();
    if (!factored) shift -= 0.1 * std::abs(shift) + 1.0;
  }
  if (!factored) throw Error(ErrorKind::NonConvergence, "singular-shift retry exhausted");

  auto rayleigh = [&](const Eigen::VectorXd& x) {
    return x.dot(problem.operator_interior * x) / x.dot(m.cwiseProduct(x));
  };

  Eigen::VectorXd x = Eigen::VectorXd::Ones(ni);
  x /= std::sqrt(x.dot(m.cwiseProduct(x)));
  double value = rayleigh(x);
  const double scale = std::max(potential_max, 1e-300);
  for (int it = 1; it <= max_iterations; ++it) {
    const Eigen::VectorXd rhs = m.cwiseProduct(x);
    x = solver.solve(rhs);
    x /= std::sqrt(x.dot(m.cwiseProduct(x)));
    const double next = rayleigh(x);
    const bool done = std::abs(next - value) < tol * std::max(std::abs(next), scale);
    value = next;
    if (done) return {value, x, it};
  }
  throw Error(ErrorKind::NonConvergence, "inverse iteration hit the iteration cap");
}

double lambda1_dirichlet(const SpectralProblem& problem, double tol) {
  return smallest_dirichlet_eigenpair(problem, tol).value;
}

}  // namespace cmcrad
