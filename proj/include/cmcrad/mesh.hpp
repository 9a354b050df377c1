#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace cmcrad {

/// Coordinate model the vertices live in.
enum class AmbientModel {
  /// Plain Euclidean coordinates; used for kappa = 0 and for flat test patches.
  Euclidean,
  /// Minkowski R^{3,1}, <x,x> = -1/|kappa|.
  Hyperboloid,
  /// Round S^3 in R^4, |x|^2 = 1/kappa.
  Sphere,
};

/// Triangulated disk. For caps, the surface is an umbilic sphere of intrinsic curvature
/// `c_int` centred at the model origin (Euclidean) or at the model's base point (first
/// coordinate axis); edge lengths are intrinsic great-circle arcs on it. With c_int == 0
/// the mesh is planar and edge lengths are Euclidean.
struct TriMesh {
  AmbientModel model = AmbientModel::Euclidean;
  double kappa = 0.0;
  double H = 0.0;
  double c_int = 0.0;
  /// Cap radius; 0 for meshes not generated as caps.
  double rho = 0.0;

  Eigen::MatrixXd vertices;
  std::vector<std::array<int, 3>> faces;
  std::vector<char> boundary;
  /// |A|^2 + Ric(nu) per vertex; the delta factor is applied at assembly.
  Eigen::VectorXd curvature_term;
  /// Exact intrinsic distance of each vertex from the cap centre (caps only).
  Eigen::VectorXd polar_distance;

  int vertex_count() const { return static_cast<int>(vertices.rows()); }
  int interior_count() const;
  double edge_length(int i, int j) const;
  /// Unique undirected edges (i < j), sorted.
  std::vector<std::array<int, 2>> edges() const;
  double max_edge_length() const;
  double total_area() const;
};

/// Flat triangle area from its three side lengths (Kahan's stable Heron formula).
double triangle_area(double a, double b, double c);

/// Cap of intrinsic radius rho on the umbilic surface of mean curvature H in the
/// 3-dimensional space form of curvature kappa. Built from 2^level concentric rings,
/// ring i carrying 6 i vertices. Throws InvalidCap for rho outside (0, pi/sqrt(c_int)).
TriMesh build_cap_mesh(double kappa, double H, double rho, int level);

/// Largest deviation of a vertex from the model constraint (hyperboloid, S^3, or the
/// Euclidean sphere of radius 1/H).
double model_constraint_residual(const TriMesh& mesh);

/// V - E + F.
int euler_characteristic(const TriMesh& mesh);

/// Plain-text polygon export: "OFF" (3 coordinates) or "4OFF" (4 coordinates) header,
/// counts, vertex lines, then "3 i j k" face lines.
void write_polygon_mesh(const TriMesh& mesh, std::ostream& out);

/// Max over interior vertices of the shortest edge-path distance to the boundary.
/// Throws NoBoundary when no vertex is flagged.
double intrinsic_radius(const TriMesh& mesh);

/// Worst ratio of edge-path distance to the exact distance to the cap boundary
/// (rho - polar_distance) over interior vertices. Caps only.
double edge_path_distortion(const TriMesh& mesh);

}  // namespace cmcrad
