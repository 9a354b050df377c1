#include "cmcrad/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <queue>

#include "cmcrad/error.hpp"
#include "cmcrad/space_forms.hpp"

namespace cmcrad {

namespace {

Eigen::Vector3d spatial_part(const TriMesh& mesh, int i) {
  if (mesh.model == AmbientModel::Euclidean) return mesh.vertices.row(i).head<3>().transpose();
  return mesh.vertices.row(i).segment<3>(1).transpose();
}

// Multi-source Dijkstra from the boundary set over edge lengths.
std::vector<double> boundary_distances(const TriMesh& mesh) {
  const int nv = mesh.vertex_count();
  std::vector<std::vector<std::pair<int, double>>> adjacency(nv);
  for (const auto& [i, j] : mesh.edges()) {
    const double len = mesh.edge_length(i, j);
    adjacency[i].emplace_back(j, len);
    adjacency[j].emplace_back(i, len);
  }

  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  std::vector<double> dist(nv, std::numeric_limits<double>::infinity());
  for (int v = 0; v < nv; ++v) {
    if (mesh.boundary[v]) {
      dist[v] = 0.0;
      heap.emplace(0.0, v);
    }
  }
  if (heap.empty()) throw Error(ErrorKind::NoBoundary, "mesh has no boundary vertices");

  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (const auto& [w, len] : adjacency[v]) {
      if (d + len < dist[w]) {
        dist[w] = d + len;
        heap.emplace(dist[w], w);
      }
    }
  }
  return dist;
}

}  // namespace

int TriMesh::interior_count() const {
  return static_cast<int>(std::count(boundary.begin(), boundary.end(), 0));
}

double TriMesh::edge_length(int i, int j) const {
  if (c_int == 0.0) return (vertices.row(i) - vertices.row(j)).norm();
  const Eigen::Vector3d a = spatial_part(*this, i);
  const Eigen::Vector3d b = spatial_part(*this, j);
  const double angle = std::atan2(a.cross(b).norm(), a.dot(b));
  return angle / std::sqrt(c_int);
}

std::vector<std::array<int, 2>> TriMesh::edges() const {
  std::vector<std::array<int, 2>> out;
  out.reserve(3 * faces.size());
  for (const auto& f : faces) {
    for (int e = 0; e < 3; ++e) {
      const int a = f[e];
      const int b = f[(e + 1) % 3];
      out.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double TriMesh::max_edge_length() const {
  double h = 0.0;
  for (const auto& [i, j] : edges()) h = std::max(h, edge_length(i, j));
  return h;
}

double TriMesh::total_area() const {
  double area = 0.0;
  for (const auto& f : faces) {
    area += triangle_area(edge_length(f[1], f[2]), edge_length(f[2], f[0]), edge_length(f[0], f[1]));
  }
  return area;
}

double triangle_area(double a, double b, double c) {
  std::array<double, 3> s{a, b, c};
  std::sort(s.begin(), s.end(), std::greater<>());
  const auto [x, y, z] = s;
  const double p = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
  return p > 0.0 ? 0.25 * std::sqrt(p) : 0.0;
}

TriMesh build_cap_mesh(double kappa, double H, double rho, int level) {
  if (level < 0 || level > 12) throw Error(ErrorKind::Domain, "mesh level must lie in [0, 12]");
  const SphereGeometry g = sphere_from_H(2, kappa, H);
  make_cap_case(g, 0.0, rho);  // validates rho

  TriMesh mesh;
  mesh.kappa = kappa;
  mesh.H = H;
  mesh.c_int = g.c_int;
  mesh.rho = rho;
  mesh.model = kappa == 0.0 ? AmbientModel::Euclidean : (kappa < 0.0 ? AmbientModel::Hyperboloid : AmbientModel::Sphere);

  const int rings = 1 << level;
  const int nv = 1 + 3 * rings * (rings + 1);
  const int dim = mesh.model == AmbientModel::Euclidean ? 3 : 4;
  mesh.vertices.resize(nv, dim);
  mesh.boundary.assign(nv, 0);
  mesh.polar_distance.resize(nv);
  mesh.curvature_term = Eigen::VectorXd::Constant(nv, g.normA2 + g.ric_nu);

  // Model embedding of the unit direction u about the sphere's centre.
  const double sqrt_c = std::sqrt(g.c_int);
  auto place = [&](int v, double s, double phi) {
    const double theta = s * sqrt_c;
    const Eigen::Vector3d u(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
    if (mesh.model == AmbientModel::Euclidean) {
      mesh.vertices.row(v) = g.r_ambient * u.transpose();
    } else {
      const double a = std::sqrt(std::abs(kappa));
      const double ar = a * g.r_ambient;
      const bool hyp = mesh.model == AmbientModel::Hyperboloid;
      mesh.vertices(v, 0) = (hyp ? std::cosh(ar) : std::cos(ar)) / a;
      mesh.vertices.row(v).tail<3>() = ((hyp ? std::sinh(ar) : std::sin(ar)) / a) * u.transpose();
    }
    mesh.polar_distance[v] = s;
  };

  place(0, 0.0, 0.0);
  auto ring_start = [](int i) { return i == 0 ? 0 : 1 + 3 * i * (i - 1); };
  for (int i = 1; i <= rings; ++i) {
    const int count = 6 * i;
    const double s = rho * i / rings;
    for (int j = 0; j < count; ++j) {
      const int v = ring_start(i) + j;
      place(v, s, 2.0 * std::numbers::pi * j / count);
      mesh.boundary[v] = i == rings;
    }
  }

  // Each of the 6 sectors between ring i and ring i+1 is a strip of 2i+1 triangles.
  mesh.faces.reserve(6 * rings * rings);
  for (int i = 0; i < rings; ++i) {
    const int inner_count = std::max(1, 6 * i);
    const int outer_count = 6 * (i + 1);
    auto inner = [&](int t) { return ring_start(i) + (i == 0 ? 0 : t % inner_count); };
    auto outer = [&](int t) { return ring_start(i + 1) + t % outer_count; };
    for (int sector = 0; sector < 6; ++sector) {
      const int in0 = sector * i;
      const int out0 = sector * (i + 1);
      for (int t = 0; t <= i; ++t) {
        mesh.faces.push_back({outer(out0 + t), outer(out0 + t + 1), inner(in0 + t)});
      }
      for (int t = 0; t < i; ++t) {
        mesh.faces.push_back({inner(in0 + t), outer(out0 + t + 1), inner(in0 + t + 1)});
      }
    }
  }
  return mesh;
}

double model_constraint_residual(const TriMesh& mesh) {
  double worst = 0.0;
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const auto x = mesh.vertices.row(v);
    double residual = 0.0;
    switch (mesh.model) {
      case AmbientModel::Euclidean:
        if (mesh.c_int == 0.0) return 0.0;
        residual = x.squaredNorm() - 1.0 / (mesh.H * mesh.H);
        break;
      case AmbientModel::Hyperboloid:
        residual = -x(0) * x(0) + x.tail(3).squaredNorm() + 1.0 / std::abs(mesh.kappa);
        break;
      case AmbientModel::Sphere:
        residual = x.squaredNorm() - 1.0 / mesh.kappa;
        break;
    }
    worst = std::max(worst, std::abs(residual));
  }
  return worst;
}

int euler_characteristic(const TriMesh& mesh) {
  return mesh.vertex_count() - static_cast<int>(mesh.edges().size()) + static_cast<int>(mesh.faces.size());
}

void write_polygon_mesh(const TriMesh& mesh, std::ostream& out) {
  out << (mesh.vertices.cols() == 4 ? "4OFF" : "OFF") << '\n';
  out << mesh.vertex_count() << ' ' << mesh.faces.size() << " 0\n";
  out << std::setprecision(17);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    for (int k = 0; k < mesh.vertices.cols(); ++k) {
      out << (k ? " " : "") << mesh.vertices(v, k);
    }
    out << '\n';
  }
  for (const auto& f : mesh.faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

double intrinsic_radius(const TriMesh& mesh) {
  const std::vector<double> dist = boundary_distances(mesh);
  double radius = 0.0;
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (!mesh.boundary[v]) radius = std::max(radius, dist[v]);
  }
  return radius;
}

double edge_path_distortion(const TriMesh& mesh) {
  if (mesh.rho <= 0.0 || mesh.polar_distance.size() != mesh.vertex_count()) {
    throw Error(ErrorKind::Domain, "edge-path distortion needs a generated cap");
  }
  const std::vector<double> dist = boundary_distances(mesh);
  double worst = 1.0;
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (mesh.boundary[v]) continue;
    worst = std::max(worst, dist[v] / (mesh.rho - mesh.polar_distance[v]));
  }
  return worst;
}

}  // namespace cmcrad
