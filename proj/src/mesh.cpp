#include "reactid/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace reactid {

Mesh build_rect_mesh(double x_len, double y_len, int nx, int ny) {
  if (!(x_len > 0.0) || !(y_len > 0.0))
    throw std::invalid_argument("build_rect_mesh: extents must be positive");
  if (nx < 1 || ny < 1)
    throw std::invalid_argument("build_rect_mesh: interval counts must be >= 1");

  Mesh mesh;
  mesh.nodes.reserve(static_cast<size_t>(nx + 1) * (ny + 1));
  const double hx = x_len / nx;
  const double hy = y_len / ny;
  for (int iy = 0; iy <= ny; ++iy)
    for (int ix = 0; ix <= nx; ++ix)
      mesh.nodes.push_back({ix * hx, iy * hy});

  auto node_id = [nx](int ix, int iy) { return iy * (nx + 1) + ix; };

  // Two CCW right triangles per cell, split along the same diagonal.
  mesh.triangles.reserve(static_cast<size_t>(2) * nx * ny);
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const int a = node_id(ix, iy);
      const int b = node_id(ix + 1, iy);
      const int c = node_id(ix + 1, iy + 1);
      const int d = node_id(ix, iy + 1);
      mesh.triangles.push_back({a, b, c});
      mesh.triangles.push_back({a, c, d});
    }
  }

  // Boundary edges in traversal order: bottom, right, top, left.
  mesh.boundary_edges.reserve(static_cast<size_t>(2) * (nx + ny));
  for (int ix = 0; ix < nx; ++ix)
    mesh.boundary_edges.push_back({node_id(ix, 0), node_id(ix + 1, 0)});
  for (int iy = 0; iy < ny; ++iy)
    mesh.boundary_edges.push_back({node_id(nx, iy), node_id(nx, iy + 1)});
  for (int ix = nx; ix > 0; --ix)
    mesh.boundary_edges.push_back({node_id(ix, ny), node_id(ix - 1, ny)});
  for (int iy = ny; iy > 0; --iy)
    mesh.boundary_edges.push_back({node_id(0, iy), node_id(0, iy - 1)});

  return mesh;
}

double triangle_area(const Mesh& mesh, int t) {
  if (t < 0 || t >= mesh.triangle_count())
    throw std::out_of_range("triangle_area: bad triangle index " + std::to_string(t));
  const auto& tri = mesh.triangles[t];
  const auto& p0 = mesh.nodes[tri[0]];
  const auto& p1 = mesh.nodes[tri[1]];
  const auto& p2 = mesh.nodes[tri[2]];
  const double cross = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
  return 0.5 * std::abs(cross);
}

}  // namespace reactid
