#pragma once

#include <array>
#include <vector>

namespace reactid {

/// Conforming triangulation of a planar domain.
///
/// Triangles are stored counterclockwise, so their signed area is positive.
/// Boundary edges are oriented along the boundary (domain on the left) and
/// together traverse it exactly once; each boundary edge belongs to exactly
/// one triangle. Assembly and the solvers accept any conforming nonobtuse
/// triangulation, not only the structured ones produced by build_rect_mesh().
/// A Mesh is immutable after construction and safe to share across threads.
struct Mesh {
  std::vector<std::array<double, 2>> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<int, 2>> boundary_edges;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int triangle_count() const { return static_cast<int>(triangles.size()); }
  int boundary_edge_count() const { return static_cast<int>(boundary_edges.size()); }
};

/// Uniform triangulation of the rectangle [0, x_len] x [0, y_len] with
/// nx by ny cells, each split along its lower-left to upper-right diagonal
/// into two right triangles. The result has (nx+1)(ny+1) nodes, 2*nx*ny
/// triangles and 2*(nx+ny) boundary edges. Nodes are numbered row by row,
/// node (ix, iy) -> iy*(nx+1) + ix, which fixes the sparsity pattern of all
/// assembled operators. All angles are <= 90 degrees, the mesh precondition
/// for the discrete maximum principle.
///
/// Throws std::invalid_argument for nonpositive extents or interval counts.
Mesh build_rect_mesh(double x_len, double y_len, int nx, int ny);

/// Area of triangle t: half the absolute cross product of two edge vectors.
double triangle_area(const Mesh& mesh, int t);
}  // namespace reactid
