#include "reactid/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>

#include "reactid/kernels.hpp"

namespace reactid {

namespace {

// Shared element kernels. Serial and parallel assembly both call these, so
// the two paths sum identical numbers in identical per-entry order and the
// assembled matrices match bit for bit.

void local_stiffness(const Mesh& mesh, const CoefficientSpec& coeff, int t, double out[3][3]) {
  const auto& tri = mesh.triangles[t];
  const auto& p0 = mesh.nodes[tri[0]];
  const auto& p1 = mesh.nodes[tri[1]];
  const auto& p2 = mesh.nodes[tri[2]];
  const double two_area = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
  const double area = 0.5 * two_area;

  const double cx = (p0[0] + p1[0] + p2[0]) / 3.0;
  const double cy = (p0[1] + p1[1] + p2[1]) / 3.0;
  const double k = coeff.diffusion(cx, cy);
  if (!(k > 0.0))
    throw std::domain_error("assemble_stiffness: diffusion coefficient " + std::to_string(k) +
                            " is not positive at centroid (" + std::to_string(cx) + ", " +
                            std::to_string(cy) + ")");

  // Gradients of the barycentric basis functions.
  const double gx[3] = {(p1[1] - p2[1]) / two_area, (p2[1] - p0[1]) / two_area,
                        (p0[1] - p1[1]) / two_area};
  const double gy[3] = {(p2[0] - p1[0]) / two_area, (p0[0] - p2[0]) / two_area,
                        (p1[0] - p0[0]) / two_area};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = k * area * (gx[i] * gx[j] + gy[i] * gy[j]);
}

void local_robin(const Mesh& mesh, const CoefficientSpec& coeff, int e, double out[2][2]) {
  const auto& edge = mesh.boundary_edges[e];
  const auto& a = mesh.nodes[edge[0]];
  const auto& b = mesh.nodes[edge[1]];
  const double h = std::hypot(b[0] - a[0], b[1] - a[1]);
  const double mx = 0.5 * (a[0] + b[0]);
  const double my = 0.5 * (a[1] + b[1]);
  const double mu = coeff.boundary_mu(mx, my);
  if (!(mu >= 0.0))
    throw std::domain_error("assemble_stiffness: boundary coefficient " + std::to_string(mu) +
                            " is negative at edge midpoint (" + std::to_string(mx) + ", " +
                            std::to_string(my) + ")");
  // Exact integral of products of linear functions on a segment.
  const double w = mu * h / 6.0;
  out[0][0] = 2.0 * w;
  out[0][1] = w;
  out[1][0] = w;
  out[1][1] = 2.0 * w;
}

// Node -> incident triangles and boundary edges, each list ascending.
struct NodeIncidence {
  std::vector<int> tri_offsets, tri_ids;
  std::vector<int> edge_offsets, edge_ids;
};

NodeIncidence build_incidence(const Mesh& mesh) {
  const int n = mesh.node_count();
  NodeIncidence inc;
  inc.tri_offsets.assign(n + 1, 0);
  inc.edge_offsets.assign(n + 1, 0);
  for (const auto& tri : mesh.triangles)
    for (int v : tri) ++inc.tri_offsets[v + 1];
  for (const auto& e : mesh.boundary_edges)
    for (int v : e) ++inc.edge_offsets[v + 1];
  for (int i = 0; i < n; ++i) {
    inc.tri_offsets[i + 1] += inc.tri_offsets[i];
    inc.edge_offsets[i + 1] += inc.edge_offsets[i];
  }
  inc.tri_ids.resize(inc.tri_offsets[n]);
  inc.edge_ids.resize(inc.edge_offsets[n]);
  std::vector<int> cursor(inc.tri_offsets.begin(), inc.tri_offsets.end() - 1);
  for (int t = 0; t < mesh.triangle_count(); ++t)
    for (int v : mesh.triangles[t]) inc.tri_ids[cursor[v]++] = t;
  cursor.assign(inc.edge_offsets.begin(), inc.edge_offsets.end() - 1);
  for (int e = 0; e < mesh.boundary_edge_count(); ++e)
    for (int v : mesh.boundary_edges[e]) inc.edge_ids[cursor[v]++] = e;
  return inc;
}

int local_index(const std::array<int, 3>& tri, int node) {
  if (tri[0] == node) return 0;
  if (tri[1] == node) return 1;
  return 2;
}

void check_field_size(const Mesh& mesh, const NodeField& f, const char* who) {
  if (static_cast<int>(f.size()) != mesh.node_count())
    throw std::invalid_argument(std::string(who) + ": field length " + std::to_string(f.size()) +
                                " does not match node count " +
                                std::to_string(mesh.node_count()));
}

}  // namespace

SparseMatrix assemble_stiffness(const Mesh& mesh, const CoefficientSpec& coeff) {
  const int n = mesh.node_count();
  const NodeIncidence inc = build_incidence(mesh);

  // Pattern: row i couples i with every vertex of its incident triangles.
  std::vector<std::vector<int>> row_cols(n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    auto& cols = row_cols[i];
    cols.push_back(i);
    for (int p = inc.tri_offsets[i]; p < inc.tri_offsets[i + 1]; ++p)
      for (int v : mesh.triangles[inc.tri_ids[p]]) cols.push_back(v);
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  }

  SparseMatrix A;
  A.n = n;
  A.row_offsets.assign(n + 1, 0);
  for (int i = 0; i < n; ++i)
    A.row_offsets[i + 1] = A.row_offsets[i] + static_cast<int>(row_cols[i].size());
  A.col_indices.resize(A.row_offsets[n]);
  A.values.assign(A.row_offsets[n], 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i)
    std::copy(row_cols[i].begin(), row_cols[i].end(), A.col_indices.begin() + A.row_offsets[i]);

  // Row-gather accumulation: each row is written by exactly one thread and
  // visits its triangles, then its boundary edges, in ascending order.
  // Coefficient evaluation may throw; exceptions must not escape the
  // parallel region, so the first one is captured and rethrown after it.
  std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    try {
      const int lo = A.row_offsets[i];
      const int hi = A.row_offsets[i + 1];
      auto slot = [&](int col) {
        const auto begin = A.col_indices.begin() + lo;
        const auto end = A.col_indices.begin() + hi;
        return lo + static_cast<int>(std::lower_bound(begin, end, col) - begin);
      };
      double local[3][3];
      for (int p = inc.tri_offsets[i]; p < inc.tri_offsets[i + 1]; ++p) {
        const int t = inc.tri_ids[p];
        local_stiffness(mesh, coeff, t, local);
        const auto& tri = mesh.triangles[t];
        const int li = local_index(tri, i);
        for (int lj = 0; lj < 3; ++lj) A.values[slot(tri[lj])] += local[li][lj];
      }
      double robin[2][2];
      for (int p = inc.edge_offsets[i]; p < inc.edge_offsets[i + 1]; ++p) {
        const int e = inc.edge_ids[p];
        local_robin(mesh, coeff, e, robin);
        const auto& edge = mesh.boundary_edges[e];
        const int li = edge[0] == i ? 0 : 1;
        for (int lj = 0; lj < 2; ++lj) A.values[slot(edge[lj])] += robin[li][lj];
      }
    } catch (...) {
#pragma omp critical(reactid_assembly_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return A;
}

NodeField assemble_lumped_mass(const Mesh& mesh) {
  const int n = mesh.node_count();
  const NodeIncidence inc = build_incidence(mesh);
  NodeField m(n, 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int p = inc.tri_offsets[i]; p < inc.tri_offsets[i + 1]; ++p)
      sum += triangle_area(mesh, inc.tri_ids[p]) / 3.0;
    m[i] = sum;
  }
  return m;
}

NodeField weighted_lumped_mass(const Mesh& mesh, const NodeField& c) {
  check_field_size(mesh, c, "weighted_lumped_mass");
  NodeField d = assemble_lumped_mass(mesh);
  for (size_t i = 0; i < d.size(); ++i) d[i] *= c[i];
  return d;
}

NodeField lumped_load(const Mesh& mesh, const NodeField& f_values) {
  check_field_size(mesh, f_values, "lumped_load");
  NodeField load = assemble_lumped_mass(mesh);
  for (size_t i = 0; i < load.size(); ++i) load[i] *= f_values[i];
  return load;
}

NodeField apply_elliptic(const Mesh& mesh, const SparseMatrix& K, const NodeField& m,
                         const NodeField& v) {
  check_field_size(mesh, v, "apply_elliptic");
  check_field_size(mesh, m, "apply_elliptic");
  if (K.n != mesh.node_count())
    throw std::invalid_argument("apply_elliptic: matrix dimension does not match mesh");
  NodeField out(v.size());
  kernels::matvec(K, v, out);
  for (size_t i = 0; i < out.size(); ++i) {
    if (!(m[i] > 0.0))
      throw std::logic_error("apply_elliptic: nonpositive lumped mass at node " +
                             std::to_string(i));
    out[i] /= m[i];
  }
  return out;
}

namespace serial {

SparseMatrix assemble_stiffness(const Mesh& mesh, const CoefficientSpec& coeff) {
  std::vector<Triplet> triplets;
  triplets.reserve(9 * mesh.triangles.size() + 4 * mesh.boundary_edges.size());
  double local[3][3];
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    local_stiffness(mesh, coeff, t, local);
    const auto& tri = mesh.triangles[t];
    for (int li = 0; li < 3; ++li)
      for (int lj = 0; lj < 3; ++lj) triplets.push_back({tri[li], tri[lj], local[li][lj]});
  }
  double robin[2][2];
  for (int e = 0; e < mesh.boundary_edge_count(); ++e) {
    local_robin(mesh, coeff, e, robin);
    const auto& edge = mesh.boundary_edges[e];
    for (int li = 0; li < 2; ++li)
      for (int lj = 0; lj < 2; ++lj) triplets.push_back({edge[li], edge[lj], robin[li][lj]});
  }
  return from_triplets(mesh.node_count(), triplets);
}

NodeField assemble_lumped_mass(const Mesh& mesh) {
  NodeField m(mesh.node_count(), 0.0);
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const double third = triangle_area(mesh, t) / 3.0;
    for (int v : mesh.triangles[t]) m[v] += third;
  }
  return m;
}

}  // namespace serial

}  // namespace reactid
