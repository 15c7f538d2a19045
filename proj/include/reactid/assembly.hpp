#pragma once

#include <functional>

#include "reactid/csr.hpp"
#include "reactid/field.hpp"
#include "reactid/mesh.hpp"

namespace reactid {

/// Elliptic-operator coefficients: diffusion k(x) with 0 < k everywhere, and
/// the Robin boundary weight mu(x) >= 0. Both are checked at every
/// quadrature point during assembly (k at triangle centroids, mu at boundary
/// edge midpoints); a violation throws std::domain_error.
struct CoefficientSpec {
  std::function<double(double, double)> diffusion;
  std::function<double(double, double)> boundary_mu;

  static CoefficientSpec constant(double k, double mu) {
    return {[k](double, double) { return k; }, [mu](double, double) { return mu; }};
  }
};

/// Stiffness matrix of the bilinear form
///   a(u, v) = int_Omega k grad u . grad v dx + int_boundary mu u v ds
/// on piecewise-linear elements. k is evaluated at triangle centroids
/// (exact for piecewise-constant k), the boundary term uses exact
/// integration of linear products on each edge with mu at the edge midpoint.
/// The result is symmetric and positive semidefinite. On nonobtuse meshes
/// the gradient part contributes only nonpositive off-diagonal entries; the
/// boundary term adds +mu h/6 on boundary-edge pairs, so the matrix keeps
/// the M-matrix sign structure the discrete maximum principle needs
/// whenever mu h stays below the gradient coupling (mu h <= 3 k on
/// structured right-triangle meshes).
///
/// The element loop runs in parallel row by row; for a fixed mesh ordering
/// the result is bit-for-bit identical to serial::assemble_stiffness.
SparseMatrix assemble_stiffness(const Mesh& mesh, const CoefficientSpec& coeff);

/// Lumped mass diagonal, m_i = sum over triangles containing i of area/3.
/// Equals the row sums of the consistent mass matrix; all entries positive.
NodeField assemble_lumped_mass(const Mesh& mesh);

/// Reaction diagonal D_i = c_i * m_i.
NodeField weighted_lumped_mass(const Mesh& mesh, const NodeField& c);

/// Lumped load vector F_i = m_i * f_values_i from nodal samples of f.
NodeField lumped_load(const Mesh& mesh, const NodeField& f_values);

/// Nodal representation of the elliptic operator applied to v under mass
/// lumping: (K v)_i / m_i.
NodeField apply_elliptic(const Mesh& mesh, const SparseMatrix& K, const NodeField& m,
                         const NodeField& v);

namespace serial {
/// Triplet-based reference assembly, kept for tests and the benchmark.
SparseMatrix assemble_stiffness(const Mesh& mesh, const CoefficientSpec& coeff);
NodeField assemble_lumped_mass(const Mesh& mesh);
}  // namespace serial

}  // namespace reactid
