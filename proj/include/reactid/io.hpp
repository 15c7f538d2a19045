#pragma once

#include <string>
#include <vector>

#include "reactid/field.hpp"
#include "reactid/identification.hpp"
#include "reactid/mesh.hpp"

namespace reactid {

/// Nodal field as CSV: header `x1,x2,value`, one row per node in mesh node
/// order, every number at 17 significant digits so doubles round-trip
/// exactly through the decimal text.
void write_field_csv(const std::string& path, const Mesh& mesh, const NodeField& values);

/// Values column of a field CSV. Throws std::runtime_error on a missing
/// file, a wrong header, or a malformed row.
NodeField read_field_csv(const std::string& path);

/// read_field_csv plus a node-count check against the mesh.
NodeField read_psi_for_mesh(const std::string& path, const Mesh& mesh);

/// Legacy ASCII VTK unstructured grid (triangles, one POINT_DATA scalar
/// array) for surface plots.
void write_vtk(const std::string& path, const Mesh& mesh, const NodeField& values,
               const std::string& field_name);

/// Per-iteration history as CSV `k,eps_inf,eps_2,delta_c_inf,min_c,max_increase`.
void write_convergence_csv(const std::string& path, const std::vector<IterationRecord>& history);

}  // namespace reactid
