#pragma once

#include <vector>

namespace reactid {

/// Nodal scalar field; values follow the mesh node order and the length must
/// equal the mesh's node count.
using NodeField = std::vector<double>;

}  // namespace reactid
