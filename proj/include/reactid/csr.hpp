#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace reactid {

struct Triplet {
  int row;
  int col;
  double value;
};

/// Sparse matrix in compressed sparse row form with column indices sorted
/// within each row. All matrices assembled in this project are symmetric;
/// the structure itself does not enforce that.
struct SparseMatrix {
  int n = 0;
  std::vector<int> row_offsets;  // size n+1
  std::vector<int> col_indices;
  std::vector<double> values;

  int nnz() const { return static_cast<int>(col_indices.size()); }

  /// Entry (i, j); zero when (i, j) is outside the stored pattern.
  double at(int i, int j) const;
};

/// Build a CSR matrix from (row, col, value) triplets. Duplicate positions
/// are summed in their order of appearance, which keeps the result
/// reproducible bit for bit. Throws std::out_of_range on an index outside
/// [0, n).
SparseMatrix from_triplets(int n, std::span<const Triplet> triplets);

inline SparseMatrix from_triplets(int n, std::initializer_list<Triplet> triplets) {
  return from_triplets(n, std::span<const Triplet>(triplets.begin(), triplets.size()));
}

/// y = A x. Convenience wrapper over kernels::matvec; throws on a size
/// mismatch.
std::vector<double> matvec(const SparseMatrix& A, const std::vector<double>& x);

}  // namespace reactid
