#include "reactid/csr.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "reactid/kernels.hpp"

namespace reactid {

double SparseMatrix::at(int i, int j) const {
  const auto begin = col_indices.begin() + row_offsets[i];
  const auto end = col_indices.begin() + row_offsets[i + 1];
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return 0.0;
  return values[it - col_indices.begin()];
}

SparseMatrix from_triplets(int n, std::span<const Triplet> triplets) {
  for (const Triplet& t : triplets) {
    if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
      throw std::out_of_range("from_triplets: index (" + std::to_string(t.row) + ", " +
                              std::to_string(t.col) + ") outside a " + std::to_string(n) +
                              "-dimensional matrix");
  }

  // Stable sort keeps duplicates in emission order, so their sums are
  // reproducible.
  std::vector<int> order(triplets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (triplets[a].row != triplets[b].row) return triplets[a].row < triplets[b].row;
    return triplets[a].col < triplets[b].col;
  });

  SparseMatrix A;
  A.n = n;
  A.row_offsets.assign(static_cast<size_t>(n) + 1, 0);
  A.col_indices.reserve(triplets.size());
  A.values.reserve(triplets.size());

  size_t i = 0;
  while (i < order.size()) {
    const int row = triplets[order[i]].row;
    const int col = triplets[order[i]].col;
    double sum = 0.0;
    while (i < order.size() && triplets[order[i]].row == row && triplets[order[i]].col == col) {
      sum += triplets[order[i]].value;
      ++i;
    }
    A.col_indices.push_back(col);
    A.values.push_back(sum);
    ++A.row_offsets[row + 1];
  }
  for (int r = 0; r < n; ++r) A.row_offsets[r + 1] += A.row_offsets[r];
  return A;
}

std::vector<double> matvec(const SparseMatrix& A, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != A.n)
    throw std::invalid_argument("matvec: vector length " + std::to_string(x.size()) +
                                " does not match matrix dimension " + std::to_string(A.n));
  std::vector<double> y(x.size());
  kernels::matvec(A, x, y);
  return y;
}

}  // namespace reactid
