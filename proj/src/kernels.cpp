#include "reactid/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <vector>

namespace reactid::kernels {

namespace {
// Reduction block size. Partial sums are formed per block and added in block
// order, so the result does not depend on how blocks are scheduled.
constexpr std::ptrdiff_t kBlock = 4096;

inline std::ptrdiff_t block_count(std::ptrdiff_t n) { return (n + kBlock - 1) / kBlock; }
}  // namespace

void matvec(const SparseMatrix& A, std::span<const double> x, std::span<double> y) {
  assert(static_cast<int>(x.size()) == A.n && static_cast<int>(y.size()) == A.n);
  const int* offs = A.row_offsets.data();
  const int* cols = A.col_indices.data();
  const double* vals = A.values.data();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < A.n; ++i) {
    double sum = 0.0;
    for (int p = offs[i]; p < offs[i + 1]; ++p) sum += vals[p] * x[cols[p]];
    y[i] = sum;
  }
}

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  const std::ptrdiff_t nb = block_count(n);
  if (nb <= 1) return serial::dot(x, y);
  std::vector<double> partial(nb);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::ptrdiff_t lo = b * kBlock;
    const std::ptrdiff_t hi = std::min(lo + kBlock, n);
    double sum = 0.0;
    for (std::ptrdiff_t i = lo; i < hi; ++i) sum += x[i] * y[i];
    partial[b] = sum;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void xpay(std::span<const double> x, double beta, std::span<double> y) {
  assert(x.size() == y.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] = x[i] + beta * y[i];
}

double min_value(std::span<const double> x) {
  assert(!x.empty());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  double m = x[0];
#pragma omp parallel for schedule(static) reduction(min : m)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::min(m, x[i]);
  return m;
}

double max_value(std::span<const double> x) {
  assert(!x.empty());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  double m = x[0];
#pragma omp parallel for schedule(static) reduction(max : m)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, x[i]);
  return m;
}

double max_abs(std::span<const double> x) {
  if (x.empty()) return 0.0;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

double min_difference(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size() && !a.empty());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
  double m = a[0] - b[0];
#pragma omp parallel for schedule(static) reduction(min : m)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::min(m, a[i] - b[i]);
  return m;
}

double max_abs_difference(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  if (a.empty()) return 0.0;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

namespace serial {

void matvec(const SparseMatrix& A, std::span<const double> x, std::span<double> y) {
  assert(static_cast<int>(x.size()) == A.n && static_cast<int>(y.size()) == A.n);
  for (int i = 0; i < A.n; ++i) {
    double sum = 0.0;
    for (int p = A.row_offsets[i]; p < A.row_offsets[i + 1]; ++p)
      sum += A.values[p] * x[A.col_indices[p]];
    y[i] = sum;
  }
}

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  double sum = 0.0;
  for (size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  return sum;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  for (size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void xpay(std::span<const double> x, double beta, std::span<double> y) {
  assert(x.size() == y.size());
  for (size_t i = 0; i < x.size(); ++i) y[i] = x[i] + beta * y[i];
}

}  // namespace serial

}  // namespace reactid::kernels
