#include "reactid/cg.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "reactid/kernels.hpp"

namespace reactid {

namespace {

struct OmpKernels {
  static void matvec(const SparseMatrix& A, std::span<const double> x, std::span<double> y) {
    kernels::matvec(A, x, y);
  }
  static double dot(std::span<const double> x, std::span<const double> y) {
    return kernels::dot(x, y);
  }
  static void axpy(double a, std::span<const double> x, std::span<double> y) {
    kernels::axpy(a, x, y);
  }
  static void xpay(std::span<const double> x, double b, std::span<double> y) {
    kernels::xpay(x, b, y);
  }
  static void jacobi(std::span<const double> r, std::span<const double> d, std::span<double> z) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(r.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) z[i] = r[i] / d[i];
  }
};

struct SerialKernels {
  static void matvec(const SparseMatrix& A, std::span<const double> x, std::span<double> y) {
    kernels::serial::matvec(A, x, y);
  }
  static double dot(std::span<const double> x, std::span<const double> y) {
    return kernels::serial::dot(x, y);
  }
  static void axpy(double a, std::span<const double> x, std::span<double> y) {
    kernels::serial::axpy(a, x, y);
  }
  static void xpay(std::span<const double> x, double b, std::span<double> y) {
    kernels::serial::xpay(x, b, y);
  }
  static void jacobi(std::span<const double> r, std::span<const double> d, std::span<double> z) {
    for (size_t i = 0; i < r.size(); ++i) z[i] = r[i] / d[i];
  }
};

template <class K>
std::vector<double> cg_impl(const SparseMatrix& A, const std::vector<double>& b,
                            const SolveOptions& opts, SolveReport* report,
                            const std::vector<double>* x0) {
  const int n = A.n;
  if (static_cast<int>(b.size()) != n)
    throw std::invalid_argument("solve_spd: right-hand side length " + std::to_string(b.size()) +
                                " does not match matrix dimension " + std::to_string(n));
  if (x0 && static_cast<int>(x0->size()) != n)
    throw std::invalid_argument("solve_spd: initial guess has wrong length");
  if (!(opts.rel_tol > 0.0)) throw std::invalid_argument("solve_spd: rel_tol must be positive");
  const int max_iter = opts.max_iter > 0 ? opts.max_iter : 10 * n;

  const double bnorm = std::sqrt(K::dot(b, b));
  if (bnorm == 0.0) {
    if (report) *report = {0, 0.0};
    return std::vector<double>(n, 0.0);
  }
  const double abs_tol = opts.rel_tol * bnorm;

  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) {
    diag[i] = A.at(i, i);
    if (!(diag[i] > 0.0))
      throw std::invalid_argument("solve_spd: nonpositive diagonal at row " + std::to_string(i) +
                                  ", matrix is not positive definite");
  }

  std::vector<double> x = x0 ? *x0 : std::vector<double>(n, 0.0);
  std::vector<double> r(n), z(n), p(n), q(n);
  int iters = 0;
  double achieved = 0.0;

  // Outer loop restarts from the true residual in the rare case the
  // recursive residual converged but the true one has drifted.
  while (iters < max_iter) {
    K::matvec(A, x, r);
    for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
    achieved = std::sqrt(K::dot(r, r));
    if (achieved <= abs_tol) break;

    K::jacobi(r, diag, z);
    p = z;
    double rz = K::dot(r, z);
    bool recursive_converged = false;
    while (iters < max_iter) {
      K::matvec(A, p, q);
      const double pq = K::dot(p, q);
      if (!(pq > 0.0))
        throw std::invalid_argument("solve_spd: curvature " + std::to_string(pq) +
                                    " <= 0, matrix is not positive definite");
      const double alpha = rz / pq;
      K::axpy(alpha, p, x);
      K::axpy(-alpha, q, r);
      ++iters;
      if (std::sqrt(K::dot(r, r)) <= abs_tol) {
        recursive_converged = true;
        break;
      }
      K::jacobi(r, diag, z);
      const double rz_next = K::dot(r, z);
      K::xpay(z, rz_next / rz, p);
      rz = rz_next;
    }
    if (!recursive_converged) break;
  }

  K::matvec(A, x, r);
  for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
  achieved = std::sqrt(K::dot(r, r));
  if (achieved > abs_tol)
    throw SolveFailure("solve_spd: no convergence within " + std::to_string(max_iter) +
                           " iterations, achieved relative residual " +
                           std::to_string(achieved / bnorm),
                       achieved / bnorm);
  if (report) *report = {iters, achieved / bnorm};
  return x;
}

}  // namespace

std::vector<double> solve_spd(const SparseMatrix& A, const std::vector<double>& b,
                              const SolveOptions& opts, SolveReport* report,
                              const std::vector<double>* x0) {
  return cg_impl<OmpKernels>(A, b, opts, report, x0);
}

namespace serial {
std::vector<double> solve_spd(const SparseMatrix& A, const std::vector<double>& b,
                              const SolveOptions& opts, SolveReport* report,
                              const std::vector<double>* x0) {
  return cg_impl<SerialKernels>(A, b, opts, report, x0);
}
}  // namespace serial

}  // namespace reactid
