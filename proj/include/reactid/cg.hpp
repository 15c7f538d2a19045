#pragma once

#include <stdexcept>
#include <vector>

#include "reactid/csr.hpp"

namespace reactid {

struct SolveOptions {
  double rel_tol = 1e-10;  // target on ||A x - b||_2 / ||b||_2
  int max_iter = 0;        // 0 selects 10 * n
};

struct SolveReport {
  int iterations = 0;
  double rel_residual = 0.0;
};

class SolveFailure : public std::runtime_error {
 public:
  SolveFailure(const std::string& msg, double achieved)
      : std::runtime_error(msg), achieved_rel_residual(achieved) {}
  double achieved_rel_residual;
};

/// Jacobi-preconditioned conjugate gradients for symmetric positive definite
/// systems. On return the true residual satisfies
/// ||A x - b||_2 <= rel_tol * ||b||_2; a zero right-hand side returns the
/// zero vector without iterating. Throws SolveFailure, carrying the achieved
/// relative residual, when the contract cannot be met within max_iter
/// iterations.
///
/// x0, when given, seeds the iteration (used to warm-start time stepping).
/// The solve is deterministic: identical inputs give identical bits for any
/// thread count.
std::vector<double> solve_spd(const SparseMatrix& A, const std::vector<double>& b,
                              const SolveOptions& opts = {}, SolveReport* report = nullptr,
                              const std::vector<double>* x0 = nullptr);

namespace serial {
/// Reference solver built on the serial kernels; same contract as solve_spd.
std::vector<double> solve_spd(const SparseMatrix& A, const std::vector<double>& b,
                              const SolveOptions& opts = {}, SolveReport* report = nullptr,
                              const std::vector<double>* x0 = nullptr);
}  // namespace serial

}  // namespace reactid
