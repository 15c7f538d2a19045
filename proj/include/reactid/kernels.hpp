#pragma once

#include <span>

#include "reactid/csr.hpp"

namespace reactid::kernels {

// OpenMP-parallel vector and sparse-matrix kernels. Every kernel returns the
// same bits for a given input regardless of the number of threads: rows and
// pointwise entries are independent, and floating-point reductions run over
// fixed-size blocks whose partial sums are combined in block order. min/max
// reductions are order-independent to begin with.
//
// The kernels::serial namespace keeps plain single-loop reference versions;
// tests check the parallel kernels against them and bench/ compares their
// throughput. matvec and the pointwise updates reproduce the serial bits
// exactly; dot (and norm2) agree with the straight serial sum bit for bit
// only up to the block size, beyond which the fixed block combination order
// differs from left-to-right summation by round-off.

/// y = A x.
void matvec(const SparseMatrix& A, std::span<const double> x, std::span<double> y);

/// Blocked deterministic dot product.
double dot(std::span<const double> x, std::span<const double> y);

/// Euclidean norm, sqrt(dot(x, x)).
double norm2(std::span<const double> x);

/// y += alpha * x.
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// y = x + beta * y.
void xpay(std::span<const double> x, double beta, std::span<double> y);

double min_value(std::span<const double> x);
double max_value(std::span<const double> x);
double max_abs(std::span<const double> x);

/// min over i of (a[i] - b[i]).
double min_difference(std::span<const double> a, std::span<const double> b);

/// max over i of |a[i] - b[i]|.
double max_abs_difference(std::span<const double> a, std::span<const double> b);

namespace serial {
void matvec(const SparseMatrix& A, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void xpay(std::span<const double> x, double beta, std::span<double> y);
}  // namespace serial

}  // namespace reactid::kernels
