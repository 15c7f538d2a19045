#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "reactid/csr.hpp"
#include "support/dense.hpp"

using reactid::SparseMatrix;
using reactid::Triplet;
using reactid::from_triplets;
using reactid::matvec;
namespace testing = reactid::testing;

TEST_CASE("duplicate triplets are summed") {
  const std::vector<Triplet> trips{{0, 0, 1.0}, {0, 0, 2.0}};
  const SparseMatrix A = from_triplets(2, trips);
  CHECK(A.at(0, 0) == 3.0);
  CHECK(A.at(0, 1) == 0.0);
  CHECK(A.at(1, 1) == 0.0);
  CHECK(A.nnz() == 1);
}

TEST_CASE("empty triplet list gives the zero matrix") {
  const SparseMatrix A = from_triplets(3, {});
  CHECK(A.n == 3);
  CHECK(A.nnz() == 0);
  const std::vector<double> y = matvec(A, {1.0, 2.0, 3.0});
  for (double v : y) CHECK(v == 0.0);
}

TEST_CASE("symmetric pair lands in both rows") {
  const std::vector<Triplet> trips{{0, 1, 1.0}, {1, 0, 1.0}};
  const SparseMatrix A = from_triplets(3, trips);
  CHECK(A.at(0, 1) == 1.0);
  CHECK(A.at(1, 0) == 1.0);
  CHECK(A.at(0, 0) == 0.0);
}

TEST_CASE("column indices are strictly increasing within each row") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> index(0, 19);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::vector<Triplet> trips;
  for (int k = 0; k < 300; ++k) trips.push_back({index(rng), index(rng), value(rng)});
  const SparseMatrix A = from_triplets(20, trips);
  for (int i = 0; i < A.n; ++i)
    for (int p = A.row_offsets[i] + 1; p < A.row_offsets[i + 1]; ++p)
      CHECK(A.col_indices[p - 1] < A.col_indices[p]);
  CHECK(A.row_offsets.front() == 0);
  CHECK(A.row_offsets.back() == static_cast<int>(A.col_indices.size()));
}

TEST_CASE("out-of-range triplet indices are rejected") {
  CHECK_THROWS_AS(from_triplets(2, {{2, 0, 1.0}}), std::out_of_range);
  CHECK_THROWS_AS(from_triplets(2, {{0, -1, 1.0}}), std::out_of_range);
}

TEST_CASE("matvec: identity, zero, and a hand-checked 2x2") {
  const SparseMatrix I = from_triplets(3, {{0, 0, 1.0}, {1, 1, 1.0}, {2, 2, 1.0}});
  const std::vector<double> x{1.0, -2.0, 3.5};
  CHECK(matvec(I, x) == x);

  const SparseMatrix Z = from_triplets(3, {});
  for (double v : matvec(Z, x)) CHECK(v == 0.0);

  const SparseMatrix A = from_triplets(2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 2.0}});
  const std::vector<double> y = matvec(A, {1.0, 1.0});
  CHECK(y[0] == 3.0);
  CHECK(y[1] == 3.0);
}

TEST_CASE("matvec rejects a dimension mismatch") {
  const SparseMatrix A = from_triplets(2, {{0, 0, 1.0}});
  CHECK_THROWS_AS(matvec(A, {1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("matvec agrees with the dense oracle on random matrices") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> value(-2.0, 2.0);
  std::uniform_int_distribution<int> index(0, 49);
  for (int instance = 0; instance < 10; ++instance) {
    std::vector<Triplet> trips;
    for (int k = 0; k < 400; ++k) trips.push_back({index(rng), index(rng), value(rng)});
    const SparseMatrix A = from_triplets(50, trips);
    const testing::DenseMatrix D = testing::from_csr(A);
    std::vector<double> x(50);
    for (double& v : x) v = value(rng);
    const std::vector<double> ys = matvec(A, x);
    const std::vector<double> yd = testing::dense_matvec(D, x);
    double scale = 0.0, err = 0.0;
    for (int i = 0; i < 50; ++i) {
      scale = std::max(scale, std::abs(yd[i]));
      err = std::max(err, std::abs(ys[i] - yd[i]));
    }
    CHECK(err <= 1e-13 * std::max(scale, 1.0));
  }
}
