#pragma once

#include <cstddef>
#include <vector>

namespace sgspec {

struct SymmetricEigen {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // vectors[i] is the unit eigenvector of values[i]
  int sweeps = 0;
};

// Cyclic Jacobi rotations on a dense symmetric matrix (row-major, n x n) until the off-diagonal
// Frobenius norm is at most rel_tol times the matrix norm.
SymmetricEigen jacobi_eigen(std::vector<double> a, std::size_t n, double rel_tol = 1e-12);

}  // namespace sgspec
