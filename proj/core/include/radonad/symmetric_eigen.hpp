#pragma once

#include "radonad/time_series.hpp"

namespace radonad {

/// Eigenpairs of a real symmetric matrix, eigenvalues in descending order.
/// Column i of `vectors` is the unit eigenvector for `values[i]`, signed so its
/// largest-magnitude entry is positive.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
};

/// Householder reduction to tridiagonal form followed by implicit QL iterations.
/// The input is symmetrized as (A + A^T) / 2 first. Throws std::invalid_argument
/// for non-square or non-finite input and std::runtime_error if QL fails to converge.
SymmetricEigen symmetric_eigen(const Matrix& a);

/// (A + A^T) / 2 and the largest |A - A^T| entry.
Matrix symmetrize(const Matrix& a, double* max_asymmetry = nullptr);

}  // namespace radonad
