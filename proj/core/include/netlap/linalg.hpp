#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace netlap {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Scale-aware tolerance used for symmetry and row-sum checks:
/// 1e-8 * max(1, max|entry|).
double scaled_tolerance(const Matrix& m, double rel = 1e-8);

bool is_finite(const Matrix& m);
bool is_symmetric(const Matrix& m, double tol);

struct SymmetricEigen {
  Vector values;   // ascending
  Matrix vectors;  // columns, matching `values`
};

/// Symmetric eigendecomposition (LAPACK dsyevd). Only the lower triangle of
/// `a` is referenced.
SymmetricEigen symmetric_eigen(const Matrix& a);

/// Eigenvalues only, ascending.
Vector symmetric_eigenvalues(const Matrix& a);

/// Correctly rounded sum (Shewchuk's partials with a final half-even fix-up).
/// The result is independent of input order and exactly odd under negation,
/// which keeps vertex permutations and Laplacian round-trips bit-exact.
double exact_sum(std::span<const double> values);

}  // namespace netlap
