#pragma once

// Laplacian spaces: construction of weighted combinatorial Laplacians from
// association matrices, the off-diagonal edge-vector coordinate system,
// Frobenius geometry and Frechet means, and membership diagnostics for the
// spaces of connected-graph Laplacians.

#include <cstddef>
#include <span>
#include <vector>

#include "netlap/linalg.hpp"

namespace netlap {

/// Relative tolerance for symmetry and row-sum checks; the absolute bound is
/// rel * max(1, max |entry|).
inline constexpr double kDefaultRelTolerance = 1e-8;

/// Symmetric d x d matrix of pairwise association weights for one subject.
/// Construction validates squareness, finiteness and symmetry within
/// scaled_tolerance(); the stored matrix is exactly symmetrized.
class AssociationMatrix {
 public:
  explicit AssociationMatrix(Matrix entries, double rel_tol = kDefaultRelTolerance);

  Eigen::Index dim() const noexcept { return entries_.rows(); }
  const Matrix& entries() const noexcept { return entries_; }

 private:
  Matrix entries_;
};

/// Weighted combinatorial Laplacian L = D(W) - W. Construction validates
/// symmetry and zero row sums, both within scaled_tolerance().
class LaplacianMatrix {
 public:
  explicit LaplacianMatrix(Matrix entries, double rel_tol = kDefaultRelTolerance);

  Eigen::Index dim() const noexcept { return entries_.rows(); }
  const Matrix& entries() const noexcept { return entries_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

  bool operator==(const LaplacianMatrix& other) const { return entries_ == other.entries_; }

 private:
  Matrix entries_;
};

/// Number of off-diagonal coordinates, m = d(d-1)/2.
constexpr Eigen::Index edge_count(Eigen::Index d) noexcept { return d * (d - 1) / 2; }

/// Position of the strictly-lower pair (i, j), i > j, zero-based. Pairs are
/// enumerated row by row: (1,0), (2,0), (2,1), (3,0), ...
constexpr Eigen::Index edge_index(Eigen::Index i, Eigen::Index j) noexcept {
  return i * (i - 1) / 2 + j;
}

/// Coordinates of a Laplacian in R^m.
struct EdgeVector {
  Eigen::Index dim = 0;  // vertex count d
  Vector values;         // length edge_count(dim)
};

LaplacianMatrix laplacian_from_association(const AssociationMatrix& s);

EdgeVector vectorize(const LaplacianMatrix& l);

/// Inverse of vectorize: off-diagonals are copied, each diagonal entry is the
/// negated sum of its row's off-diagonals.
LaplacianMatrix devectorize(const EdgeVector& v);

/// Squared Frobenius distance sum_ij (x_ij - y_ij)^2.
double frobenius_distance(const LaplacianMatrix& x, const LaplacianMatrix& y);
/// Square root of frobenius_distance; a metric.
double frobenius_metric(const LaplacianMatrix& x, const LaplacianMatrix& y);

/// Sample Frechet mean under the Frobenius distance: the entrywise mean.
LaplacianMatrix frechet_mean(std::span<const LaplacianMatrix> sample);

enum class OffDiagonalSign { kStrictlyNegative, kNonPositive, kMixed };

struct SpaceDiagnostic {
  int rank = 0;
  int n_components = 0;
  bool psd = false;
  bool row_sums_ok = false;
  OffDiagonalSign offdiag_sign = OffDiagonalSign::kMixed;
  bool in_L_d = false;        // connected, strictly negative off-diagonals
  bool in_L_d_prime = false;  // connected, non-positive off-diagonals
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

inline constexpr double kDefaultEigTolerance = 1e-10;

/// Eigenvalue-based rank, component count and space membership. Accepts any
/// symmetric finite matrix so that non-Laplacians can be diagnosed too.
SpaceDiagnostic space_membership(const Matrix& l, double tol_eig = kDefaultEigTolerance);
SpaceDiagnostic space_membership(const LaplacianMatrix& l,
                                 double tol_eig = kDefaultEigTolerance);

/// True iff averaging L1 and L2 does not increase the component count above
/// the smaller of the two.
bool component_monotonicity_check(const LaplacianMatrix& l1, const LaplacianMatrix& l2,
                                  double tol_eig = kDefaultEigTolerance);

/// q-th percentile (q in [0, 100]) with linear interpolation between order
/// statistics at position q/100 * (N - 1).
double percentile(std::vector<double> values, double q);

/// Masks of entries >= the q-th percentile of all entries pooled across the
/// sample.
std::vector<BoolMatrix> binarize_percentile(std::span<const LaplacianMatrix> sample, double q);

const char* to_string(OffDiagonalSign s) noexcept;

}  // namespace netlap
