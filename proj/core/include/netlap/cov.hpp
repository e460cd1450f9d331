#pragma once

// Covariance estimation for samples of edge vectors: plain sample
// covariance, adaptive entrywise thresholding, projection onto the positive
// definite cone, pooling across groups, and SPD solves.

#include <functional>
#include <optional>
#include <span>
#include <string>

#include "netlap/graph.hpp"
#include "netlap/linalg.hpp"

namespace netlap {

enum class Denominator { kN, kNMinus1 };

enum class EstimatorKind {
  kSample,       // sample covariance
  kThresholded,  // adaptive entrywise thresholding
  kIdentity,     // forced identity (test hook)
};

enum class PoolingMode { kKSample, kTwoSample, kWeightedAverage };

/// n observations of an m-dimensional vector, stored row-wise.
class VectorSample {
 public:
  explicit VectorSample(Matrix rows);
  static VectorSample from_edge_vectors(std::span<const EdgeVector> vectors);
  static VectorSample from_laplacians(std::span<const LaplacianMatrix> laplacians);

  Eigen::Index n() const noexcept { return rows_.rows(); }
  Eigen::Index dim() const noexcept { return rows_.cols(); }
  const Matrix& rows() const noexcept { return rows_; }
  /// Column means, accumulated in row order.
  const Vector& mean() const noexcept { return mean_; }

 private:
  Matrix rows_;
  Vector mean_;
};

struct CovEstimate {
  Matrix matrix;
  EstimatorKind estimator = EstimatorKind::kSample;
  double delta = 0.0;  // threshold scale; 0 unless thresholded
  bool pd_projected = false;
  double pd_floor = 0.0;  // eigenvalue floor tau
  int pd_iterations = 0;
  double pd_gap = 0.0;  // final relative gap of the alternating projections
  std::optional<PoolingMode> pooling;

  Eigen::Index dim() const noexcept { return matrix.rows(); }
};

CovEstimate sample_cov(const VectorSample& sample, Denominator den = Denominator::kNMinus1);
/// Same as sample_cov but centered at `center` instead of the sample mean.
CovEstimate sample_cov_about(const VectorSample& sample, const Vector& center,
                             Denominator den = Denominator::kNMinus1);

/// Adaptive thresholding of the n-denominator covariance: off-diagonal
/// entries survive when |s_ij| >= delta * sqrt(theta_ij * log(m) / n), with
/// theta_ij the empirical variance of the centered cross-products. The
/// diagonal is never thresholded.
CovEstimate cai_liu_threshold(const VectorSample& sample, double delta);
CovEstimate cai_liu_threshold_about(const VectorSample& sample, const Vector& center,
                                    double delta);

struct NearestPdOptions {
  double tol = 1e-7;
  int max_iter = 200;
  double floor_rel = 1e-8;
  /// Anderson acceleration memory for the projection fixed point; 0 runs
  /// the plain Dykstra iteration.
  int anderson_depth = 4;
};

/// Returns a symmetric matrix with smallest eigenvalue at least
/// tau = floor_rel * max(lambda_max, 1). Inputs that already satisfy the floor
/// are returned unchanged. Otherwise the matrix is rescaled to unit diagonal,
/// projected by alternating projections with Dykstra's correction between
/// the PSD cone and the unit-diagonal set (Anderson-accelerated), scaled
/// back, and eigenvalue-floored.
/// Throws ConvergenceError when the projections do not settle in max_iter.
CovEstimate nearest_pd(const CovEstimate& c, const NearestPdOptions& opts = {});

struct PoolInput {
  std::reference_wrapper<const CovEstimate> cov;
  Eigen::Index n;
};

/// sum_j Sigma_j / n_j for kKSample and kTwoSample;
/// sum_j n_j Sigma_j / sum_j n_j for kWeightedAverage.
CovEstimate pooled_cov(std::span<const PoolInput> groups, PoolingMode mode);

/// Solves C x = b through a Cholesky factorization. Throws NumericalError if
/// C is not numerically positive definite or the residual exceeds 1e-8.
Vector solve_spd(const CovEstimate& c, const Vector& b);

const char* to_string(EstimatorKind k) noexcept;
const char* to_string(PoolingMode m) noexcept;

}  // namespace netlap
