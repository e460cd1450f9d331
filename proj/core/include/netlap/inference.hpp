#pragma once

// Chi-square tests on means of graph Laplacians (one-, two- and k-sample)
// and the per-edge mass-univariate baseline.

#include <span>
#include <string>
#include <vector>

#include "netlap/cov.hpp"
#include "netlap/graph.hpp"

namespace netlap {

/// A labelled sample of Laplacians sharing one vertex count; at least two
/// members.
class NetworkGroup {
 public:
  NetworkGroup(std::string label, std::vector<LaplacianMatrix> laplacians);

  const std::string& label() const noexcept { return label_; }
  const std::vector<LaplacianMatrix>& laplacians() const noexcept { return laplacians_; }
  std::size_t size() const noexcept { return laplacians_.size(); }
  Eigen::Index dim() const noexcept { return laplacians_.front().dim(); }

  /// Edge vectors of every member, one row per subject.
  const VectorSample& vectors() const noexcept { return vectors_; }

 private:
  std::string label_;
  std::vector<LaplacianMatrix> laplacians_;
  VectorSample vectors_;
};

/// Covariance pipeline shared by all tests: sample covariance, optional
/// adaptive thresholding, pooling, optional positive-definite projection.
struct EstimatorOptions {
  bool threshold = true;
  double delta = 2.0;
  bool project_pd = true;
  NearestPdOptions pd{};
  /// Pooling rule for the k-sample statistic. kWeightedAverage pools to a
  /// per-observation covariance and is chi-square calibrated; kKSample is
  /// sum_j Sigma_j / n_j taken literally.
  PoolingMode k_sample_pooling = PoolingMode::kWeightedAverage;
  /// Test hook: replace the estimated covariance by the identity.
  bool force_identity = false;
};

enum class TestKind { kOneSample, kTwoSample, kKSample };

struct EstimatorMeta {
  EstimatorKind kind = EstimatorKind::kSample;
  bool thresholded = false;
  double delta = 0.0;
  bool pd_projected = false;
  double pd_floor = 0.0;
  int pd_iterations = 0;
  double pd_gap = 0.0;
  std::string pooling;  // empty when no pooling took place
};

struct TestReport {
  TestKind kind = TestKind::kTwoSample;
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  Eigen::Index d = 0;
  std::vector<std::string> group_labels;
  std::vector<std::size_t> group_sizes;
  EstimatorMeta estimator;
};

/// T1 = n (phi(L_bar) - phi(Lambda0))' S^-1 (phi(L_bar) - phi(Lambda0)), dof m.
TestReport test_one_sample(const NetworkGroup& group, const LaplacianMatrix& lambda0,
                           const EstimatorOptions& opts = {});

/// T2 = delta' (S1/n1 + S2/n2)^-1 delta with delta the difference of group
/// means, each S_j about its own group mean; dof m.
TestReport test_two_sample(const NetworkGroup& g1, const NetworkGroup& g2,
                           const EstimatorOptions& opts = {});

/// Tk = sum_j n_j (phi(L_j) - phi(L_bar))' S^-1 (phi(L_j) - phi(L_bar)) with
/// each S_j centered at the grand mean; dof (k-1) m.
TestReport test_k_sample(std::span<const NetworkGroup> groups, const EstimatorOptions& opts = {});

enum class Correction { kNone, kBonferroni };

struct MassUnivariateResult {
  Matrix p_values;       // symmetric, unit diagonal
  Matrix t_statistics;   // symmetric, zero diagonal
  BoolMatrix uncorrected;  // p < alpha
  BoolMatrix corrected;    // p < level (alpha / C(d,2) under Bonferroni)
  double level = 0.0;
};

/// Welch two-sample t-test on every off-diagonal Laplacian entry. An edge
/// with zero variance in both groups gets p = 1 when the means agree
/// and p = 0 otherwise.
MassUnivariateResult mass_univariate(const NetworkGroup& g1, const NetworkGroup& g2, double alpha,
                                     Correction correction);

const char* to_string(TestKind k) noexcept;
const char* to_string(Correction c) noexcept;

}  // namespace netlap
