#pragma once

#include <cstdint>
#include <vector>

#include "netlap/topology.hpp"

namespace netlap {

/// Population of iid subject Laplacians: covariance association of T
/// Gaussian time points drawn from a mixture-model Sigma. Its mean is
/// L(Sigma) and the covariance of the edge vector is known in closed form,
/// Cov(s_ab, s_ce) = (sigma_ac sigma_be + sigma_ae sigma_bc) / (T - 1).
struct CltConfig {
  TopologySpec topology;
  MixtureParams mixture;
  int T = 200;
  int n = 500;
  int reps = 300;
  std::uint64_t seed = 1;
};

struct CltReport {
  int m = 0;
  double rel_frobenius_error = 0.0;  // ||C_emp - Sigma||_F / ||Sigma||_F
  // Observation-level sandwich B^-1 V B^-T with B = 2I and V the empirical
  // covariance of the gradients 2(Lambda - L_i), against Sigma.
  double sandwich_error = 0.0;
  std::vector<double> skewness;      // per coordinate of sqrt(n)(mean - Lambda)
  double skewness_se = 0.0;          // sqrt(6 / reps)
  double max_abs_skewness = 0.0;
  Matrix population_cov;
  Matrix empirical_cov;
};

/// Exact covariance of the edge vector of L(S) for S the (T-1)-denominator
/// sample covariance of T iid N(0, Sigma) vectors.
Matrix wishart_edge_covariance(const Matrix& sigma, int T);

CltReport clt_diagnostic(const CltConfig& config);

}  // namespace netlap
