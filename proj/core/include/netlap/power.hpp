#pragma once

// Monte-Carlo power studies of the two-sample Laplacian test on synthetic
// networks.

#include <cstdint>
#include <string>
#include <vector>

#include "netlap/association.hpp"
#include "netlap/inference.hpp"
#include "netlap/series.hpp"
#include "netlap/topology.hpp"

namespace netlap {

enum class NoiseKind { kGaussianIid, kAr1 };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kGaussianIid;
  double phi = 0.5;
  double drift = 0.0;  // every coordinate of the AR drift vector
};

struct PowerStudyConfig {
  TopologySpec topology;  // topology.d is the vertex count
  int n = 100;            // subjects per group
  int T = 200;            // time points per subject
  NoiseSpec noise;
  AssociationKind association = AssociationKind::kCovariance;
  int bins = 10;
  std::vector<int> effect_ladder;  // rewire counts; empty selects the default
  int reps = 100;
  double alpha = 0.05;
  EstimatorOptions estimator;
  MixtureParams mixture;
  std::uint64_t seed = 1;
};

struct PowerRow {
  int rewire_count = 0;
  double effect_size = 0.0;  // ||Lambda_1 - Lambda_2||_F
  int rejections = 0;
  int reps = 0;
  double power = 0.0;
  double std_error = 0.0;
};

struct PowerCurve {
  std::vector<PowerRow> rows;
};

/// Throws ValidationError naming the offending field.
void validate(const PowerStudyConfig& config);

/// {0, 1, 2, 4, ...} doubling while not above a quarter of `edges`.
std::vector<int> default_effect_ladder(int edges);

/// Population pieces shared by every replicate of one ladder entry.
struct Scenario {
  Adjacency a1, a2;
  Matrix sigma1, sigma2;
  LaplacianMatrix lambda1, lambda2;
  double effect_size = 0.0;
};

/// A1 from (seed, kTopology), rewire moves from (seed, kRewire), covariances
/// from (seed, kSigma) for both groups.
Scenario build_scenario(const PowerStudyConfig& config, int rewire_count);

/// Subject Laplacians for one group of one replicate, drawn from stream
/// (seed, kSeries, replicate, group).
std::vector<LaplacianMatrix> simulate_group(const PowerStudyConfig& config, const Matrix& sigma,
                                            int replicate, int group);

/// One replicate of the two-sample test at the given scenario.
TestReport run_replicate(const PowerStudyConfig& config, const Scenario& scenario, int replicate);

/// Replicates run on `workers` threads; results are gathered by index, so the
/// curve is identical for any worker count.
PowerCurve run_power_study(const PowerStudyConfig& config, int workers = 1);

const char* to_string(NoiseKind k) noexcept;

}  // namespace netlap
