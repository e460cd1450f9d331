#pragma once

// Network topologies for synthetic studies and the mixture model that turns
// a topology into a population covariance.

#include <cstdint>

#include "netlap/cov.hpp"
#include "netlap/linalg.hpp"

namespace netlap {

using Adjacency = BoolMatrix;

enum class TopologyKind { kBlockDiagonal, kSmallWorld };

struct TopologySpec {
  TopologyKind kind = TopologyKind::kBlockDiagonal;
  int d = 10;
  double rewire_beta = 0.1;  // small-world only
  std::uint64_t seed = 0;
};

/// Two communities of sizes ceil(d/2) and floor(d/2); within-community pairs
/// are edges with probability 4/d, cross pairs with probability 1/(2d).
Adjacency gen_block_adjacency(int d, std::uint64_t seed);

/// Expected edge count of gen_block_adjacency.
double block_expected_edges(int d);

/// Even ring degree used by the small-world generator:
/// max(4, 2 * round(E_block / d)), capped at the largest even number <= d-1.
int smallworld_ring_degree(int d);

/// Ring lattice of degree smallworld_ring_degree(d) whose edges are
/// independently rewired with probability beta to uniform targets that keep
/// the graph simple.
Adjacency gen_smallworld_adjacency(int d, std::uint64_t seed, double beta);

Adjacency generate_topology(const TopologySpec& spec);

/// Moves r distinct edges to r distinct vacant pairs, both picked uniformly.
/// For a fixed seed the moves for r are a prefix of the moves for r + 1.
Adjacency rewire(const Adjacency& a, int r, std::uint64_t seed);

int count_edges(const Adjacency& a);
int count_vacancies(const Adjacency& a);
bool is_simple(const Adjacency& a);

/// How lambda_exp parametrizes the exponential diagonal law. Under kRate
/// (mean 1/4 at lambda 4) the variances are dwarfed by unit-size edge
/// covariances, the projected Sigma is numerically rank one, and edge and
/// non-edge entries are no longer distinguishable. kMean keeps them apart.
enum class ExpParametrization { kMean, kRate };

struct MixtureParams {
  double lambda_exp = 4.0;  // exponential diagonal law, see lambda_kind
  ExpParametrization lambda_kind = ExpParametrization::kMean;
  double mu1 = 1.0;         // mean for edges
  double mu2 = 0.0;         // mean for non-edges
  double sigma2 = 0.2;      // common variance
};

/// Unprojected mixture draw: diagonal iid exponential, off-diagonal entry ab
/// equal to |N(mu1, sigma2)| on edges and |N(mu2, sigma2)| elsewhere. The
/// upper triangle is drawn row by row and mirrored. The same seed yields the
/// same standard-normal draws for every topology, so two adjacencies differing
/// in a few pairs give covariances differing in those pairs only.
Matrix sample_sigma_raw(const Adjacency& a, const MixtureParams& params, std::uint64_t seed);

/// Projection budget for population covariances. The raw mixture draws sit
/// far from the PD cone (small variances, unit-scale covariances) and need
/// thousands of alternating-projection sweeps, which is cheap at d x d.
inline constexpr NearestPdOptions kPopulationPd{1e-7, 50000, 1e-8};

/// sample_sigma_raw followed by nearest_pd.
Matrix build_sigma_from_topology(const Adjacency& a, const MixtureParams& params,
                                 std::uint64_t seed, const NearestPdOptions& pd = kPopulationPd);

const char* to_string(TopologyKind k) noexcept;
const char* to_string(ExpParametrization p) noexcept;

}  // namespace netlap
