#include "netlap/topology.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "netlap/errors.hpp"
#include "netlap/rng.hpp"

namespace netlap {

namespace {

void require_vertices(int d) {
  if (d < 4) throw ValidationError("topology: need d >= 4, got " + std::to_string(d));
}

double pairs(int k) { return 0.5 * k * (k - 1); }

}  // namespace

Adjacency gen_block_adjacency(int d, std::uint64_t seed) {
  require_vertices(d);
  const int first = (d + 1) / 2;
  const double p_within = 4.0 / d;
  const double p_cross = 1.0 / (2.0 * d);
  Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Adjacency a = Adjacency::Constant(d, d, false);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const bool same = (i < first) == (j < first);
      const bool edge = unif(rng) < (same ? p_within : p_cross);
      a(i, j) = a(j, i) = edge;
    }
  return a;
}

double block_expected_edges(int d) {
  const int first = (d + 1) / 2;
  const int second = d / 2;
  return 4.0 / d * (pairs(first) + pairs(second)) + 1.0 / (2.0 * d) * first * second;
}

int smallworld_ring_degree(int d) {
  require_vertices(d);
  const double ne = std::round(block_expected_edges(d));
  const int k = std::max(4, 2 * static_cast<int>(std::lround(ne / d)));
  const int cap = (d - 1) % 2 == 0 ? d - 1 : d - 2;
  return std::min(k, cap);
}

Adjacency gen_smallworld_adjacency(int d, std::uint64_t seed, double beta) {
  require_vertices(d);
  if (!(beta >= 0.0 && beta <= 1.0))
    throw ValidationError("small-world: rewire_beta outside [0, 1]");
  const int half = smallworld_ring_degree(d) / 2;
  Adjacency a = Adjacency::Constant(d, d, false);
  for (int i = 0; i < d; ++i)
    for (int s = 1; s <= half; ++s) {
      const int j = (i + s) % d;
      a(i, j) = a(j, i) = true;
    }

  Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<int> candidates;
  for (int s = 1; s <= half; ++s) {
    for (int i = 0; i < d; ++i) {
      const int j = (i + s) % d;
      if (!(unif(rng) < beta) || !a(i, j)) continue;
      candidates.clear();
      for (int w = 0; w < d; ++w)
        if (w != i && !a(i, w)) candidates.push_back(w);
      if (candidates.empty()) continue;
      std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
      const int w = candidates[pick(rng)];
      a(i, j) = a(j, i) = false;
      a(i, w) = a(w, i) = true;
    }
  }
  return a;
}

Adjacency generate_topology(const TopologySpec& spec) {
  switch (spec.kind) {
    case TopologyKind::kBlockDiagonal: return gen_block_adjacency(spec.d, spec.seed);
    case TopologyKind::kSmallWorld:
      return gen_smallworld_adjacency(spec.d, spec.seed, spec.rewire_beta);
  }
  throw ValidationError("unknown topology kind");
}

Adjacency rewire(const Adjacency& a, int r, std::uint64_t seed) {
  if (!is_simple(a)) throw ValidationError("rewire: adjacency is not a simple graph");
  std::vector<std::pair<int, int>> edges, vacant;
  for (int i = 1; i < a.rows(); ++i)
    for (int j = 0; j < i; ++j) (a(i, j) ? edges : vacant).emplace_back(i, j);
  if (r < 0 || r > static_cast<int>(edges.size()) || r > static_cast<int>(vacant.size()))
    throw ValidationError("rewire: cannot move " + std::to_string(r) + " edges (" +
                          std::to_string(edges.size()) + " edges, " +
                          std::to_string(vacant.size()) + " vacancies)");
  Rng rng(seed);
  std::shuffle(edges.begin(), edges.end(), rng);
  std::shuffle(vacant.begin(), vacant.end(), rng);
  Adjacency out = a;
  for (int k = 0; k < r; ++k) {
    const auto [i, j] = edges[static_cast<std::size_t>(k)];
    const auto [p, q] = vacant[static_cast<std::size_t>(k)];
    out(i, j) = out(j, i) = false;
    out(p, q) = out(q, p) = true;
  }
  return out;
}

int count_edges(const Adjacency& a) {
  int e = 0;
  for (int i = 1; i < a.rows(); ++i)
    for (int j = 0; j < i; ++j) e += a(i, j) ? 1 : 0;
  return e;
}

int count_vacancies(const Adjacency& a) {
  const auto d = static_cast<int>(a.rows());
  return d * (d - 1) / 2 - count_edges(a);
}

bool is_simple(const Adjacency& a) {
  if (a.rows() != a.cols()) return false;
  for (int i = 0; i < a.rows(); ++i) {
    if (a(i, i)) return false;
    for (int j = 0; j < i; ++j)
      if (a(i, j) != a(j, i)) return false;
  }
  return true;
}

Matrix sample_sigma_raw(const Adjacency& a, const MixtureParams& params, std::uint64_t seed) {
  if (!is_simple(a)) throw ValidationError("sample_sigma_raw: adjacency is not a simple graph");
  if (!(params.lambda_exp > 0.0) || !(params.sigma2 > 0.0))
    throw ValidationError("mixture parameters: lambda_exp and sigma2 must be positive");
  const Eigen::Index d = a.rows();
  Rng rng(seed);
  std::exponential_distribution<double> diag(
      params.lambda_kind == ExpParametrization::kRate ? params.lambda_exp : 1.0 / params.lambda_exp);
  std::normal_distribution<double> z(0.0, 1.0);
  const double sd = std::sqrt(params.sigma2);
  Matrix s(d, d);
  for (Eigen::Index i = 0; i < d; ++i) s(i, i) = diag(rng);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const double mu = a(i, j) ? params.mu1 : params.mu2;
      s(i, j) = s(j, i) = std::abs(mu + sd * z(rng));
    }
  return s;
}

Matrix build_sigma_from_topology(const Adjacency& a, const MixtureParams& params,
                                 std::uint64_t seed, const NearestPdOptions& pd) {
  CovEstimate raw;
  raw.matrix = sample_sigma_raw(a, params, seed);
  return nearest_pd(raw, pd).matrix;
}

const char* to_string(ExpParametrization p) noexcept {
  return p == ExpParametrization::kRate ? "rate" : "mean";
}

const char* to_string(TopologyKind k) noexcept {
  return k == TopologyKind::kSmallWorld ? "small_world" : "block_diagonal";
}

}  // namespace netlap
