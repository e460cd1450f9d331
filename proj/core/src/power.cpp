#include "netlap/power.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "netlap/errors.hpp"
#include "netlap/rng.hpp"

namespace netlap {

namespace {

void fail(const std::string& field, const std::string& why) {
  throw ValidationError("config field '" + field + "': " + why);
}

LaplacianMatrix population_laplacian(const Matrix& sigma) {
  return laplacian_from_association(AssociationMatrix(sigma));
}

}  // namespace

void validate(const PowerStudyConfig& c) {
  if (c.topology.d < 4) fail("d", "must be >= 4");
  if (!(c.topology.rewire_beta >= 0.0 && c.topology.rewire_beta <= 1.0))
    fail("rewire_beta", "must lie in [0, 1]");
  if (c.n < 2) fail("n", "must be >= 2");
  if (c.T < 2) fail("T", "must be >= 2");
  if (c.reps < 1) fail("reps", "must be >= 1");
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) fail("alpha", "must lie in (0, 1)");
  if (c.association == AssociationKind::kMutualInformation && c.bins < 2)
    fail("bins", "must be >= 2");
  if (c.noise.kind == NoiseKind::kAr1 && !(std::abs(c.noise.phi) < 1.0))
    fail("ar_phi", "must satisfy |phi| < 1");
  if (!std::isfinite(c.noise.drift)) fail("ar_drift", "must be finite");
  if (!(c.estimator.delta >= 0.0) || !std::isfinite(c.estimator.delta))
    fail("delta", "must be finite and >= 0");
  if (!(c.mixture.lambda_exp > 0.0)) fail("lambda_exp", "must be > 0");
  if (!(c.mixture.sigma2 > 0.0)) fail("sigma2", "must be > 0");
  if (!(c.estimator.pd.tol > 0.0)) fail("pd_tol", "must be > 0");
  if (c.estimator.pd.max_iter < 1) fail("pd_max_iter", "must be >= 1");
  if (!(c.estimator.pd.floor_rel > 0.0)) fail("pd_floor_rel", "must be > 0");
  if (c.estimator.pd.anderson_depth < 0) fail("pd_anderson", "must be >= 0");
  if (!c.effect_ladder.empty()) {
    if (c.effect_ladder.front() != 0) fail("ladder", "must start at 0");
    for (int r : c.effect_ladder)
      if (r < 0) fail("ladder", "rewire counts must be >= 0");
  }
}

std::vector<int> default_effect_ladder(int edges) {
  std::vector<int> ladder{0};
  for (int r = 1; 4 * r <= edges; r *= 2) ladder.push_back(r);
  return ladder;
}

Scenario build_scenario(const PowerStudyConfig& config, int rewire_count) {
  TopologySpec spec = config.topology;
  spec.seed = stream_seed(config.seed, Stage::kTopology);
  const std::uint64_t sigma_seed = stream_seed(config.seed, Stage::kSigma);

  Adjacency a1 = generate_topology(spec);
  Adjacency a2 = rewire(a1, rewire_count, stream_seed(config.seed, Stage::kRewire));
  Matrix sigma1 = build_sigma_from_topology(a1, config.mixture, sigma_seed);
  Matrix sigma2 = rewire_count == 0 ? sigma1
                                    : build_sigma_from_topology(a2, config.mixture, sigma_seed);
  LaplacianMatrix l1 = population_laplacian(sigma1);
  LaplacianMatrix l2 = population_laplacian(sigma2);
  const double effect = frobenius_metric(l1, l2);
  return Scenario{std::move(a1), std::move(a2), std::move(sigma1), std::move(sigma2),
                  std::move(l1), std::move(l2), effect};
}

std::vector<LaplacianMatrix> simulate_group(const PowerStudyConfig& config, const Matrix& sigma,
                                            int replicate, int group) {
  const std::uint64_t seed = stream_seed(config.seed, Stage::kSeries,
                                         static_cast<std::uint64_t>(replicate),
                                         static_cast<std::uint64_t>(group));
  SeriesBatch batch;
  if (config.noise.kind == NoiseKind::kAr1) {
    const Vector drift = Vector::Constant(sigma.rows(), config.noise.drift);
    batch = sample_ar_series(sigma, config.T, config.n, drift, config.noise.phi, seed);
  } else {
    batch = sample_gaussian_series(sigma, config.T, config.n, seed);
  }
  std::vector<LaplacianMatrix> out;
  out.reserve(batch.size());
  for (const Matrix& x : batch) {
    if (config.association == AssociationKind::kMutualInformation)
      out.push_back(laplacian_from_association(association_mutual_info(x, config.bins)));
    else
      out.push_back(laplacian_from_association(association_covariance(x)));
  }
  return out;
}

TestReport run_replicate(const PowerStudyConfig& config, const Scenario& scenario, int replicate) {
  const NetworkGroup g1("group1", simulate_group(config, scenario.sigma1, replicate, 0));
  const NetworkGroup g2("group2", simulate_group(config, scenario.sigma2, replicate, 1));
  return test_two_sample(g1, g2, config.estimator);
}

PowerCurve run_power_study(const PowerStudyConfig& config, int workers) {
  validate(config);
  std::vector<int> ladder = config.effect_ladder;
  if (ladder.empty()) {
    TopologySpec spec = config.topology;
    spec.seed = stream_seed(config.seed, Stage::kTopology);
    ladder = default_effect_ladder(count_edges(generate_topology(spec)));
  }

  std::vector<Scenario> scenarios;
  scenarios.reserve(ladder.size());
  for (int r : ladder) scenarios.push_back(build_scenario(config, r));

  const std::size_t reps = static_cast<std::size_t>(config.reps);
  const std::size_t tasks = ladder.size() * reps;
  std::vector<char> rejected(tasks, 0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    while (true) {
      const std::size_t task = next.fetch_add(1);
      if (task >= tasks) return;
      {
        std::lock_guard lock(failure_mutex);
        if (failure) return;
      }
      try {
        const std::size_t rung = task / reps;
        const int replicate = static_cast<int>(task % reps);
        const TestReport rep = run_replicate(config, scenarios[rung], replicate);
        rejected[task] = rep.p_value < config.alpha ? 1 : 0;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const int nthreads = std::max(1, workers);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  PowerCurve curve;
  for (std::size_t rung = 0; rung < ladder.size(); ++rung) {
    PowerRow row;
    row.rewire_count = ladder[rung];
    row.effect_size = scenarios[rung].effect_size;
    row.reps = config.reps;
    for (std::size_t i = 0; i < reps; ++i) row.rejections += rejected[rung * reps + i];
    row.power = static_cast<double>(row.rejections) / row.reps;
    row.std_error = std::sqrt(row.power * (1.0 - row.power) / row.reps);
    curve.rows.push_back(row);
  }
  return curve;
}

const char* to_string(NoiseKind k) noexcept {
  return k == NoiseKind::kAr1 ? "ar1" : "gaussian_iid";
}

}  // namespace netlap
