#include <benchmark/benchmark.h>

#include <random>

#include "netlap/netlap.hpp"

namespace {

using namespace netlap;

// Low-rank covariance plus symmetric noise: indefinite, like a thresholded
// estimate at n < m.
Matrix indefinite(Eigen::Index m, Eigen::Index rank, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  Matrix f(m, rank);
  for (Eigen::Index i = 0; i < f.size(); ++i) f.data()[i] = z(rng);
  Matrix e(m, m);
  for (Eigen::Index i = 0; i < e.size(); ++i) e.data()[i] = 0.3 * z(rng);
  return f * f.transpose() / static_cast<double>(rank) + (e + e.transpose()) / 2.0;
}

std::vector<LaplacianMatrix> group(Eigen::Index d, int n, std::uint64_t seed) {
  const Matrix sigma = Matrix::Identity(d, d) + Matrix::Constant(d, d, 0.2);
  std::vector<LaplacianMatrix> out;
  for (const Matrix& x : sample_gaussian_series(sigma, 100, n, seed))
    out.push_back(laplacian_from_association(association_covariance(x)));
  return out;
}

// m = d(d-1)/2 for d = 5, 10, 20, 30
void BM_NearestPd(benchmark::State& state) {
  const auto m = state.range(0);
  CovEstimate c;
  c.matrix = indefinite(m, m / 3 + 1, 1);
  int iters = 0;
  for (auto _ : state) {
    const CovEstimate out = nearest_pd(c, NearestPdOptions{.max_iter = 5000});
    iters = out.pd_iterations;
    benchmark::DoNotOptimize(out.matrix.data());
  }
  state.counters["iterations"] = iters;
}
BENCHMARK(BM_NearestPd)->Arg(10)->Arg(45)->Arg(190)->Arg(435)->Unit(benchmark::kMillisecond);

void BM_CaiLiu(benchmark::State& state) {
  const auto d = state.range(0);
  const VectorSample s = VectorSample::from_laplacians(group(d, 50, 2));
  for (auto _ : state) benchmark::DoNotOptimize(cai_liu_threshold(s, 2.0).matrix.data());
}
BENCHMARK(BM_CaiLiu)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_TwoSample(benchmark::State& state) {
  const auto d = state.range(0);
  const NetworkGroup a("a", group(d, 40, 3)), b("b", group(d, 40, 4));
  for (auto _ : state) benchmark::DoNotOptimize(test_two_sample(a, b).statistic);
}
BENCHMARK(BM_TwoSample)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_GaussianSeries(benchmark::State& state) {
  const auto d = state.range(0);
  const Matrix sigma = Matrix::Identity(d, d) + Matrix::Constant(d, d, 0.2);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_gaussian_series(sigma, 200, 10, ++seed).size());
}
BENCHMARK(BM_GaussianSeries)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
