#pragma once

// Shared fixtures: random association matrices, Laplacians and groups.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "netlap/netlap.hpp"

namespace netlap::testing {

inline Matrix random_symmetric(Eigen::Index d, std::mt19937_64& rng, double lo = -1.0,
                               double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) m(i, j) = m(j, i) = u(rng);
  return m;
}

// Non-negative weights with zero diagonal; each pair is an edge with
// probability p.
inline Matrix random_weights(Eigen::Index d, std::mt19937_64& rng, double p = 1.0) {
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::bernoulli_distribution keep(p);
  Matrix w = Matrix::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      if (keep(rng)) w(i, j) = w(j, i) = u(rng);
  return w;
}

inline LaplacianMatrix random_laplacian(Eigen::Index d, std::mt19937_64& rng, double p = 1.0) {
  return laplacian_from_association(AssociationMatrix(random_weights(d, rng, p)));
}

// Laplacians of sample covariances of Gaussian series with covariance sigma.
inline std::vector<LaplacianMatrix> covariance_laplacians(const Matrix& sigma, int n, int T,
                                                          std::uint64_t seed) {
  std::vector<LaplacianMatrix> out;
  for (const Matrix& x : sample_gaussian_series(sigma, T, n, seed))
    out.push_back(laplacian_from_association(association_covariance(x)));
  return out;
}

// A well-conditioned covariance with unit-scale entries.
inline Matrix well_conditioned_sigma(Eigen::Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Matrix a = random_symmetric(d, rng);
  return a * a.transpose() / static_cast<double>(d) + Matrix::Identity(d, d);
}

inline std::vector<LaplacianMatrix> permuted(const std::vector<LaplacianMatrix>& group,
                                             const Eigen::PermutationMatrix<Eigen::Dynamic>& p) {
  std::vector<LaplacianMatrix> out;
  for (const auto& l : group) out.emplace_back(p * l.entries() * p.transpose());
  return out;
}

inline std::vector<LaplacianMatrix> scaled(const std::vector<LaplacianMatrix>& group, double c) {
  std::vector<LaplacianMatrix> out;
  for (const auto& l : group) out.emplace_back(c * l.entries());
  return out;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

// Central two-sided binomial acceptance band [lo, hi] for the count of
// successes in n trials; each tail carries at most (1 - level) / 2.
inline std::pair<int, int> binomial_band(int n, double p, double level = 0.99) {
  std::vector<double> pmf(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k)
    pmf[static_cast<std::size_t>(k)] =
        std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                 k * std::log(p) + (n - k) * std::log1p(-p));
  const double tail = (1.0 - level) / 2.0;
  int lo = 0;
  for (double acc = pmf[0]; acc <= tail; acc += pmf[static_cast<std::size_t>(++lo)]) {}
  int hi = n;
  for (double acc = pmf[static_cast<std::size_t>(n)]; acc <= tail;
       acc += pmf[static_cast<std::size_t>(--hi)]) {}
  return {lo, hi};
}

// Kolmogorov-Smirnov distance of a sample from Uniform(0, 1).
inline double ks_uniform(std::vector<double> u) {
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    worst = std::max({worst, (i + 1) / n - u[i], u[i] - i / n});
  return worst;
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("netlap_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace netlap::testing
