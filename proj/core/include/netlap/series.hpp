#pragma once

#include <cstdint>
#include <vector>

#include "netlap/linalg.hpp"

namespace netlap {

/// n subjects, each a T x d matrix (one row per time point). Subject i draws
/// from the stream (seed, Stage::kSubject, i), so a subject's series does not
/// depend on n.
using SeriesBatch = std::vector<Matrix>;

/// X_t iid N(0, Sigma) via the Cholesky factor of Sigma.
SeriesBatch sample_gaussian_series(const Matrix& sigma, int T, int n, std::uint64_t seed);

/// X_0 = alpha + e_0, X_t = alpha + phi X_{t-1} + e_t with e_t iid N(0, Sigma);
/// rows t = 0..T-1 are returned without burn-in. Uses the same innovations as
/// sample_gaussian_series for the same seed.
SeriesBatch sample_ar_series(const Matrix& sigma, int T, int n, const Vector& alpha, double phi,
                             std::uint64_t seed);

}  // namespace netlap
