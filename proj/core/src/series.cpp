#include "netlap/series.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <string>

#include "netlap/errors.hpp"
#include "netlap/rng.hpp"

namespace netlap {

namespace {

Matrix cholesky_factor(const Matrix& sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() == 0)
    throw ValidationError("series: covariance must be square and non-empty");
  const Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw NumericalError("series: Cholesky factorization failed; project Sigma to PD first");
  return llt.matrixL();
}

void require_shape(int T, int n) {
  if (T < 2) throw ValidationError("series: need T >= 2, got " + std::to_string(T));
  if (n < 1) throw ValidationError("series: need n >= 1, got " + std::to_string(n));
}

// T x d standard normal draws times L^T.
Matrix innovations(const Matrix& chol, int T, std::uint64_t seed, int subject) {
  Rng rng = make_rng(seed, Stage::kSubject, static_cast<std::uint64_t>(subject));
  std::normal_distribution<double> z(0.0, 1.0);
  const Eigen::Index d = chol.rows();
  Matrix draws(T, d);
  for (Eigen::Index t = 0; t < T; ++t)
    for (Eigen::Index a = 0; a < d; ++a) draws(t, a) = z(rng);
  return draws * chol.transpose();
}

}  // namespace

SeriesBatch sample_gaussian_series(const Matrix& sigma, int T, int n, std::uint64_t seed) {
  require_shape(T, n);
  const Matrix chol = cholesky_factor(sigma);
  SeriesBatch out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(innovations(chol, T, seed, i));
  return out;
}

SeriesBatch sample_ar_series(const Matrix& sigma, int T, int n, const Vector& alpha, double phi,
                             std::uint64_t seed) {
  require_shape(T, n);
  if (!(std::abs(phi) < 1.0))
    throw ValidationError("series: AR coefficient must satisfy |phi| < 1");
  if (alpha.size() != sigma.rows())
    throw ValidationError("series: drift vector has length " + std::to_string(alpha.size()) +
                          ", expected " + std::to_string(sigma.rows()));
  const Matrix chol = cholesky_factor(sigma);
  SeriesBatch out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Matrix x = innovations(chol, T, seed, i);
    x.row(0) = alpha.transpose() + x.row(0);
    for (Eigen::Index t = 1; t < T; ++t)
      x.row(t) = (alpha.transpose() + phi * x.row(t - 1)) + x.row(t);
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace netlap
