#include <gtest/gtest.h>

#include "support.hpp"

namespace netlap {
namespace {

Matrix stack(const SeriesBatch& b) {
  Eigen::Index rows = 0;
  for (const auto& x : b) rows += x.rows();
  Matrix all(rows, b.front().cols());
  Eigen::Index r = 0;
  for (const auto& x : b) {
    all.middleRows(r, x.rows()) = x;
    r += x.rows();
  }
  return all;
}

TEST(GaussianSeries, ShapeAndDeterminism) {
  const Matrix sigma = testing::well_conditioned_sigma(4, 1);
  const SeriesBatch a = sample_gaussian_series(sigma, 30, 5, 7);
  ASSERT_EQ(a.size(), 5u);
  EXPECT_EQ(a[0].rows(), 30);
  EXPECT_EQ(a[0].cols(), 4);
  const SeriesBatch b = sample_gaussian_series(sigma, 30, 5, 7);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
  EXPECT_NE(a[0], sample_gaussian_series(sigma, 30, 5, 8)[0]);
  // subject i does not depend on how many subjects are drawn
  EXPECT_EQ(sample_gaussian_series(sigma, 30, 2, 7)[1], a[1]);
}

TEST(GaussianSeries, MomentsOfIdentityCovariance) {
  const SeriesBatch b = sample_gaussian_series(Matrix::Identity(3, 3), 100, 100, 3);
  const Matrix x = stack(b);
  const double n = static_cast<double>(x.rows());  // 10^4
  for (int a = 0; a < 3; ++a) {
    const double mean = x.col(a).mean();
    const double var = (x.col(a).array() - mean).square().sum() / (n - 1);
    EXPECT_NEAR(mean, 0.0, 3.0 / std::sqrt(n));
    EXPECT_NEAR(var, 1.0, 3.0 * std::sqrt(2.0 / n));
  }
}

TEST(GaussianSeries, CovarianceConverges) {
  const Matrix sigma = testing::well_conditioned_sigma(5, 2);
  const Matrix x = sample_gaussian_series(sigma, 1000, 1, 4).front();
  const Matrix s = association_covariance(x).entries();
  EXPECT_LE((s - sigma).norm() / sigma.norm(), 0.1);
}

TEST(GaussianSeries, RejectsBadInput) {
  Matrix indefinite = Matrix::Identity(3, 3);
  indefinite(1, 1) = -1.0;
  EXPECT_THROW(sample_gaussian_series(indefinite, 10, 1, 0), NumericalError);
  EXPECT_THROW(sample_gaussian_series(Matrix::Identity(3, 3), 1, 1, 0), ValidationError);
  EXPECT_THROW(sample_gaussian_series(Matrix::Identity(3, 3), 10, 0, 0), ValidationError);
}

TEST(ArSeries, NoMemoryReducesToGaussian) {
  const Matrix sigma = testing::well_conditioned_sigma(4, 3);
  const SeriesBatch g = sample_gaussian_series(sigma, 50, 3, 11);
  const SeriesBatch ar = sample_ar_series(sigma, 50, 3, Vector::Zero(4), 0.0, 11);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(g[i], ar[i]);
}

TEST(ArSeries, FollowsTheRecursion) {
  const Matrix sigma = testing::well_conditioned_sigma(3, 4);
  Vector alpha(3);
  alpha << 0.5, -1.0, 2.0;
  const Matrix e = sample_gaussian_series(sigma, 20, 1, 5).front();
  const Matrix x = sample_ar_series(sigma, 20, 1, alpha, 0.3, 5).front();
  EXPECT_LE((x.row(0) - (alpha.transpose() + e.row(0))).norm(), 1e-14);
  for (int t = 1; t < 20; ++t)
    EXPECT_LE((x.row(t) - (alpha.transpose() + 0.3 * x.row(t - 1) + e.row(t))).norm(), 1e-12);
}

TEST(ArSeries, LagOneAutocorrelation) {
  const Matrix x = sample_ar_series(Matrix::Identity(1, 1), 10000, 1, Vector::Zero(1), 0.5, 6).front();
  const Vector v = x.col(0);
  const double mean = v.mean();
  double num = 0.0, den = 0.0;
  for (Eigen::Index t = 0; t < v.size(); ++t) {
    den += (v(t) - mean) * (v(t) - mean);
    if (t > 0) num += (v(t) - mean) * (v(t - 1) - mean);
  }
  EXPECT_NEAR(num / den, 0.5, 3.0 * std::sqrt((1 - 0.25) / 10000.0));
}

TEST(ArSeries, StationaryVariance) {
  const Matrix sigma = testing::well_conditioned_sigma(3, 7);
  const double phi = 0.5;
  const Matrix x = sample_ar_series(sigma, 10000, 1, Vector::Zero(3), phi, 8).front();
  const Matrix tail = x.bottomRows(10000 - 100);
  const Matrix s = association_covariance(tail).entries();
  const Matrix want = sigma / (1 - phi * phi);
  for (int a = 0; a < 3; ++a) EXPECT_NEAR(s(a, a), want(a, a), 0.1 * want(a, a));
  EXPECT_LE((s - want).norm() / want.norm(), 0.1);
  EXPECT_THROW(sample_ar_series(sigma, 10, 1, Vector::Zero(3), 1.0, 0), ValidationError);
  EXPECT_THROW(sample_ar_series(sigma, 10, 1, Vector::Zero(2), 0.5, 0), ValidationError);
}

}  // namespace
}  // namespace netlap
