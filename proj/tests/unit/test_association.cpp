#include <gtest/gtest.h>

#include "oracles.hpp"
#include "support.hpp"

namespace netlap {
namespace {

TEST(CovarianceAssociation, Examples) {
  EXPECT_EQ(association_covariance(Matrix::Constant(5, 3, 2.5)).entries(), Matrix::Zero(3, 3));
  Vector x(3);
  x << 1.0, -2.0, 0.5;
  Matrix two(2, 3);
  two.row(0) = x.transpose();
  two.row(1) = -x.transpose();
  EXPECT_LE((association_covariance(two).entries() - 2.0 * x * x.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(association_covariance(Matrix::Ones(1, 3)), ValidationError);
}

TEST(CovarianceAssociation, MatchesTwoPassOracle) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> z;
  for (int rep = 0; rep < 5; ++rep) {
    Matrix x(80, 7);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = 3.0 + z(rng);
    const Matrix want = oracle::two_pass_cov(x, 79.0);
    EXPECT_LE((association_covariance(x).entries() - want).norm() / want.norm(), 1e-12);
  }
}

TEST(MutualInfo, HandHistogram) {
  Matrix x(4, 2);
  x << 0, 0, 0, 0, 1, 1, 1, 1;
  const Matrix mi = association_mutual_info(x, 2).entries();
  EXPECT_NEAR(mi(0, 1), std::log(2.0), 1e-15);
  EXPECT_NEAR(mi(0, 0), std::log(2.0), 1e-15);
}

TEST(MutualInfo, SelfInformationIsEntropy) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z;
  Matrix x(500, 3);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = z(rng);
  x.col(2) = x.col(0);
  const Matrix mi = association_mutual_info(x, 10).entries();
  EXPECT_NEAR(mi(0, 2), mi(0, 0), 1e-12);
  EXPECT_NEAR(mi(2, 2), mi(0, 0), 1e-12);
  EXPECT_EQ(mi, mi.transpose());
  EXPECT_GE(mi.minCoeff(), 0.0);
}

TEST(MutualInfo, IndependentCoordinatesNearZero) {
  const int T = 10000, bins = 10;
  std::mt19937_64 rng(4);
  std::normal_distribution<double> z;
  Matrix x(T, 4);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = z(rng);
  const Matrix mi = association_mutual_info(x, bins).entries();
  // 2 T I is asymptotically chi-square with (bins - 1)^2 degrees of freedom
  const double k = (bins - 1.0) * (bins - 1.0);
  const double bound = k / (2.0 * T) + 3.0 * std::sqrt(2.0 * k) / (2.0 * T);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < a; ++b) EXPECT_LE(mi(a, b), bound) << a << "," << b;
}

TEST(MutualInfo, ConstantColumnCarriesNoInformation) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> z;
  Matrix x(50, 3);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = z(rng);
  x.col(1).setConstant(4.0);
  const Matrix mi = association_mutual_info(x, 5).entries();
  EXPECT_EQ(mi(1, 0), 0.0);
  EXPECT_EQ(mi(1, 2), 0.0);
  EXPECT_EQ(mi(1, 1), 0.0);
  EXPECT_THROW(association_mutual_info(x, 1), ValidationError);
}

TEST(MutualInfo, FeedsAValidLaplacian) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> z;
  Matrix x(200, 5);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = z(rng);
  const LaplacianMatrix l = laplacian_from_association(association_mutual_info(x, 8));
  EXPECT_NEAR(l.entries().rowwise().sum().cwiseAbs().maxCoeff(), 0.0, 1e-12);
}

}  // namespace
}  // namespace netlap
