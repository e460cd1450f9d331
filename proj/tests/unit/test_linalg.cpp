#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <random>

#include "support.hpp"

namespace netlap {
namespace {

TEST(ExactSum, CancellationThatNaiveSummationLoses) {
  const std::vector<double> v{1e100, 1.0, -1e100};
  EXPECT_EQ(exact_sum(v), 1.0);
  const std::vector<double> w{0.1, 0.2, 0.3, -0.6};
  // exact value of the four doubles is about -2.8e-17, not the naive 1.1e-16
  long double acc = 0.0L;
  for (double x : w) acc += x;
  EXPECT_NEAR(exact_sum(w), static_cast<double>(acc), 1e-30);
}

TEST(ExactSum, OrderFreeAndOdd) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(17);
    for (auto& x : v) x = z(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
    const double s = exact_sum(v);
    std::shuffle(v.begin(), v.end(), rng);
    EXPECT_EQ(exact_sum(v), s);
    for (auto& x : v) x = -x;
    EXPECT_EQ(exact_sum(v), -s);
  }
}

TEST(ExactSum, MatchesRationalArithmeticOnSmallIntegers) {
  // integers below 2^53 times powers of two sum exactly in long double here
  const std::vector<double> v{0x1p-60, 3.0, 0x1p52, -0x1p52, -3.0};
  EXPECT_EQ(exact_sum(v), 0x1p-60);
  EXPECT_EQ(exact_sum(std::vector<double>{}), 0.0);
}

TEST(SymmetricEigen, AgreesWithEigenSolver) {
  std::mt19937_64 rng(11);
  for (int d : {1, 2, 5, 30}) {
    const Matrix a = testing::random_symmetric(d, rng);
    const SymmetricEigen eig = symmetric_eigen(a);
    Eigen::SelfAdjointEigenSolver<Matrix> ref(a);
    EXPECT_LT((eig.values - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((symmetric_eigenvalues(a) - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);
    const Matrix recon = eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose();
    EXPECT_LT((recon - a).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_TRUE(std::is_sorted(eig.values.data(), eig.values.data() + d));
  }
}

TEST(Tolerance, ScalesWithLargestEntryButNotBelowOne) {
  Matrix m = Matrix::Constant(2, 2, 0.5);
  EXPECT_DOUBLE_EQ(scaled_tolerance(m), 1e-8);
  m(0, 1) = -300.0;
  EXPECT_DOUBLE_EQ(scaled_tolerance(m), 3e-6);
  Matrix s(2, 2);
  s << 1, 2, 2 + 1e-9, 1;
  EXPECT_TRUE(is_symmetric(s, 1e-8));
  EXPECT_FALSE(is_symmetric(s, 1e-10));
  s(0, 0) = NAN;
  EXPECT_FALSE(is_finite(s));
}

}  // namespace
}  // namespace netlap
