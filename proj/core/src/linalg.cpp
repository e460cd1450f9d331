#include "netlap/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "netlap/errors.hpp"

namespace netlap {

double scaled_tolerance(const Matrix& m, double rel) {
  const double scale = m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
  return rel * std::max(1.0, scale);
}

bool is_finite(const Matrix& m) { return m.allFinite(); }

bool is_symmetric(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = j + 1; i < m.rows(); ++i)
      if (std::abs(m(i, j) - m(j, i)) > tol) return false;
  return true;
}

namespace {

void run_dsyevd(char jobz, Matrix& a, Vector& w) {
  const auto n = static_cast<lapack_int>(a.rows());
  w.resize(n);
  if (n == 0) return;
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, jobz, 'L', n, a.data(), n, w.data());
  if (info != 0)
    throw NumericalError("dsyevd failed with info=" + std::to_string(info));
}

}  // namespace

SymmetricEigen symmetric_eigen(const Matrix& a) {
  if (!a.allFinite()) throw NumericalError("eigendecomposition of non-finite matrix");
  SymmetricEigen out;
  out.vectors = a;
  run_dsyevd('V', out.vectors, out.values);
  return out;
}

Vector symmetric_eigenvalues(const Matrix& a) {
  if (!a.allFinite()) throw NumericalError("eigendecomposition of non-finite matrix");
  Matrix work = a;
  Vector w;
  run_dsyevd('N', work, w);
  return w;
}

double exact_sum(std::span<const double> values) {
  std::vector<double> partials;
  partials.reserve(8);
  for (double x : values) {
    std::size_t k = 0;
    for (double y : partials) {
      if (std::abs(x) < std::abs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials[k++] = lo;
      x = hi;
    }
    partials.resize(k);
    partials.push_back(x);
  }
  std::size_t n = partials.size();
  if (n == 0) return 0.0;
  double hi = partials[--n];
  double lo = 0.0;
  while (n > 0) {
    const double x = hi;
    const double y = partials[--n];
    hi = x + y;
    lo = y - (hi - x);
    if (lo != 0.0) break;
  }
  // Round half to even when the discarded tail sits exactly on a tie.
  if (n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0))) {
    const double y = lo * 2.0;
    const double x = hi + y;
    if (y == x - hi) hi = x;
  }
  return hi;
}

}  // namespace netlap
