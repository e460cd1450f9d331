#include "netlap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "netlap/errors.hpp"

namespace netlap {

namespace {

void require_square_finite(const Matrix& m, const char* what) {
  if (m.rows() != m.cols())
    throw ValidationError(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + ", expected square");
  if (m.rows() == 0) throw ValidationError(std::string(what) + ": empty matrix");
  if (!m.allFinite()) throw ValidationError(std::string(what) + ": non-finite entries");
}

void require_symmetric(const Matrix& m, const char* what, double rel = kDefaultRelTolerance) {
  if (!(rel >= 0.0)) throw ValidationError(std::string(what) + ": negative tolerance");
  const double tol = scaled_tolerance(m, rel);
  if (is_symmetric(m, tol)) return;
  Eigen::Index wi = 0, wj = 0;
  const Matrix diff = (m - m.transpose()).cwiseAbs();
  const double worst = diff.maxCoeff(&wi, &wj);
  std::ostringstream msg;
  msg << what << ": asymmetric beyond tolerance " << tol << " (|a(" << wi << "," << wj
      << ") - a(" << wj << "," << wi << ")| = " << worst << ")";
  throw ValidationError(msg.str());
}

Matrix symmetrized(const Matrix& m) { return (m + m.transpose()) / 2.0; }

// Sum of the off-diagonal entries of row `a`, correctly rounded.
double offdiagonal_row_sum(const Matrix& m, Eigen::Index a) {
  std::vector<double> row;
  row.reserve(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index b = 0; b < m.cols(); ++b)
    if (b != a) row.push_back(m(a, b));
  return exact_sum(row);
}

bool row_sums_vanish(const Matrix& m, double rel = kDefaultRelTolerance) {
  const double tol = scaled_tolerance(m, rel);
  std::vector<double> row(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index a = 0; a < m.rows(); ++a) {
    for (Eigen::Index b = 0; b < m.cols(); ++b) row[static_cast<std::size_t>(b)] = m(a, b);
    if (std::abs(exact_sum(row)) > tol) return false;
  }
  return true;
}

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b)
    throw ValidationError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                          " vs " + std::to_string(b) + ")");
}

}  // namespace

AssociationMatrix::AssociationMatrix(Matrix entries, double rel_tol) {
  require_square_finite(entries, "association matrix");
  require_symmetric(entries, "association matrix", rel_tol);
  entries_ = symmetrized(entries);
}

LaplacianMatrix::LaplacianMatrix(Matrix entries, double rel_tol) {
  require_square_finite(entries, "laplacian");
  require_symmetric(entries, "laplacian", rel_tol);
  entries_ = symmetrized(entries);
  if (!row_sums_vanish(entries_, rel_tol))
    throw ValidationError("laplacian: row sums are not zero within tolerance");
}

LaplacianMatrix laplacian_from_association(const AssociationMatrix& s) {
  const Matrix& w = s.entries();
  const Eigen::Index d = w.rows();
  Matrix l = -w;
  // D_aa - s_aa: the self-weight cancels, leaving the off-diagonal degree.
  for (Eigen::Index a = 0; a < d; ++a) l(a, a) = offdiagonal_row_sum(w, a);
  return LaplacianMatrix(std::move(l));
}

EdgeVector vectorize(const LaplacianMatrix& l) {
  const Eigen::Index d = l.dim();
  EdgeVector v{d, Vector(edge_count(d))};
  for (Eigen::Index i = 1; i < d; ++i)
    for (Eigen::Index j = 0; j < i; ++j) v.values(edge_index(i, j)) = l(i, j);
  return v;
}

LaplacianMatrix devectorize(const EdgeVector& v) {
  const Eigen::Index d = v.dim;
  if (d < 1 || v.values.size() != edge_count(d))
    throw ValidationError("edge vector: length " + std::to_string(v.values.size()) +
                          " does not match d=" + std::to_string(d));
  Matrix l = Matrix::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i)
    for (Eigen::Index j = 0; j < i; ++j) {
      l(i, j) = v.values(edge_index(i, j));
      l(j, i) = l(i, j);
    }
  for (Eigen::Index a = 0; a < d; ++a) l(a, a) = -offdiagonal_row_sum(l, a);
  return LaplacianMatrix(std::move(l));
}

double frobenius_distance(const LaplacianMatrix& x, const LaplacianMatrix& y) {
  require_same_dim(x.dim(), y.dim(), "frobenius_distance");
  return (x.entries() - y.entries()).squaredNorm();
}

double frobenius_metric(const LaplacianMatrix& x, const LaplacianMatrix& y) {
  return std::sqrt(frobenius_distance(x, y));
}

LaplacianMatrix frechet_mean(std::span<const LaplacianMatrix> sample) {
  if (sample.empty()) throw ValidationError("frechet_mean: empty sample");
  const Eigen::Index d = sample.front().dim();
  Matrix acc = Matrix::Zero(d, d);
  for (const auto& l : sample) {
    require_same_dim(d, l.dim(), "frechet_mean");
    acc += l.entries();
  }
  acc /= static_cast<double>(sample.size());
  return LaplacianMatrix(std::move(acc));
}

SpaceDiagnostic space_membership(const Matrix& l, double tol_eig) {
  require_square_finite(l, "space_membership");
  require_symmetric(l, "space_membership");
  const Eigen::Index d = l.rows();
  const Vector eig = symmetric_eigenvalues(symmetrized(l));

  SpaceDiagnostic out;
  out.lambda_min = eig(0);
  out.lambda_max = eig(d - 1);
  const double scale = std::max(out.lambda_max, 0.0);
  out.rank = static_cast<int>((eig.array() > tol_eig * scale).count());
  out.n_components = static_cast<int>(d) - out.rank;
  out.psd = out.lambda_min >= -tol_eig * scale;
  out.row_sums_ok = row_sums_vanish(l);

  bool strict = true, nonpos = true;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      if (i == j) continue;
      if (l(i, j) >= 0.0) strict = false;
      if (l(i, j) > 0.0) nonpos = false;
    }
  out.offdiag_sign = strict   ? OffDiagonalSign::kStrictlyNegative
                     : nonpos ? OffDiagonalSign::kNonPositive
                              : OffDiagonalSign::kMixed;

  const bool base = out.rank == d - 1 && out.psd && out.row_sums_ok;
  out.in_L_d = base && strict;
  out.in_L_d_prime = base && nonpos;
  return out;
}

SpaceDiagnostic space_membership(const LaplacianMatrix& l, double tol_eig) {
  return space_membership(l.entries(), tol_eig);
}

bool component_monotonicity_check(const LaplacianMatrix& l1, const LaplacianMatrix& l2,
                                  double tol_eig) {
  require_same_dim(l1.dim(), l2.dim(), "component_monotonicity_check");
  const std::vector<LaplacianMatrix> pair{l1, l2};
  const int c1 = space_membership(l1, tol_eig).n_components;
  const int c2 = space_membership(l2, tol_eig).n_components;
  const int cm = space_membership(frechet_mean(pair), tol_eig).n_components;
  return cm <= std::min(c1, c2);
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw ValidationError("percentile: empty input");
  if (!(q >= 0.0 && q <= 100.0)) throw ValidationError("percentile: q outside [0, 100]");
  std::sort(values.begin(), values.end());
  const double pos = q / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<BoolMatrix> binarize_percentile(std::span<const LaplacianMatrix> sample, double q) {
  if (sample.empty()) throw ValidationError("binarize_percentile: empty sample");
  const Eigen::Index d = sample.front().dim();
  std::vector<double> pooled;
  pooled.reserve(sample.size() * static_cast<std::size_t>(d * d));
  for (const auto& l : sample) {
    require_same_dim(d, l.dim(), "binarize_percentile");
    pooled.insert(pooled.end(), l.entries().data(), l.entries().data() + l.entries().size());
  }
  const double threshold = percentile(std::move(pooled), q);
  std::vector<BoolMatrix> masks;
  masks.reserve(sample.size());
  for (const auto& l : sample) masks.emplace_back((l.entries().array() >= threshold).matrix());
  return masks;
}

const char* to_string(OffDiagonalSign s) noexcept {
  switch (s) {
    case OffDiagonalSign::kStrictlyNegative: return "strictly-negative";
    case OffDiagonalSign::kNonPositive: return "non-positive";
    case OffDiagonalSign::kMixed: return "mixed";
  }
  return "mixed";
}

}  // namespace netlap
