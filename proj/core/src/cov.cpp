#include "netlap/cov.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <string>

#include "netlap/errors.hpp"

namespace netlap {

namespace {

Vector column_means(const Matrix& rows) {
  Vector mean = Vector::Zero(rows.cols());
  for (Eigen::Index l = 0; l < rows.rows(); ++l)
    for (Eigen::Index i = 0; i < rows.cols(); ++i) mean(i) += rows(l, i);
  return mean / static_cast<double>(rows.rows());
}

void require_estimable(const VectorSample& s, const Vector& center, const char* what) {
  if (s.n() < 2)
    throw ValidationError(std::string(what) + ": need n >= 2 observations, got " +
                          std::to_string(s.n()));
  if (center.size() != s.dim())
    throw ValidationError(std::string(what) + ": center has length " +
                          std::to_string(center.size()) + ", expected " +
                          std::to_string(s.dim()));
}

// X - 1 c^T
Matrix centered(const VectorSample& s, const Vector& center) {
  return s.rows().rowwise() - center.transpose();
}

// Clips the spectrum of a symmetric matrix from below at `floor`. Works from
// whichever side of the spectrum is smaller.
Matrix clip_spectrum(const Matrix& a, double floor) {
  const SymmetricEigen eig = symmetric_eigen(a);
  const Eigen::Index m = a.rows();
  const Eigen::Index below = (eig.values.array() < floor).count();
  if (below == 0) return a;
  Matrix out;
  if (below <= m / 2) {
    const auto v = eig.vectors.leftCols(below);
    const Vector shift = (floor - eig.values.head(below).array()).matrix();
    out = a + v * shift.asDiagonal() * v.transpose();
  } else {
    Vector clipped = eig.values.cwiseMax(floor);
    out = eig.vectors * clipped.asDiagonal() * eig.vectors.transpose();
  }
  return (out + out.transpose()) / 2.0;
}

}  // namespace

VectorSample::VectorSample(Matrix rows) : rows_(std::move(rows)) {
  if (rows_.rows() < 1) throw ValidationError("vector sample: no observations");
  if (!rows_.allFinite()) throw ValidationError("vector sample: non-finite entries");
  mean_ = column_means(rows_);
}

VectorSample VectorSample::from_edge_vectors(std::span<const EdgeVector> vectors) {
  if (vectors.empty()) throw ValidationError("vector sample: no observations");
  const Eigen::Index m = vectors.front().values.size();
  Matrix rows(static_cast<Eigen::Index>(vectors.size()), m);
  for (std::size_t l = 0; l < vectors.size(); ++l) {
    if (vectors[l].values.size() != m)
      throw ValidationError("vector sample: row " + std::to_string(l) + " has length " +
                            std::to_string(vectors[l].values.size()) + ", expected " +
                            std::to_string(m));
    rows.row(static_cast<Eigen::Index>(l)) = vectors[l].values.transpose();
  }
  return VectorSample(std::move(rows));
}

VectorSample VectorSample::from_laplacians(std::span<const LaplacianMatrix> laplacians) {
  std::vector<EdgeVector> v;
  v.reserve(laplacians.size());
  for (const auto& l : laplacians) v.push_back(vectorize(l));
  return from_edge_vectors(v);
}

CovEstimate sample_cov(const VectorSample& sample, Denominator den) {
  return sample_cov_about(sample, sample.mean(), den);
}

CovEstimate sample_cov_about(const VectorSample& sample, const Vector& center, Denominator den) {
  require_estimable(sample, center, "sample_cov");
  const Matrix y = centered(sample, center);
  const double n = static_cast<double>(sample.n());
  CovEstimate out;
  out.matrix = y.transpose() * y / (den == Denominator::kN ? n : n - 1.0);
  out.matrix = (out.matrix + out.matrix.transpose()) / 2.0;
  out.estimator = EstimatorKind::kSample;
  return out;
}

CovEstimate cai_liu_threshold(const VectorSample& sample, double delta) {
  return cai_liu_threshold_about(sample, sample.mean(), delta);
}

CovEstimate cai_liu_threshold_about(const VectorSample& sample, const Vector& center,
                                    double delta) {
  require_estimable(sample, center, "cai_liu_threshold");
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw ValidationError("cai_liu_threshold: delta must be a finite non-negative number");

  const Eigen::Index n = sample.n();
  const Eigen::Index m = sample.dim();
  const double nd = static_cast<double>(n);
  const double log_m = std::log(static_cast<double>(m));
  const Matrix y = centered(sample, center);

  Matrix out(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = j; i < m; ++i) {
      double sigma = 0.0;
      for (Eigen::Index l = 0; l < n; ++l) sigma += y(l, i) * y(l, j);
      sigma /= nd;
      double value = sigma;
      if (i != j) {
        double theta = 0.0;
        for (Eigen::Index l = 0; l < n; ++l) {
          const double dev = y(l, i) * y(l, j) - sigma;
          theta += dev * dev;
        }
        theta /= nd;
        const double lambda = delta * std::sqrt(theta * log_m / nd);
        if (!(std::abs(sigma) >= lambda)) value = 0.0;
      }
      out(i, j) = value;
      out(j, i) = value;
    }
  }

  CovEstimate est;
  est.matrix = std::move(out);
  est.estimator = EstimatorKind::kThresholded;
  est.delta = delta;
  return est;
}

CovEstimate nearest_pd(const CovEstimate& c, const NearestPdOptions& opts) {
  const Matrix& input = c.matrix;
  if (input.rows() != input.cols() || input.rows() == 0)
    throw ValidationError("nearest_pd: matrix must be square and non-empty");
  if (!input.allFinite()) throw ValidationError("nearest_pd: non-finite entries");
  if (!is_symmetric(input, scaled_tolerance(input)))
    throw ValidationError("nearest_pd: asymmetric input");
  if (opts.max_iter < 1 || !(opts.tol > 0.0) || !(opts.floor_rel > 0.0))
    throw ValidationError("nearest_pd: invalid options");

  const Matrix a = (input + input.transpose()) / 2.0;
  const Eigen::Index m = a.rows();
  const Vector spectrum = symmetric_eigenvalues(a);
  const double tau = opts.floor_rel * std::max(spectrum(m - 1), 1.0);

  CovEstimate out = c;
  out.pd_projected = true;
  out.pd_floor = tau;
  out.pd_iterations = 0;
  out.pd_gap = 0.0;
  if (spectrum(0) >= tau) {
    out.matrix = a;
    return out;
  }

  // Unit-diagonal (correlation) scale. A non-positive variance is raised to
  // the largest magnitude in its row (or tau); raising it only to tau makes
  // the scaled problem so stiff that the projections stall.
  Vector target = a.diagonal();
  for (Eigen::Index i = 0; i < m; ++i)
    if (!(target(i) > 0.0)) target(i) = std::max(a.row(i).cwiseAbs().maxCoeff(), tau);
  const Vector scale = target.cwiseMax(tau).cwiseSqrt();
  const Vector inv_scale = scale.cwiseInverse();
  const Matrix r = inv_scale.asDiagonal() * a * inv_scale.asDiagonal();

  // Dykstra's iteration written as a fixed point in z = Y - dS:
  //   X = P_psd(z),  Y = P_diag(X),  z <- z + (Y - X).
  // The residual Y - X vanishes exactly at the projection onto the
  // intersection; Anderson mixing over the last few residuals speeds up the
  // otherwise linear convergence.
  const Eigen::Index nn = m * m;
  const int depth = std::max(0, opts.anderson_depth);
  Matrix z = r;
  Matrix y = r;
  Matrix dz_hist(nn, depth), df_hist(nn, depth);
  Vector z_prev, f_prev;
  int stored = 0;
  double gap = 0.0;
  bool converged = false;
  int iter = 0;
  while (iter < opts.max_iter) {
    ++iter;
    const Matrix x = clip_spectrum(z, 0.0);
    Matrix y_next = x;
    y_next.diagonal().setOnes();
    const double norm = y_next.norm();
    const double change = (y_next - y).norm() / norm;
    gap = (y_next - x).norm() / norm;
    y = std::move(y_next);
    if (std::max(change, gap) <= opts.tol) {
      converged = true;
      break;
    }
    const Vector zv = Eigen::Map<const Vector>(z.data(), nn);
    const Matrix resid = y - x;
    const Vector f = Eigen::Map<const Vector>(resid.data(), nn);
    Vector z_next = zv + f;
    if (depth > 0) {
      if (iter > 1) {
        const int slot = (stored < depth) ? stored++ : ((iter - 2) % depth);
        dz_hist.col(slot) = zv - z_prev;
        df_hist.col(slot) = f - f_prev;
      }
      if (stored > 0) {
        const auto dfs = df_hist.leftCols(stored);
        const Vector gamma = dfs.colPivHouseholderQr().solve(f);
        if (gamma.allFinite())
          z_next -= (dz_hist.leftCols(stored) + dfs) * gamma;
      }
      z_prev = zv;
      f_prev = f;
    }
    z = Eigen::Map<const Matrix>(z_next.data(), m, m);
    z = (z + z.transpose()) / 2.0;
  }
  if (!converged)
    throw ConvergenceError("nearest_pd: alternating projections did not converge in " +
                               std::to_string(opts.max_iter) + " iterations (gap " +
                               std::to_string(gap) + ")",
                           iter, gap);

  const Matrix rescaled = scale.asDiagonal() * y * scale.asDiagonal();
  out.matrix = clip_spectrum((rescaled + rescaled.transpose()) / 2.0, tau);
  out.pd_iterations = iter;
  out.pd_gap = gap;
  return out;
}

CovEstimate pooled_cov(std::span<const PoolInput> groups, PoolingMode mode) {
  if (groups.empty()) throw ValidationError("pooled_cov: no groups");
  const Eigen::Index m = groups.front().cov.get().dim();
  Matrix acc = Matrix::Zero(m, m);
  double total = 0.0;
  for (const auto& g : groups) {
    const CovEstimate& cov = g.cov.get();
    if (cov.dim() != m)
      throw ValidationError("pooled_cov: dimension mismatch (" + std::to_string(cov.dim()) +
                            " vs " + std::to_string(m) + ")");
    if (g.n < 2) throw ValidationError("pooled_cov: group size must be >= 2");
    total += static_cast<double>(g.n);
  }
  for (const auto& g : groups) {
    const double n = static_cast<double>(g.n);
    if (mode == PoolingMode::kWeightedAverage)
      acc += g.cov.get().matrix * (n / total);
    else
      acc += g.cov.get().matrix / n;
  }
  CovEstimate out = groups.front().cov.get();
  out.matrix = std::move(acc);
  out.pd_projected = false;
  out.pd_floor = 0.0;
  out.pd_iterations = 0;
  out.pd_gap = 0.0;
  out.pooling = mode;
  return out;
}

Vector solve_spd(const CovEstimate& c, const Vector& b) {
  if (b.size() != c.dim())
    throw ValidationError("solve_spd: right-hand side has length " + std::to_string(b.size()) +
                          ", expected " + std::to_string(c.dim()));
  if (!b.allFinite()) throw ValidationError("solve_spd: non-finite right-hand side");
  const Eigen::LLT<Matrix> llt(c.matrix);
  if (llt.info() != Eigen::Success)
    throw NumericalError("solve_spd: Cholesky factorization failed; project to PD first");
  Vector x = llt.solve(b);
  const double bn = b.norm();
  if (bn > 0.0) {
    const double resid = (c.matrix * x - b).norm() / bn;
    if (!(resid <= 1e-8))
      throw NumericalError("solve_spd: relative residual " + std::to_string(resid) +
                           " exceeds 1e-8");
  }
  return x;
}

const char* to_string(EstimatorKind k) noexcept {
  switch (k) {
    case EstimatorKind::kSample: return "sample";
    case EstimatorKind::kThresholded: return "thresholded";
    case EstimatorKind::kIdentity: return "identity";
  }
  return "sample";
}

const char* to_string(PoolingMode m) noexcept {
  switch (m) {
    case PoolingMode::kKSample: return "k_sample";
    case PoolingMode::kTwoSample: return "two_sample";
    case PoolingMode::kWeightedAverage: return "weighted_average";
  }
  return "k_sample";
}

}  // namespace netlap
