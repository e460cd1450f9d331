#include "netlap/clt.hpp"

#include <cmath>
#include <string>

#include "netlap/association.hpp"
#include "netlap/errors.hpp"
#include "netlap/graph.hpp"
#include "netlap/rng.hpp"
#include "netlap/series.hpp"

namespace netlap {

Matrix wishart_edge_covariance(const Matrix& sigma, int T) {
  if (T < 2) throw ValidationError("wishart_edge_covariance: need T >= 2");
  const Eigen::Index d = sigma.rows();
  const Eigen::Index m = edge_count(d);
  Matrix out(m, m);
  const double scale = 1.0 / (T - 1);
  for (Eigen::Index a = 1; a < d; ++a)
    for (Eigen::Index b = 0; b < a; ++b)
      for (Eigen::Index c = 1; c < d; ++c)
        for (Eigen::Index e = 0; e < c; ++e)
          out(edge_index(a, b), edge_index(c, e)) =
              (sigma(a, c) * sigma(b, e) + sigma(a, e) * sigma(b, c)) * scale;
  return out;
}

CltReport clt_diagnostic(const CltConfig& config) {
  if (config.n < 1) throw ValidationError("clt: n must be >= 1");
  if (config.reps < 2) throw ValidationError("clt: reps must be >= 2");
  TopologySpec spec = config.topology;
  spec.seed = stream_seed(config.seed, Stage::kTopology);
  const Adjacency a = generate_topology(spec);
  const Matrix sigma =
      build_sigma_from_topology(a, config.mixture, stream_seed(config.seed, Stage::kSigma));
  const Vector center =
      vectorize(laplacian_from_association(AssociationMatrix(sigma))).values;

  CltReport out;
  out.m = static_cast<int>(center.size());
  out.population_cov = wishart_edge_covariance(sigma, config.T);

  const auto m = static_cast<Eigen::Index>(out.m);
  Matrix z(config.reps, m);
  Matrix grad_outer = Matrix::Zero(m, m);
  const double root_n = std::sqrt(static_cast<double>(config.n));
  for (int r = 0; r < config.reps; ++r) {
    const SeriesBatch batch = sample_gaussian_series(
        sigma, config.T, config.n,
        stream_seed(config.seed, Stage::kClt, static_cast<std::uint64_t>(r)));
    Vector mean = Vector::Zero(m);
    for (const Matrix& x : batch) {
      const Vector v = vectorize(laplacian_from_association(association_covariance(x))).values;
      const Vector grad = 2.0 * (center - v);
      grad_outer.noalias() += grad * grad.transpose();
      mean += v;
    }
    mean /= static_cast<double>(config.n);
    z.row(r) = (root_n * (mean - center)).transpose();
  }

  out.empirical_cov = z.transpose() * z / static_cast<double>(config.reps);
  const double pop_norm = out.population_cov.norm();
  out.rel_frobenius_error = (out.empirical_cov - out.population_cov).norm() / pop_norm;

  const double observations = static_cast<double>(config.reps) * config.n;
  const Matrix v = grad_outer / observations;
  const Matrix sandwich = 0.5 * v * 0.5;
  out.sandwich_error = (sandwich - out.population_cov).norm() / pop_norm;

  out.skewness_se = std::sqrt(6.0 / config.reps);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Vector col = z.col(k);
    const double mu = col.mean();
    const double m2 = (col.array() - mu).square().mean();
    const double m3 = (col.array() - mu).cube().mean();
    const double g = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
    out.skewness.push_back(g);
    out.max_abs_skewness = std::max(out.max_abs_skewness, std::abs(g));
  }
  return out;
}

}  // namespace netlap
