#include "netlap/inference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netlap/chisq.hpp"
#include "netlap/errors.hpp"

namespace netlap {

namespace {

std::vector<LaplacianMatrix> checked_members(const std::string& label,
                                             std::vector<LaplacianMatrix> members) {
  if (members.size() < 2)
    throw ValidationError("group '" + label + "': need at least 2 members, got " +
                          std::to_string(members.size()));
  const Eigen::Index d = members.front().dim();
  for (std::size_t i = 1; i < members.size(); ++i)
    if (members[i].dim() != d)
      throw ValidationError("group '" + label + "': member " + std::to_string(i) +
                            " has dimension " + std::to_string(members[i].dim()) +
                            ", expected " + std::to_string(d));
  return members;
}

CovEstimate group_cov(const VectorSample& s, const Vector& center, const EstimatorOptions& opts) {
  if (opts.force_identity) {
    CovEstimate id;
    id.matrix = Matrix::Identity(s.dim(), s.dim());
    id.estimator = EstimatorKind::kIdentity;
    return id;
  }
  if (opts.threshold) return cai_liu_threshold_about(s, center, opts.delta);
  return sample_cov_about(s, center, Denominator::kNMinus1);
}

CovEstimate finalize(CovEstimate c, const EstimatorOptions& opts) {
  if (opts.force_identity) {
    c.matrix = Matrix::Identity(c.dim(), c.dim());
    c.estimator = EstimatorKind::kIdentity;
    return c;
  }
  if (opts.project_pd) return nearest_pd(c, opts.pd);
  return c;
}

double quadratic_form(const CovEstimate& c, const Vector& v) {
  if (v.isZero(0.0)) return 0.0;
  const Vector x = solve_spd(c, v);
  return std::max(0.0, v.dot(x));
}

EstimatorMeta meta_of(const CovEstimate& c) {
  EstimatorMeta m;
  m.kind = c.estimator;
  m.thresholded = c.estimator == EstimatorKind::kThresholded;
  m.delta = c.delta;
  m.pd_projected = c.pd_projected;
  m.pd_floor = c.pd_floor;
  m.pd_iterations = c.pd_iterations;
  m.pd_gap = c.pd_gap;
  if (c.pooling) m.pooling = to_string(*c.pooling);
  return m;
}

void require_same_dim(const NetworkGroup& a, const NetworkGroup& b) {
  if (a.dim() != b.dim())
    throw ValidationError("groups '" + a.label() + "' and '" + b.label() +
                          "' have different dimensions (" + std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()) + ")");
}

}  // namespace

NetworkGroup::NetworkGroup(std::string label, std::vector<LaplacianMatrix> laplacians)
    : label_(std::move(label)),
      laplacians_(checked_members(label_, std::move(laplacians))),
      vectors_(VectorSample::from_laplacians(laplacians_)) {}

TestReport test_one_sample(const NetworkGroup& group, const LaplacianMatrix& lambda0,
                           const EstimatorOptions& opts) {
  if (lambda0.dim() != group.dim())
    throw ValidationError("test_one_sample: reference Laplacian has dimension " +
                          std::to_string(lambda0.dim()) + ", group has " +
                          std::to_string(group.dim()));
  const VectorSample& s = group.vectors();
  const Vector delta = s.mean() - vectorize(lambda0).values;
  const CovEstimate cov = finalize(group_cov(s, s.mean(), opts), opts);

  TestReport r;
  r.kind = TestKind::kOneSample;
  r.d = group.dim();
  r.dof = static_cast<int>(edge_count(group.dim()));
  r.statistic = static_cast<double>(s.n()) * quadratic_form(cov, delta);
  r.p_value = chi_square_sf(r.statistic, r.dof);
  r.group_labels = {group.label()};
  r.group_sizes = {group.size()};
  r.estimator = meta_of(cov);
  return r;
}

TestReport test_two_sample(const NetworkGroup& g1, const NetworkGroup& g2,
                           const EstimatorOptions& opts) {
  require_same_dim(g1, g2);
  const VectorSample& s1 = g1.vectors();
  const VectorSample& s2 = g2.vectors();
  const Vector delta = s1.mean() - s2.mean();
  const CovEstimate c1 = group_cov(s1, s1.mean(), opts);
  const CovEstimate c2 = group_cov(s2, s2.mean(), opts);
  const std::vector<PoolInput> parts{{c1, s1.n()}, {c2, s2.n()}};
  const CovEstimate cov = finalize(pooled_cov(parts, PoolingMode::kTwoSample), opts);

  TestReport r;
  r.kind = TestKind::kTwoSample;
  r.d = g1.dim();
  r.dof = static_cast<int>(edge_count(g1.dim()));
  r.statistic = quadratic_form(cov, delta);
  r.p_value = chi_square_sf(r.statistic, r.dof);
  r.group_labels = {g1.label(), g2.label()};
  r.group_sizes = {g1.size(), g2.size()};
  r.estimator = meta_of(cov);
  return r;
}

TestReport test_k_sample(std::span<const NetworkGroup> groups, const EstimatorOptions& opts) {
  if (groups.size() < 2)
    throw ValidationError("test_k_sample: need at least 2 groups, got " +
                          std::to_string(groups.size()));
  for (const auto& g : groups) require_same_dim(groups.front(), g);

  const Eigen::Index d = groups.front().dim();
  const Eigen::Index m = edge_count(d);
  Vector grand = Vector::Zero(m);
  std::size_t total = 0;
  for (const auto& g : groups) {
    const Matrix& rows = g.vectors().rows();
    for (Eigen::Index l = 0; l < rows.rows(); ++l) grand += rows.row(l).transpose();
    total += g.size();
  }
  grand /= static_cast<double>(total);

  std::vector<CovEstimate> covs;
  covs.reserve(groups.size());
  for (const auto& g : groups) covs.push_back(group_cov(g.vectors(), grand, opts));
  std::vector<PoolInput> parts;
  for (std::size_t j = 0; j < groups.size(); ++j) parts.push_back({covs[j], groups[j].vectors().n()});
  const CovEstimate cov = finalize(pooled_cov(parts, opts.k_sample_pooling), opts);

  TestReport r;
  r.kind = TestKind::kKSample;
  r.d = d;
  r.dof = static_cast<int>((groups.size() - 1) * static_cast<std::size_t>(m));
  double stat = 0.0;
  for (const auto& g : groups) {
    const Vector delta = g.vectors().mean() - grand;
    stat += static_cast<double>(g.size()) * quadratic_form(cov, delta);
  }
  r.statistic = stat;
  r.p_value = chi_square_sf(r.statistic, r.dof);
  for (const auto& g : groups) {
    r.group_labels.push_back(g.label());
    r.group_sizes.push_back(g.size());
  }
  r.estimator = meta_of(cov);
  return r;
}

MassUnivariateResult mass_univariate(const NetworkGroup& g1, const NetworkGroup& g2, double alpha,
                                     Correction correction) {
  require_same_dim(g1, g2);
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("mass_univariate: alpha outside (0, 1)");
  const Eigen::Index d = g1.dim();
  const Eigen::Index m = edge_count(d);
  const VectorSample& s1 = g1.vectors();
  const VectorSample& s2 = g2.vectors();
  const double n1 = static_cast<double>(s1.n());
  const double n2 = static_cast<double>(s2.n());
  const Vector v1 = sample_cov(s1).matrix.diagonal();
  const Vector v2 = sample_cov(s2).matrix.diagonal();

  MassUnivariateResult out;
  out.level = correction == Correction::kBonferroni && m > 0 ? alpha / static_cast<double>(m) : alpha;
  out.p_values = Matrix::Ones(d, d);
  out.t_statistics = Matrix::Zero(d, d);
  out.uncorrected = BoolMatrix::Constant(d, d, false);
  out.corrected = BoolMatrix::Constant(d, d, false);
  for (Eigen::Index i = 1; i < d; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      const Eigen::Index k = edge_index(i, j);
      const double diff = s1.mean()(k) - s2.mean()(k);
      const double a = v1(k) / n1;
      const double b = v2(k) / n2;
      const double se2 = a + b;
      double t = 0.0;
      double p = 1.0;
      if (se2 > 0.0) {
        t = diff / std::sqrt(se2);
        const double df = se2 * se2 / (a * a / (n1 - 1.0) + b * b / (n2 - 1.0));
        p = student_t_two_sided(t, df);
      } else if (diff != 0.0) {
        t = diff > 0 ? INFINITY : -INFINITY;
        p = 0.0;
      }
      out.p_values(i, j) = out.p_values(j, i) = p;
      out.t_statistics(i, j) = out.t_statistics(j, i) = t;
      out.uncorrected(i, j) = out.uncorrected(j, i) = p < alpha;
      out.corrected(i, j) = out.corrected(j, i) = p < out.level;
    }
  }
  return out;
}

const char* to_string(TestKind k) noexcept {
  switch (k) {
    case TestKind::kOneSample: return "one_sample";
    case TestKind::kTwoSample: return "two_sample";
    case TestKind::kKSample: return "k_sample";
  }
  return "two_sample";
}

const char* to_string(Correction c) noexcept {
  return c == Correction::kBonferroni ? "bonferroni" : "none";
}

}  // namespace netlap
