#include "netlap/association.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "netlap/errors.hpp"

namespace netlap {

AssociationMatrix association_covariance(const Matrix& series) {
  if (series.rows() < 2)
    throw ValidationError("association_covariance: need T >= 2, got " +
                          std::to_string(series.rows()));
  const Vector mean = series.colwise().mean();
  const Matrix y = series.rowwise() - mean.transpose();
  Matrix s = y.transpose() * y / static_cast<double>(series.rows() - 1);
  return AssociationMatrix((s + s.transpose()) / 2.0);
}

AssociationMatrix association_mutual_info(const Matrix& series, int bins) {
  const Eigen::Index T = series.rows();
  const Eigen::Index d = series.cols();
  if (T < 2) throw ValidationError("association_mutual_info: need T >= 2");
  if (bins < 2) throw ValidationError("association_mutual_info: need bins >= 2");
  if (!series.allFinite()) throw ValidationError("association_mutual_info: non-finite series");

  const auto nb = static_cast<std::size_t>(bins);
  std::vector<std::vector<int>> cell(static_cast<std::size_t>(d),
                                     std::vector<int>(static_cast<std::size_t>(T)));
  std::vector<std::vector<double>> marginal(static_cast<std::size_t>(d),
                                            std::vector<double>(nb, 0.0));
  for (Eigen::Index a = 0; a < d; ++a) {
    const double lo = series.col(a).minCoeff();
    const double hi = series.col(a).maxCoeff();
    const double width = hi - lo;
    auto& c = cell[static_cast<std::size_t>(a)];
    for (Eigen::Index t = 0; t < T; ++t) {
      int k = 0;
      if (width > 0.0)
        k = std::min(bins - 1, static_cast<int>(std::floor((series(t, a) - lo) / width * bins)));
      c[static_cast<std::size_t>(t)] = k;
      marginal[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] += 1.0;
    }
  }

  const double total = static_cast<double>(T);
  Matrix s = Matrix::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    double h = 0.0;
    for (double count : marginal[static_cast<std::size_t>(a)])
      if (count > 0.0) h -= count / total * std::log(count / total);
    s(a, a) = std::max(0.0, h);
  }

  std::vector<double> joint(nb * nb);
  for (Eigen::Index a = 0; a < d; ++a) {
    const auto& ca = cell[static_cast<std::size_t>(a)];
    const auto& ma = marginal[static_cast<std::size_t>(a)];
    for (Eigen::Index b = a + 1; b < d; ++b) {
      const auto& cb = cell[static_cast<std::size_t>(b)];
      const auto& mb = marginal[static_cast<std::size_t>(b)];
      std::fill(joint.begin(), joint.end(), 0.0);
      for (Eigen::Index t = 0; t < T; ++t)
        joint[static_cast<std::size_t>(ca[static_cast<std::size_t>(t)]) * nb +
              static_cast<std::size_t>(cb[static_cast<std::size_t>(t)])] += 1.0;
      double mi = 0.0;
      for (std::size_t x = 0; x < nb; ++x)
        for (std::size_t y = 0; y < nb; ++y) {
          const double c = joint[x * nb + y];
          if (c > 0.0) mi += c / total * std::log(c * total / (ma[x] * mb[y]));
        }
      s(a, b) = s(b, a) = std::max(0.0, mi);
    }
  }
  return AssociationMatrix(std::move(s));
}

const char* to_string(AssociationKind k) noexcept {
  return k == AssociationKind::kMutualInformation ? "mutual_information" : "covariance";
}

}  // namespace netlap
