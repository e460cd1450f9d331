#pragma once

#include "netlap/graph.hpp"

namespace netlap {

enum class AssociationKind { kCovariance, kMutualInformation };

/// Sample covariance over time (denominator T - 1) of a T x d series.
AssociationMatrix association_covariance(const Matrix& series);

/// Plug-in mutual information (natural log) between every pair of columns.
/// Each column is cut into `bins` equal-width cells over its own range; a
/// constant column falls into a single cell and therefore has zero
/// information with every other column. The diagonal holds the marginal
/// entropies.
AssociationMatrix association_mutual_info(const Matrix& series, int bins);

const char* to_string(AssociationKind k) noexcept;

}  // namespace netlap
