#include "netlap/chisq.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <string>

#include "netlap/errors.hpp"

namespace netlap {

double chi_square_sf(double t, int dof) {
  if (dof < 1) throw ValidationError("chi_square_sf: dof must be >= 1, got " + std::to_string(dof));
  if (std::isnan(t) || t < 0.0) throw ValidationError("chi_square_sf: statistic must be >= 0");
  if (t == 0.0) return 1.0;
  if (std::isinf(t)) return 0.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * t);
}

double student_t_two_sided(double t, double df) {
  if (!(df > 0.0)) throw ValidationError("student_t_two_sided: df must be positive");
  if (std::isnan(t)) throw ValidationError("student_t_two_sided: NaN statistic");
  if (std::isinf(t)) return 0.0;
  const boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

}  // namespace netlap
