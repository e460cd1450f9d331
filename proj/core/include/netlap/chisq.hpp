#pragma once

namespace netlap {

/// P(chi^2_dof > t), via the regularized upper incomplete gamma Q(dof/2, t/2).
double chi_square_sf(double t, int dof);

/// Two-sided tail probability P(|t_df| > |t|) for a (possibly fractional)
/// Student-t degrees of freedom.
double student_t_two_sided(double t, double df);

}  // namespace netlap
