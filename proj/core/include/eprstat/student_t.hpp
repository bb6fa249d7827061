#pragma once

namespace eprstat {

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1],
/// evaluated with the modified Lentz continued fraction. Relative accuracy
/// is about 1e-14 over the parameter range used for t-tests.
double regularized_incomplete_beta(double a, double b, double x);

/// P(T <= t) for Student's t with `dof` > 0 degrees of freedom.
double student_t_cdf(double t, double dof);

/// P(T >= t), computed without cancellation in the upper tail.
double student_t_sf(double t, double dof);

}  // namespace eprstat
