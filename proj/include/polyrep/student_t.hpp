#pragma once

namespace polyrep {

/// Regularized incomplete beta function I_x(a, b) for a, b > 0 and x in [0, 1].
double regularized_incomplete_beta(double x, double a, double b);

/// P(T <= t) for Student's t with `df` degrees of freedom.
double student_t_cdf(double t, double df);

/// P(|T| >= |t|).
double student_t_two_tailed_p(double t, double df);

}  // namespace polyrep
