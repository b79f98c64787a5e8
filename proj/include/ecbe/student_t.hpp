#pragma once

namespace ecbe {

/// Regularized incomplete beta function I_x(a, b), continued-fraction
/// evaluation.
double incomplete_beta(double a, double b, double x);

/// CDF of Student's t with df degrees of freedom.
double student_t_cdf(double t, int df);

/// One-sided upper-alpha quantile of Student's t: the value t with
/// P(T > t) = alpha. Negative for alpha > 0.5, zero at the median.
double student_t_quantile(double alpha, int df);

}  // namespace ecbe
