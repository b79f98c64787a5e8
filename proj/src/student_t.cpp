#include "ecbe/student_t.hpp"

#include <cmath>
#include <limits>

#include "ecbe/errors.hpp"

namespace ecbe {

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-15;
  constexpr int max_iterations = 500;

  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double result = d;

  for (int m = 1; m <= max_iterations; ++m) {
    const double dm = static_cast<double>(m);
    // Even term.
    double numerator = dm * (b - dm) * x / ((a + 2.0 * dm - 1.0) * (a + 2.0 * dm));
    d = 1.0 + numerator * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + numerator / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    result *= d * c;
    // Odd term.
    numerator = -(a + dm) * (a + b + dm) * x / ((a + 2.0 * dm) * (a + 2.0 * dm + 1.0));
    d = 1.0 + numerator * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + numerator / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    result *= delta;
    if (std::abs(delta - 1.0) < eps) break;
  }
  return result;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(b) - std::lgamma(a) +
                        b * std::log1p(-x) + a * std::log(x)) *
                   beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, int df) {
  if (df < 1) throw config_error("student_t_cdf: df must be >= 1");
  const double v = static_cast<double>(df);
  const double x = v / (v + t * t);
  const double tail = 0.5 * incomplete_beta(v / 2.0, 0.5, x);
  return t >= 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double alpha, int df) {
  if (df < 1) throw config_error("student_t_quantile: df must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw config_error("student_t_quantile: alpha must be in (0,1)");
  if (alpha == 0.5) return 0.0;
  if (alpha > 0.5) return -student_t_quantile(1.0 - alpha, df);

  const double target = 1.0 - alpha;
  double lo = 0.0;
  double hi = 1.0;
  while (student_t_cdf(hi, df) < target) {
    hi *= 2.0;
    if (hi > 1e12) break;
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (student_t_cdf(mid, df) < target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-12 * std::max(1.0, lo)) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace ecbe
