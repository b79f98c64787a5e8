#pragma once

#include <cmath>

#include "ecbe/errors.hpp"

namespace ecbe {

/// Hoeffding confidence radius sqrt(R^2 ln(1/alpha) / (2n)) for the mean of
/// n observations of a range-R variable at confidence 1 - alpha.
inline double hoeffding_epsilon(double range_r, double alpha, long n) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw config_error("hoeffding_epsilon: alpha must be in (0,1)");
  if (range_r < 0.0)
    throw config_error("hoeffding_epsilon: range must be nonnegative");
  if (n < 1) throw config_error("hoeffding_epsilon: n must be positive");
  return std::sqrt(range_r * range_r * std::log(1.0 / alpha) /
                   (2.0 * static_cast<double>(n)));
}

}  // namespace ecbe
