#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "ecbe/errors.hpp"
#include "ecbe/student_t.hpp"

namespace ecbe {

struct WeightPolicy {
  double beta = 2.0;    // growth factor applied when a member's deviation is 0
  double alpha = 0.05;  // confidence for the weight floor
  double w_init = 1.0;
  double w_min = 1e-12;
  double w_max = 1e12;
};

/// Multiplicative weight factor for one block: beta (> 1) on a zero
/// deviation, 1/e^(1+psi) otherwise. Discontinuous at 0 by construction.
inline double delta_factor(double psi, double beta) {
  if (beta <= 1.0) throw config_error("delta_factor: beta must be > 1");
  if (psi < 0.0) throw std::invalid_argument("delta_factor: psi must be >= 0");
  if (psi == 0.0) return beta;
  return std::exp(-(1.0 + psi));
}

inline double update_weight(double w, double psi, const WeightPolicy& policy) {
  return std::clamp(delta_factor(psi, policy.beta) * w, policy.w_min, policy.w_max);
}

/// Member weights recorded between two adjacent drifts; cleared when a drift
/// is confirmed.
class WeightLedger {
public:
  void append(double weight) { records_.push_back(weight); }
  void clear() { records_.clear(); }
  std::size_t size() const { return records_.size(); }
  const std::vector<double>& records() const { return records_; }

private:
  std::vector<double> records_;
};

/// Statistical lower bound on member weights under a stable concept:
/// mean(w) - (S/sqrt(n)) t_alpha(n-1) - 3S with S the sample standard
/// deviation. May be negative, in which case pruning is vacuous. Returns
/// nullopt (no floor) when fewer than two weights were recorded.
inline std::optional<double> weight_floor(const WeightLedger& ledger, double alpha) {
  const auto& w = ledger.records();
  const auto n = w.size();
  if (n < 2) return std::nullopt;
  double mean = 0.0;
  for (double x : w) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : w) ss += (x - mean) * (x - mean);
  const double s = std::sqrt(ss / static_cast<double>(n - 1));
  const double t = student_t_quantile(alpha, static_cast<int>(n) - 1);
  return mean - s / std::sqrt(static_cast<double>(n)) * t - 3.0 * s;
}

}  // namespace ecbe
