#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecbe/hoeffding.hpp"

namespace ecbe {

struct DriftRecord {
  long block_index = 0;
  std::optional<double> psi_prev;  // absent for the first observed block
  double psi_curr = 0.0;
  double epsilon = 0.0;
  bool drift = false;
};

/// Block-wise drift decision on entropy deviations. A block's deviation is
/// compared against the previous block's: drift when |psi_prev - psi_curr|,
/// psi_prev, or psi_curr exceeds 2 epsilon, with epsilon the Hoeffding
/// radius for the current block size. The first observed block is recorded
/// without a decision.
class DriftDetector {
public:
  DriftDetector(double alpha, double range_r, double n_multiplier = 1.0)
      : alpha_(alpha), range_r_(range_r), n_multiplier_(n_multiplier) {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw config_error("DriftDetector: alpha must be in (0,1)");
    if (range_r < 0.0) throw config_error("DriftDetector: range must be >= 0");
    if (n_multiplier <= 0.0)
      throw config_error("DriftDetector: n multiplier must be positive");
  }

  const DriftRecord& observe(long block_index, double psi_curr, int block_size);

  const std::vector<DriftRecord>& log() const { return log_; }
  std::optional<double> prev_deviation() const { return prev_deviation_; }
  double alpha() const { return alpha_; }
  double range_r() const { return range_r_; }

  void reset() {
    prev_deviation_.reset();
    log_.clear();
  }

private:
  double alpha_;
  double range_r_;
  double n_multiplier_;
  std::optional<double> prev_deviation_;
  std::vector<DriftRecord> log_;
};

/// Serializes a drift log as CSV: block_index, psi_prev, psi_curr, epsilon,
/// decision. An absent psi_prev is written as an empty field.
std::string drift_log_csv(const std::vector<DriftRecord>& log);

}  // namespace ecbe
