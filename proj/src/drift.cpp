#include "ecbe/drift.hpp"

#include <cmath>
#include <sstream>

#include "ecbe/format.hpp"

namespace ecbe {

const DriftRecord& DriftDetector::observe(long block_index, double psi_curr,
                                          int block_size) {
  if (psi_curr < 0.0)
    throw std::invalid_argument("DriftDetector: deviation must be >= 0");
  const long n = std::max<long>(1, std::lround(block_size * n_multiplier_));
  DriftRecord record;
  record.block_index = block_index;
  record.psi_curr = psi_curr;
  record.epsilon = hoeffding_epsilon(range_r_, alpha_, n);
  record.psi_prev = prev_deviation_;
  if (prev_deviation_) {
    const double delta_h = std::abs(*prev_deviation_ - psi_curr);
    const double bound = 2.0 * record.epsilon;
    record.drift =
        delta_h > bound || *prev_deviation_ > bound || psi_curr > bound;
  }
  prev_deviation_ = psi_curr;
  log_.push_back(record);
  return log_.back();
}

std::string drift_log_csv(const std::vector<DriftRecord>& log) {
  std::ostringstream out;
  out << "block_index,psi_prev,psi_curr,epsilon,decision\n";
  for (const auto& r : log) {
    out << r.block_index << ',';
    if (r.psi_prev) out << format_double(*r.psi_prev);
    out << ',' << format_double(r.psi_curr) << ',' << format_double(r.epsilon)
        << ',' << (r.drift ? "drift" : "stable") << '\n';
  }
  return out.str();
}

}  // namespace ecbe
