#pragma once

#include <Eigen/Core>
#include <cmath>
#include <string>

#include "ecbe/block.hpp"
#include "ecbe/errors.hpp"

namespace ecbe {

/// Relative label frequencies of a label sequence over the full label
/// domain; absent labels get probability 0. Throws data_error on an empty
/// sequence or an out-of-range label.
inline Eigen::VectorXd label_histogram(
    const Eigen::Ref<const Eigen::VectorXi>& labels, int label_count) {
  const int n = static_cast<int>(labels.size());
  if (n == 0) throw data_error("label_histogram: empty block");
  Eigen::VectorXd p = Eigen::VectorXd::Zero(label_count);
  for (int i = 0; i < n; ++i) {
    const int y = labels[i];
    if (y < 0 || y >= label_count)
      throw data_error("label_histogram: label " + std::to_string(y) +
                       " outside domain of size " + std::to_string(label_count));
    p[y] += 1.0;
  }
  return p / static_cast<double>(n);
}

inline Eigen::VectorXd label_histogram(const DataBlock& block, int label_count) {
  return label_histogram(block.labels, label_count);
}

/// Shannon entropy -sum p_j ln p_j in nats, with 0 ln 0 taken as 0.
/// Requires entries in [0,1] summing to 1 within 1e-9.
inline double shannon_entropy(const Eigen::Ref<const Eigen::VectorXd>& p) {
  if ((p.array() < 0.0).any() || (p.array() > 1.0).any())
    throw std::invalid_argument("shannon_entropy: entry outside [0,1]");
  if (std::abs(p.sum() - 1.0) > 1e-9)
    throw std::invalid_argument("shannon_entropy: probabilities do not sum to 1");
  double h = 0.0;
  for (Eigen::Index j = 0; j < p.size(); ++j)
    if (p[j] > 0.0) h -= p[j] * std::log(p[j]);
  return h;
}

/// Entropy deviation of a block: absolute difference between the entropies
/// of the predicted-label and true-label histograms. Permutation-invariant
/// in each sequence; measures distribution mismatch, not accuracy.
inline double entropy_deviation(const Eigen::Ref<const Eigen::VectorXi>& predicted,
                                const Eigen::Ref<const Eigen::VectorXi>& truth,
                                int label_count) {
  if (predicted.size() != truth.size())
    throw std::invalid_argument("entropy_deviation: length mismatch");
  const double h_predicted = shannon_entropy(label_histogram(predicted, label_count));
  const double h_true = shannon_entropy(label_histogram(truth, label_count));
  return std::abs(h_predicted - h_true);
}

}  // namespace ecbe
