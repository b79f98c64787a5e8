#pragma once

#include <memory>
#include <vector>

#include "ecbe/ensemble.hpp"

namespace ecbe {

/// Comparison anchor: an unweighted majority-vote ensemble with the same
/// capacity and block size, oldest-member replacement, and no drift logic.
class MajorityEnsemble {
public:
  MajorityEnsemble(EcbeConfig config, Schema schema,
                   LearnerFactory factory = GaussianNaiveBayes::factory());

  BlockReport process_block(const DataBlock& block);
  Eigen::VectorXi classify_block(const DataBlock& block) const;
  void reset();

  int size() const { return static_cast<int>(members_.size()); }
  const Schema& schema() const { return schema_; }

private:
  void add_member(const DataBlock& block);

  EcbeConfig config_;
  Schema schema_;
  LearnerFactory factory_;
  std::vector<std::unique_ptr<BaseLearner>> members_;  // creation order
};

}  // namespace ecbe
