#pragma once

#include <Eigen/Core>
#include <memory>
#include <optional>
#include <vector>

#include "ecbe/drift.hpp"
#include "ecbe/learner.hpp"
#include "ecbe/naive_bayes.hpp"
#include "ecbe/weighting.hpp"

namespace ecbe {

struct EcbeConfig {
  int k = 5;         // ensemble capacity
  int winsize = 2000;
  double alpha = 0.05;
  double beta = 2.0;
  double range_r = 0.0;  // entropy range R; 0 selects ln(label_count)
  double hoeffding_n_multiplier = 1.0;
  double w_min = 1e-12;
  double w_max = 1e12;

  void validate() const;
  double resolved_range(int label_count) const;
  WeightPolicy weight_policy() const {
    return WeightPolicy{beta, alpha, 1.0, w_min, w_max};
  }
};

/// Per-block outcome of the ensemble. Accuracy and deviation fields are
/// absent when the block produced no predictions (the very first block).
struct BlockReport {
  long block_index = 0;
  int n = 0;
  bool warmup = false;
  Eigen::VectorXi predictions;  // empty before the first member exists
  std::optional<double> accuracy;
  std::optional<double> psi_prev;
  std::optional<double> psi_curr;
  std::optional<double> epsilon;
  std::vector<double> member_deviations;  // per member, pre-deletion order
  bool drift = false;
  int deleted_drift = 0;
  int deleted_floor = 0;
  int deleted_capacity = 0;
  std::optional<double> theta_weight;  // floor in effect after this block
  int ensemble_size = 0;               // after this block
  std::size_t ledger_size = 0;         // weights recorded since the last drift
};

/// Weighted-vote argmax: the label whose voters' weights sum highest; ties
/// resolve to the smallest label index. Throws on an empty vote.
int weighted_vote(const Eigen::Ref<const Eigen::VectorXi>& votes,
                  const Eigen::Ref<const Eigen::VectorXd>& weights,
                  int label_count);

/// Entropy-weighted block ensemble. Grows one member per block up to
/// capacity, then per block: classifies (test-then-train), updates member
/// weights from their entropy deviations, runs the drift decision, prunes by
/// the statistical weight floor, and replaces the weakest member with a
/// learner trained on the newest block.
class EcbeEnsemble {
public:
  EcbeEnsemble(EcbeConfig config, Schema schema,
               LearnerFactory factory = GaussianNaiveBayes::factory());

  BlockReport process_block(const DataBlock& block);

  /// Predictions with the current members and weights; no state change.
  Eigen::VectorXi classify_block(const DataBlock& block) const;

  /// Drops all members and detector/ledger state, keeping the configuration.
  void reset();

  int size() const { return static_cast<int>(members_.size()); }
  std::vector<double> weights() const;
  const EcbeConfig& config() const { return config_; }
  const Schema& schema() const { return schema_; }
  const DriftDetector& detector() const { return detector_; }
  const WeightLedger& ledger() const { return ledger_; }
  std::optional<double> theta_weight() const { return theta_; }

private:
  struct Member {
    std::unique_ptr<BaseLearner> learner;
    double weight = 1.0;
    long created = 0;  // creation sequence; lower is older
  };

  int min_weight_index() const;  // oldest among ties
  void add_member(const DataBlock& block);

  EcbeConfig config_;
  Schema schema_;
  LearnerFactory factory_;
  std::vector<Member> members_;
  WeightLedger ledger_;
  std::optional<double> theta_;
  DriftDetector detector_;
  long next_created_ = 0;
};

}  // namespace ecbe
