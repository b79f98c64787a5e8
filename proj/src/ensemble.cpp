#include "ecbe/ensemble.hpp"

#include <cmath>
#include <limits>

#include "ecbe/entropy.hpp"
#include "ecbe/errors.hpp"

namespace ecbe {

void EcbeConfig::validate() const {
  if (k < 1) throw config_error("config: k must be >= 1");
  if (winsize < 1) throw config_error("config: winsize must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw config_error("config: alpha must be in (0,1)");
  if (beta <= 1.0) throw config_error("config: beta must be > 1");
  if (range_r < 0.0) throw config_error("config: range R must be >= 0");
  if (hoeffding_n_multiplier <= 0.0)
    throw config_error("config: hoeffding n multiplier must be positive");
  if (!(w_min > 0.0 && w_min <= 1.0 && w_max >= 1.0))
    throw config_error("config: weight clamps must satisfy 0 < w_min <= 1 <= w_max");
}

double EcbeConfig::resolved_range(int label_count) const {
  return range_r > 0.0 ? range_r : std::log(static_cast<double>(label_count));
}

int weighted_vote(const Eigen::Ref<const Eigen::VectorXi>& votes,
                  const Eigen::Ref<const Eigen::VectorXd>& weights,
                  int label_count) {
  if (votes.size() == 0) throw std::invalid_argument("weighted_vote: no voters");
  if (votes.size() != weights.size())
    throw std::invalid_argument("weighted_vote: votes/weights length mismatch");
  Eigen::VectorXd tally = Eigen::VectorXd::Zero(label_count);
  for (Eigen::Index m = 0; m < votes.size(); ++m) tally[votes[m]] += weights[m];
  int best = 0;
  for (int y = 1; y < label_count; ++y)
    if (tally[y] > tally[best]) best = y;
  return best;
}

EcbeEnsemble::EcbeEnsemble(EcbeConfig config, Schema schema, LearnerFactory factory)
    : config_(config),
      schema_(std::move(schema)),
      factory_(std::move(factory)),
      detector_(config.alpha, config.resolved_range(schema_.label_count()),
                config.hoeffding_n_multiplier) {
  config_.validate();
  schema_.validate();
}

std::vector<double> EcbeEnsemble::weights() const {
  std::vector<double> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back(m.weight);
  return out;
}

int EcbeEnsemble::min_weight_index() const {
  int best = 0;
  for (int i = 1; i < size(); ++i)
    if (members_[i].weight < members_[best].weight) best = i;
  return best;  // first occurrence = oldest among ties
}

void EcbeEnsemble::add_member(const DataBlock& block) {
  Member member;
  member.learner = factory_(schema_);
  member.learner->train_block(block);
  member.weight = 1.0;
  member.created = next_created_++;
  members_.push_back(std::move(member));
}

Eigen::VectorXi EcbeEnsemble::classify_block(const DataBlock& block) const {
  if (members_.empty()) throw std::logic_error("classify_block: empty ensemble");
  const int n = block.size();
  const int k = size();
  Eigen::MatrixXi votes(n, k);  // column per member
  for (int m = 0; m < k; ++m)
    votes.col(m) = members_[m].learner->predict_block(block);
  Eigen::VectorXd w(k);
  for (int m = 0; m < k; ++m) w[m] = members_[m].weight;
  Eigen::VectorXi predictions(n);
  for (int i = 0; i < n; ++i)
    predictions[i] =
        weighted_vote(votes.row(i).transpose(), w, schema_.label_count());
  return predictions;
}

void EcbeEnsemble::reset() {
  members_.clear();
  ledger_.clear();
  theta_.reset();
  detector_.reset();
  next_created_ = 0;
}

BlockReport EcbeEnsemble::process_block(const DataBlock& block) {
  BlockReport report;
  report.block_index = block.block_index;
  report.n = block.size();
  const int label_count = schema_.label_count();

  if (size() < config_.k) {
    // Warm-up: classify for the record, then grow by one member.
    report.warmup = true;
    if (!members_.empty()) {
      report.predictions = classify_block(block);
      report.accuracy =
          (report.predictions.array() == block.labels.array()).cast<double>().mean();
    }
    add_member(block);
    report.theta_weight = theta_;
    report.ensemble_size = size();
    report.ledger_size = ledger_.size();
    return report;
  }

  const int k = size();
  const int n = block.size();

  // Per-member predictions feed both the weighted vote and the per-member
  // entropy deviations.
  Eigen::MatrixXi votes(n, k);
  for (int m = 0; m < k; ++m)
    votes.col(m) = members_[m].learner->predict_block(block);
  Eigen::VectorXd w(k);
  for (int m = 0; m < k; ++m) w[m] = members_[m].weight;

  Eigen::VectorXi predictions(n);
  for (int i = 0; i < n; ++i)
    predictions[i] = weighted_vote(votes.row(i).transpose(), w, label_count);
  report.predictions = predictions;
  report.accuracy =
      (predictions.array() == block.labels.array()).cast<double>().mean();

  const double psi_curr = entropy_deviation(predictions, block.labels, label_count);

  // Weight updates precede the drift decision, so the ledger already holds
  // this block's weights when a drift computes the floor.
  const WeightPolicy policy = config_.weight_policy();
  for (int m = 0; m < k; ++m) {
    const double psi_m = entropy_deviation(votes.col(m), block.labels, label_count);
    members_[m].weight = update_weight(members_[m].weight, psi_m, policy);
    ledger_.append(members_[m].weight);
    report.member_deviations.push_back(psi_m);
  }

  const DriftRecord& decision =
      detector_.observe(block.block_index, psi_curr, block.size());
  report.psi_prev = decision.psi_prev;
  report.psi_curr = decision.psi_curr;
  report.epsilon = decision.epsilon;
  report.drift = decision.drift;

  if (decision.drift) {
    members_.erase(members_.begin() + min_weight_index());
    report.deleted_drift = 1;
    if (auto floor = weight_floor(ledger_, config_.alpha)) theta_ = *floor;
    ledger_.clear();
  }

  if (theta_) {
    // Prune everything below the floor. The max-weight member is always
    // spared, which only matters when the whole ensemble would collapse.
    int keep = 0;
    for (int i = 1; i < size(); ++i)
      if (members_[i].weight > members_[keep].weight) keep = i;
    std::vector<Member> survivors;
    survivors.reserve(members_.size());
    for (int i = 0; i < size(); ++i) {
      if (members_[i].weight < *theta_ && i != keep)
        ++report.deleted_floor;
      else
        survivors.push_back(std::move(members_[i]));
    }
    members_ = std::move(survivors);
  }

  if (size() >= config_.k) {
    members_.erase(members_.begin() + min_weight_index());
    report.deleted_capacity = 1;
  }
  add_member(block);

  for (auto& member : members_) member.learner->train_block(block);

  report.theta_weight = theta_;
  report.ensemble_size = size();
  report.ledger_size = ledger_.size();
  return report;
}

}  // namespace ecbe
