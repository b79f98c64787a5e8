#include "ecbe/baseline.hpp"

namespace ecbe {

MajorityEnsemble::MajorityEnsemble(EcbeConfig config, Schema schema,
                                   LearnerFactory factory)
    : config_(config), schema_(std::move(schema)), factory_(std::move(factory)) {
  schema_.validate();
  if (config_.k < 1) throw config_error("baseline: k must be >= 1");
}

void MajorityEnsemble::add_member(const DataBlock& block) {
  auto learner = factory_(schema_);
  learner->train_block(block);
  members_.push_back(std::move(learner));
}

Eigen::VectorXi MajorityEnsemble::classify_block(const DataBlock& block) const {
  if (members_.empty())
    throw std::logic_error("baseline classify_block: empty ensemble");
  const int n = block.size();
  const int k = size();
  Eigen::MatrixXi votes(n, k);
  for (int m = 0; m < k; ++m) votes.col(m) = members_[m]->predict_block(block);
  const Eigen::VectorXd uniform = Eigen::VectorXd::Ones(k);
  Eigen::VectorXi predictions(n);
  for (int i = 0; i < n; ++i)
    predictions[i] =
        weighted_vote(votes.row(i).transpose(), uniform, schema_.label_count());
  return predictions;
}

void MajorityEnsemble::reset() { members_.clear(); }

BlockReport MajorityEnsemble::process_block(const DataBlock& block) {
  BlockReport report;
  report.block_index = block.block_index;
  report.n = block.size();

  if (size() < config_.k) {
    report.warmup = true;
    if (!members_.empty()) {
      report.predictions = classify_block(block);
      report.accuracy =
          (report.predictions.array() == block.labels.array()).cast<double>().mean();
    }
    add_member(block);
    report.ensemble_size = size();
    return report;
  }

  report.predictions = classify_block(block);
  report.accuracy =
      (report.predictions.array() == block.labels.array()).cast<double>().mean();

  // Oldest-member replacement, then incremental training of everyone.
  members_.erase(members_.begin());
  report.deleted_capacity = 1;
  add_member(block);
  for (auto& member : members_) member->train_block(block);

  report.ensemble_size = size();
  return report;
}

}  // namespace ecbe
