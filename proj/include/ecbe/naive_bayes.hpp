#pragma once

#include <Eigen/Core>
#include <vector>

#include "ecbe/learner.hpp"

#include <nlohmann/json_fwd.hpp>

namespace ecbe {

/// Incremental naive Bayes: Gaussian likelihoods with streaming moments for
/// numeric attributes, Laplace-smoothed counts for categorical ones.
/// Untrained models predict label 0.
class GaussianNaiveBayes : public BaseLearner {
public:
  explicit GaussianNaiveBayes(Schema schema);

  void train(const Eigen::Ref<const Eigen::VectorXd>& features, int label);
  void train_block(const DataBlock& block) override;

  /// Argmax over classes of log prior plus summed log likelihoods;
  /// ties resolve to the smallest label index.
  int predict(const Eigen::Ref<const Eigen::VectorXd>& features) const override;

  /// Debug dump of counts and moments. Not a stability contract.
  nlohmann::json dump() const;

  const Schema& schema() const { return schema_; }
  long total_count() const { return total_count_; }

  static LearnerFactory factory();

  // Gaussian likelihoods never see a variance below this.
  static constexpr double kVarianceFloor = 1e-9;

private:
  Schema schema_;
  std::vector<int> numeric_attrs_;
  std::vector<int> categorical_attrs_;

  Eigen::VectorXd class_count_;           // per class
  Eigen::MatrixXd mean_;                  // class x numeric attr
  Eigen::MatrixXd m2_;                    // class x numeric attr
  std::vector<Eigen::MatrixXd> cat_count_;  // per categorical attr: class x value
  long total_count_ = 0;
};

}  // namespace ecbe
