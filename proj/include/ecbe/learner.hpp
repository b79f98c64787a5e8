#pragma once

#include <Eigen/Core>
#include <functional>
#include <memory>

#include "ecbe/block.hpp"
#include "ecbe/schema.hpp"

namespace ecbe {

/// Incrementally trainable classifier. The extension point for base
/// learners beyond the bundled naive Bayes.
class BaseLearner {
public:
  virtual ~BaseLearner() = default;

  virtual void train_block(const DataBlock& block) = 0;
  virtual int predict(const Eigen::Ref<const Eigen::VectorXd>& features) const = 0;

  Eigen::VectorXi predict_block(const DataBlock& block) const {
    Eigen::VectorXi predictions(block.size());
    for (int i = 0; i < block.size(); ++i)
      predictions[i] = predict(block.features.row(i));
    return predictions;
  }
};

using LearnerFactory = std::function<std::unique_ptr<BaseLearner>(const Schema&)>;

}  // namespace ecbe
