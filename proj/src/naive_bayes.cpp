#include "ecbe/naive_bayes.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <nlohmann/json.hpp>

#include "ecbe/errors.hpp"

namespace ecbe {

GaussianNaiveBayes::GaussianNaiveBayes(Schema schema) : schema_(std::move(schema)) {
  schema_.validate();
  const int labels = schema_.label_count();
  for (int j = 0; j < schema_.attribute_count(); ++j) {
    if (schema_.is_numeric(j))
      numeric_attrs_.push_back(j);
    else
      categorical_attrs_.push_back(j);
  }
  class_count_ = Eigen::VectorXd::Zero(labels);
  mean_ = Eigen::MatrixXd::Zero(labels, static_cast<int>(numeric_attrs_.size()));
  m2_ = Eigen::MatrixXd::Zero(labels, static_cast<int>(numeric_attrs_.size()));
  cat_count_.reserve(categorical_attrs_.size());
  for (int j : categorical_attrs_)
    cat_count_.emplace_back(Eigen::MatrixXd::Zero(labels, schema_.category_count(j)));
}

void GaussianNaiveBayes::train(const Eigen::Ref<const Eigen::VectorXd>& features,
                               int label) {
  if (label < 0 || label >= schema_.label_count())
    throw data_error("GaussianNaiveBayes: label " + std::to_string(label) +
                     " outside schema");
  class_count_[label] += 1.0;
  total_count_ += 1;
  const double count = class_count_[label];
  for (std::size_t k = 0; k < numeric_attrs_.size(); ++k) {
    const double x = features[numeric_attrs_[k]];
    const double delta = x - mean_(label, k);
    mean_(label, k) += delta / count;
    m2_(label, k) += delta * (x - mean_(label, k));
  }
  for (std::size_t k = 0; k < categorical_attrs_.size(); ++k) {
    const int value = static_cast<int>(features[categorical_attrs_[k]]);
    cat_count_[k](label, value) += 1.0;
  }
}

void GaussianNaiveBayes::train_block(const DataBlock& block) {
  for (int i = 0; i < block.size(); ++i)
    train(block.features.row(i), block.labels[i]);
}

int GaussianNaiveBayes::predict(
    const Eigen::Ref<const Eigen::VectorXd>& features) const {
  if (total_count_ == 0) return 0;  // cold start
  const int labels = schema_.label_count();
  int best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  const double log_total = std::log(static_cast<double>(total_count_));
  for (int y = 0; y < labels; ++y) {
    const double count = class_count_[y];
    if (count == 0.0) continue;
    double score = std::log(count) - log_total;
    for (std::size_t k = 0; k < numeric_attrs_.size(); ++k) {
      const double var = std::max(m2_(y, k) / count, kVarianceFloor);
      const double diff = features[numeric_attrs_[k]] - mean_(y, k);
      score += -0.5 * std::log(2.0 * M_PI * var) - diff * diff / (2.0 * var);
    }
    for (std::size_t k = 0; k < categorical_attrs_.size(); ++k) {
      const int value = static_cast<int>(features[categorical_attrs_[k]]);
      const auto& counts = cat_count_[k];
      score += std::log((counts(y, value) + 1.0) /
                        (count + static_cast<double>(counts.cols())));
    }
    if (score > best_score) {
      best_score = score;
      best = y;
    }
  }
  return best;
}

nlohmann::json GaussianNaiveBayes::dump() const {
  nlohmann::json j;
  j["total_count"] = total_count_;
  j["class_count"] = std::vector<double>(class_count_.begin(), class_count_.end());
  nlohmann::json numeric = nlohmann::json::array();
  for (std::size_t k = 0; k < numeric_attrs_.size(); ++k) {
    nlohmann::json attr;
    attr["attribute"] = schema_.attributes[numeric_attrs_[k]].name;
    attr["mean"] = std::vector<double>(mean_.col(k).begin(), mean_.col(k).end());
    attr["m2"] = std::vector<double>(m2_.col(k).begin(), m2_.col(k).end());
    numeric.push_back(attr);
  }
  j["numeric"] = numeric;
  nlohmann::json categorical = nlohmann::json::array();
  for (std::size_t k = 0; k < categorical_attrs_.size(); ++k) {
    nlohmann::json attr;
    attr["attribute"] = schema_.attributes[categorical_attrs_[k]].name;
    std::vector<std::vector<double>> counts;
    for (int y = 0; y < cat_count_[k].rows(); ++y)
      counts.emplace_back(cat_count_[k].row(y).begin(), cat_count_[k].row(y).end());
    attr["counts"] = counts;
    categorical.push_back(attr);
  }
  j["categorical"] = categorical;
  return j;
}

LearnerFactory GaussianNaiveBayes::factory() {
  return [](const Schema& schema) {
    return std::make_unique<GaussianNaiveBayes>(schema);
  };
}

}  // namespace ecbe
