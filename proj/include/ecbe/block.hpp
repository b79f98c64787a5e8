#pragma once

#include <Eigen/Core>
#include <vector>

namespace ecbe {

/// One labeled example. Numeric attributes hold their value; categorical
/// attributes hold the category index as a double.
struct Instance {
  Eigen::VectorXd features;
  int label = 0;
};

/// A winsize-length, arrival-ordered batch of instances. Row i of `features`
/// is instance i. The final block of a stream may be shorter than winsize.
struct DataBlock {
  Eigen::MatrixXd features;  // n x attribute_count
  Eigen::VectorXi labels;    // n
  long block_index = 0;

  int size() const { return static_cast<int>(labels.size()); }

  static DataBlock from_instances(const std::vector<Instance>& instances,
                                  long block_index) {
    DataBlock block;
    block.block_index = block_index;
    const int n = static_cast<int>(instances.size());
    const int d = n > 0 ? static_cast<int>(instances[0].features.size()) : 0;
    block.features.resize(n, d);
    block.labels.resize(n);
    for (int i = 0; i < n; ++i) {
      block.features.row(i) = instances[i].features;
      block.labels[i] = instances[i].label;
    }
    return block;
  }
};

}  // namespace ecbe
