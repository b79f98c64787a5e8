#pragma once

#include <string>
#include <vector>

namespace ecbe {

enum class AttributeKind { numeric, categorical };

struct Attribute {
  std::string name;
  AttributeKind kind = AttributeKind::numeric;
  std::vector<std::string> values;  // category names, empty for numeric

  bool operator==(const Attribute&) const = default;
};

/// Fixed description of a stream: attribute layout and the closed label
/// domain. Immutable once built; label and category indices refer to the
/// positions in these lists.
struct Schema {
  std::vector<Attribute> attributes;
  std::vector<std::string> labels;

  int attribute_count() const { return static_cast<int>(attributes.size()); }
  int label_count() const { return static_cast<int>(labels.size()); }

  bool is_numeric(int attr) const {
    return attributes[attr].kind == AttributeKind::numeric;
  }
  int category_count(int attr) const {
    return static_cast<int>(attributes[attr].values.size());
  }

  /// Index of a label name, or -1 when absent.
  int label_index(const std::string& name) const {
    for (int i = 0; i < label_count(); ++i)
      if (labels[i] == name) return i;
    return -1;
  }

  /// Throws config_error when an invariant is broken: duplicate attribute
  /// names, fewer than two labels, duplicate labels or category values.
  void validate() const;

  bool operator==(const Schema&) const = default;
};

}  // namespace ecbe
