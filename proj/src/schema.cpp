#include "ecbe/schema.hpp"

#include <unordered_set>

#include "ecbe/errors.hpp"

namespace ecbe {

void Schema::validate() const {
  std::unordered_set<std::string> names;
  for (const auto& attr : attributes) {
    if (!names.insert(attr.name).second)
      throw config_error("schema: duplicate attribute name '" + attr.name + "'");
    if (attr.kind == AttributeKind::categorical) {
      std::unordered_set<std::string> values;
      for (const auto& v : attr.values)
        if (!values.insert(v).second)
          throw config_error("schema: duplicate category '" + v +
                             "' in attribute '" + attr.name + "'");
    }
  }
  if (labels.size() < 2) throw config_error("schema: need at least two labels");
  std::unordered_set<std::string> seen;
  for (const auto& label : labels)
    if (!seen.insert(label).second)
      throw config_error("schema: duplicate label '" + label + "'");
}

}  // namespace ecbe
