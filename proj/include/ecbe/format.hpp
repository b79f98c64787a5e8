#pragma once

#include <charconv>
#include <string>

namespace ecbe {

/// Shortest round-trip decimal representation of a double. Used by every
/// CSV/JSON writer so identical runs serialize to identical bytes.
inline std::string format_double(double value) {
  char buffer[48];
  auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

}  // namespace ecbe
