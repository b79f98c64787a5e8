#pragma once

#include <stdexcept>
#include <string>

namespace ecbe {

/// Invalid parameter or configuration value (CLI exit code 2).
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent input data (CLI exit code 3).
class data_error : public std::runtime_error {
public:
  explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ecbe
