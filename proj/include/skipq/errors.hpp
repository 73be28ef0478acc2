#pragma once

#include <stdexcept>
#include <string>

namespace skipq {

// Bad run configuration or malformed input documents (maps, configs,
// Q-table files). CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failures (unwritable output directory, short writes).
// CLI maps this to exit code 3.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace skipq
