#pragma once

#include <stdexcept>
#include <string>

namespace hetcache {

/// Invalid user-supplied parameters (config file, CLI, or API preconditions).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A series, quadrature, or truncation failed to converge within its budget.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hetcache
