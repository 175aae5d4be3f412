#pragma once

#include <stdexcept>
#include <string>

namespace alluvial {

// Malformed or inconsistent input data (bad weights, empty tables, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or arguments supplied by the caller.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace alluvial
