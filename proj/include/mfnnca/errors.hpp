#pragma once

#include <stdexcept>
#include <string>

namespace mfnnca {

// Invalid configuration (bad dimensions, thresholds, unresolvable paths).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid runtime input (dimension mismatch, empty pattern set).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed data or model file.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mfnnca
