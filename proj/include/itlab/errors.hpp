#pragma once

#include <stdexcept>
#include <string>

namespace itlab {

// Raised when an exact computation would exceed the enumeration budget.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a structural invariant that should hold by construction fails.
class InvariantViolation : public std::runtime_error {
 public:
  explicit InvariantViolation(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised for malformed experiment configurations.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace itlab
