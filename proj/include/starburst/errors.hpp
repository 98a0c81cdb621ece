#pragma once

#include <stdexcept>
#include <string>

namespace starburst {

/// Input rejected by a constructor or precondition check.
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Request outside what the library supports (radial order, n of the closed forms).
class CapabilityError : public std::runtime_error {
public:
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace starburst
