#pragma once

#include <stdexcept>
#include <string>

namespace quasitrace {

/// Raised when a property that must hold for every input is observed to fail.
/// This means the implementation is wrong, not that the input was bad.
class PropertyViolation : public std::runtime_error {
 public:
  explicit PropertyViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace quasitrace
