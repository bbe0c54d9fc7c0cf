#pragma once

#include <stdexcept>
#include <string>

namespace bracketeer {

// Bad input: malformed text, out-of-range vertex, size cap exceeded, ...
// CLI maps this to exit code 1.
class input_error : public std::runtime_error {
public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Broken internal invariant: engine disagreement, half-integrality
// violation, failed reconstruction. CLI maps this to exit code 2.
class invariant_error : public std::logic_error {
public:
  explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace bracketeer
