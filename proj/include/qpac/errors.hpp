#pragma once

#include <stdexcept>
#include <string>

namespace qpac {

// Generators that are not pairwise commuting or not independent.
class StructureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative routine exhausted its iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value that can only come from a non-physical state or a caller bug.
class PhysicalityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed or out-of-range experiment configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qpac
