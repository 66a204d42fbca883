#pragma once

#include <stdexcept>
#include <string>

namespace xpair {

// Bad user-supplied parameters (dimension mismatches, invalid ranges).
class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Iterative procedure failed to reach its tolerance.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace xpair
