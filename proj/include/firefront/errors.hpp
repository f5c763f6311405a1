#pragma once

#include <stdexcept>
#include <string>

namespace firefront {

// Bad inputs: malformed files, inconsistent grids, out-of-range configuration.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runtime failures of the numerics: CFL violations, non-finite fields.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace firefront
