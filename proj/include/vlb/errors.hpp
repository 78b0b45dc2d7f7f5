#pragma once

#include <stdexcept>

namespace vlb {

/// A state left the admissible set (nonpositive density or pressure for
/// Euler); runs translate this into an aborted status with the step index.
class AdmissibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vlb
