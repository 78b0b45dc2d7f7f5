#pragma once

#include <string>
#include <vector>

#include "vlb/flux.hpp"
#include "vlb/stencil.hpp"

namespace vlb {

/// l-infinity magnitude bound over initial and boundary data; the interval
/// [-m, m] on which the flux derivative is maximized.
struct DataBound {
  double value = 0;
};

struct MonotonicityInequality {
  std::string label;
  double lhs = 0, rhs = 0;
  /// Inequalities are normalized to lhs <= rhs.
  double slack() const { return rhs - lhs; }
  bool holds(double tol = 1e-12) const { return slack() >= -tol; }
};

enum class MonotonicityVerdict { monotone, not_monotone, uncertified };

const char* to_string(MonotonicityVerdict v);

struct MonotonicityReport {
  std::vector<MonotonicityInequality> inequalities;
  MonotonicityVerdict verdict = MonotonicityVerdict::uncertified;
  bool trivial_courant = false;
  std::string note;
  std::string to_text() const;
};

/// Evaluate the stencil-specific inequality set under which the relaxation
/// is order preserving on the invariant box of data magnitude m. Vectorial
/// models and the all-zero-Courant case are reported as uncertified.
MonotonicityReport check_monotone(Stencil stencil, double omega_s, double omega_a,
                                  double a_x, double a_y, double lambda,
                                  const FluxModel& model, double m);

struct MaxOmegaResult {
  double omega = 0;
  bool admissible = false;  // false: no BGK rate satisfies the conditions
};

/// Largest BGK rate in (0, 2] passing check_monotone at omega_s = omega_a,
/// located by bisection to 1e-12. The inequalities are constant in omega on
/// (0, 1] and have non-increasing slack beyond, so a threshold exists.
MaxOmegaResult max_bgk_omega(Stencil stencil, double a_x, double a_y, double lambda,
                             const FluxModel& model, double m);

}  // namespace vlb
