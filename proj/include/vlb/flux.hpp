#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vlb/state.hpp"

namespace vlb {

enum class Axis { x, y };

/// (rho, rho*u, rho*v, E) with ideal-gas pressure law.
struct EulerState {
  double density;
  double momentum_x;
  double momentum_y;
  double energy;
  double gamma;
};

/// p = (gamma - 1) (E - rho (u^2 + v^2) / 2). Throws on zero density
/// (velocities cannot be recovered) and on negative density.
double euler_pressure(const EulerState& s);

/// Flux functions of one conservation system together with the extra data
/// the monotonicity checker and the Godunov flux need for scalar models:
/// the derivative and the critical-point lists of phi and phi', stored
/// explicitly per model so interval extrema are exact.
class FluxModel {
 public:
  using FluxFn = std::function<StateVec(const StateVec&)>;
  using DerivativeFn = std::function<double(double)>;

  int components() const { return components_; }
  const std::string& name() const { return name_; }
  bool is_scalar() const { return components_ == 1; }
  bool is_euler() const { return euler_; }
  double adiabatic_exponent() const { return gamma_; }

  StateVec flux(Axis axis, const StateVec& u) const;
  /// Scalar models only: d(phi_axis)/du.
  double derivative(Axis axis, double u) const;
  /// Real roots of phi' (interval extrema of phi).
  std::span<const double> flux_critical_points(Axis axis) const;
  /// Real roots of phi'' (interval extrema of |phi'|).
  std::span<const double> derivative_critical_points(Axis axis) const;

  static FluxModel transport(double velocity_x, double velocity_y = 0.0);
  static FluxModel burgers(int dimension);
  static FluxModel cubic();
  static FluxModel euler2d(double gamma);

 private:
  FluxModel() = default;

  std::string name_;
  int components_ = 1;
  bool euler_ = false;
  double gamma_ = 0;
  FluxFn flux_x_, flux_y_;
  DerivativeFn derivative_x_, derivative_y_;
  std::vector<double> flux_critical_x_, flux_critical_y_;
  std::vector<double> derivative_critical_x_, derivative_critical_y_;
};

/// Exact max of |phi'_axis| over [-m, m], evaluated at the endpoints and
/// the stored critical points of phi'. Scalar models only.
double max_abs_flux_derivative(const FluxModel& model, Axis axis, double m);

}  // namespace vlb
