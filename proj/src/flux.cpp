#include "vlb/flux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vlb/errors.hpp"

namespace vlb {

double euler_pressure(const EulerState& s) {
  if (s.density == 0)
    throw AdmissibilityError("euler_pressure: zero density, velocity undefined");
  if (s.density < 0) throw AdmissibilityError("euler_pressure: negative density");
  const double u = s.momentum_x / s.density;
  const double v = s.momentum_y / s.density;
  return (s.gamma - 1.0) * (s.energy - 0.5 * s.density * (u * u + v * v));
}

StateVec FluxModel::flux(Axis axis, const StateVec& u) const {
  if (u.size() != components_)
    throw std::invalid_argument("flux: wrong component count");
  return axis == Axis::x ? flux_x_(u) : flux_y_(u);
}

double FluxModel::derivative(Axis axis, double u) const {
  if (!is_scalar()) throw std::logic_error("flux derivative defined for scalar models only");
  return axis == Axis::x ? derivative_x_(u) : derivative_y_(u);
}

std::span<const double> FluxModel::flux_critical_points(Axis axis) const {
  return axis == Axis::x ? std::span<const double>(flux_critical_x_)
                         : std::span<const double>(flux_critical_y_);
}

std::span<const double> FluxModel::derivative_critical_points(Axis axis) const {
  return axis == Axis::x ? std::span<const double>(derivative_critical_x_)
                         : std::span<const double>(derivative_critical_y_);
}

FluxModel FluxModel::transport(double velocity_x, double velocity_y) {
  FluxModel m;
  m.name_ = "transport";
  m.components_ = 1;
  m.flux_x_ = [velocity_x](const StateVec& u) {
    return StateVec::scalar(velocity_x * u[0]);
  };
  m.flux_y_ = [velocity_y](const StateVec& u) {
    return StateVec::scalar(velocity_y * u[0]);
  };
  m.derivative_x_ = [velocity_x](double) { return velocity_x; };
  m.derivative_y_ = [velocity_y](double) { return velocity_y; };
  return m;
}

FluxModel FluxModel::burgers(int dimension) {
  if (dimension != 1 && dimension != 2)
    throw std::invalid_argument("burgers: dimension must be 1 or 2");
  FluxModel m;
  m.name_ = dimension == 1 ? "burgers" : "burgers2d";
  m.components_ = 1;
  auto quad = [](const StateVec& u) { return StateVec::scalar(0.5 * u[0] * u[0]); };
  auto zero = [](const StateVec&) { return StateVec::scalar(0.0); };
  m.flux_x_ = quad;
  m.flux_y_ = dimension == 2 ? FluxFn(quad) : FluxFn(zero);
  m.derivative_x_ = [](double u) { return u; };
  m.derivative_y_ = dimension == 2 ? DerivativeFn([](double u) { return u; })
                                   : DerivativeFn([](double) { return 0.0; });
  m.flux_critical_x_ = {0.0};  // phi' = u
  if (dimension == 2) m.flux_critical_y_ = {0.0};
  // phi'' = 1: |phi'| has no interior extrema.
  return m;
}

FluxModel FluxModel::cubic() {
  FluxModel m;
  m.name_ = "cubic";
  m.components_ = 1;
  m.flux_x_ = [](const StateVec& u) {
    return StateVec::scalar(u[0] * u[0] * u[0] / 3.0);
  };
  m.flux_y_ = [](const StateVec&) { return StateVec::scalar(0.0); };
  m.derivative_x_ = [](double u) { return u * u; };
  m.derivative_y_ = [](double) { return 0.0; };
  m.flux_critical_x_ = {0.0};        // phi' = u^2
  m.derivative_critical_x_ = {0.0};  // phi'' = 2u
  return m;
}

FluxModel FluxModel::euler2d(double gamma) {
  if (gamma <= 1) throw std::invalid_argument("euler2d: gamma must exceed 1");
  FluxModel m;
  m.name_ = "euler2d";
  m.components_ = 4;
  m.euler_ = true;
  m.gamma_ = gamma;
  auto check = [](const StateVec& u) {
    if (!(u[0] > 0))
      throw AdmissibilityError("euler flux: nonpositive density");
  };
  m.flux_x_ = [gamma, check](const StateVec& w) {
    check(w);
    const double rho = w[0], qx = w[1], qy = w[2], e = w[3];
    const double u = qx / rho, v = qy / rho;
    const double p = (gamma - 1.0) * (e - 0.5 * rho * (u * u + v * v));
    StateVec f(4);
    f[0] = qx;
    f[1] = qx * u + p;
    f[2] = qy * u;
    f[3] = (e + p) * u;
    return f;
  };
  m.flux_y_ = [gamma, check](const StateVec& w) {
    check(w);
    const double rho = w[0], qx = w[1], qy = w[2], e = w[3];
    const double u = qx / rho, v = qy / rho;
    const double p = (gamma - 1.0) * (e - 0.5 * rho * (u * u + v * v));
    StateVec f(4);
    f[0] = qy;
    f[1] = qx * v;
    f[2] = qy * v + p;
    f[3] = (e + p) * v;
    return f;
  };
  return m;
}

double max_abs_flux_derivative(const FluxModel& model, Axis axis, double m) {
  if (!model.is_scalar())
    throw std::logic_error("max_abs_flux_derivative: scalar models only");
  if (m < 0) throw std::invalid_argument("max_abs_flux_derivative: negative bound");
  double best = std::max(std::abs(model.derivative(axis, -m)),
                         std::abs(model.derivative(axis, m)));
  for (double c : model.derivative_critical_points(axis))
    if (c >= -m && c <= m) best = std::max(best, std::abs(model.derivative(axis, c)));
  return best;
}

}  // namespace vlb
