#include "vlb/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vlb {

namespace {

struct Extrema {
  double min, max;
};

Extrema flux_extrema(const FluxModel& model, Axis axis, double lo, double hi) {
  auto value = [&](double u) { return model.flux(axis, StateVec::scalar(u))[0]; };
  double mn = std::min(value(lo), value(hi));
  double mx = std::max(value(lo), value(hi));
  for (double c : model.flux_critical_points(axis))
    if (c > lo && c < hi) {
      const double f = value(c);
      mn = std::min(mn, f);
      mx = std::max(mx, f);
    }
  return {mn, mx};
}

double max_abs_derivative_on(const FluxModel& model, Axis axis, double lo, double hi) {
  double best = std::max(std::abs(model.derivative(axis, lo)),
                         std::abs(model.derivative(axis, hi)));
  for (double c : model.derivative_critical_points(axis))
    if (c > lo && c < hi) best = std::max(best, std::abs(model.derivative(axis, c)));
  return best;
}

}  // namespace

double godunov_flux(const FluxModel& model, Axis axis, double ul, double ur) {
  if (!model.is_scalar()) throw std::invalid_argument("godunov_flux: scalar models only");
  if (ul <= ur) return flux_extrema(model, axis, ul, ur).min;
  return flux_extrema(model, axis, ur, ul).max;
}

void godunov_step(std::vector<double>& cells, const FluxModel& model, double west_ghost,
                  double east_ghost, double dx, double dt) {
  if (cells.empty()) throw std::invalid_argument("godunov_step: empty grid");
  double lo = std::min({west_ghost, east_ghost});
  double hi = std::max({west_ghost, east_ghost});
  for (double u : cells) {
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  if (dt * max_abs_derivative_on(model, Axis::x, lo, hi) / dx > 1.0 + 1e-12)
    throw std::runtime_error("godunov_step: CFL condition violated");

  const long n = static_cast<long>(cells.size());
  std::vector<double> flux(n + 1);
  flux[0] = godunov_flux(model, Axis::x, west_ghost, cells[0]);
  for (long j = 1; j < n; ++j)
    flux[j] = godunov_flux(model, Axis::x, cells[j - 1], cells[j]);
  flux[n] = godunov_flux(model, Axis::x, cells[n - 1], east_ghost);

  const double r = dt / dx;
  for (long j = 0; j < n; ++j) cells[j] -= r * (flux[j + 1] - flux[j]);
}

std::vector<double> godunov_run(const FluxModel& model, std::vector<double> cells,
                                double dx, double dt, long steps,
                                const GodunovBoundary& boundary) {
  for (long n = 0; n < steps; ++n) {
    const double west = boundary.west(n, cells);
    const double east = boundary.east(n, cells);
    godunov_step(cells, model, west, east, dx, dt);
  }
  return cells;
}

double exact_transport(const std::function<double(double)>& initial,
                       const std::function<double(double)>& west_datum,
                       const std::function<double(double)>& east_datum, double velocity,
                       double t, double x, double x_min, double x_max) {
  const double foot = x - velocity * t;
  if (foot >= x_min && foot <= x_max) return initial(foot);
  if (foot < x_min) {
    // Entered through the west boundary at the crossing time.
    const double entry = t - (x - x_min) / velocity;
    return west_datum(entry);
  }
  const double entry = t - (x - x_max) / velocity;
  return east_datum(entry);
}

double exact_oblique_burgers(double t, double x, double y, double theta) {
  if (theta < 0 || theta > 0.5 * std::acos(-1.0))
    throw std::invalid_argument("exact_oblique_burgers: theta outside [0, pi/2]");
  const double phase =
      std::cos(theta) * (x - 0.5 * t) + std::sin(theta) * (y - 0.5 * t);
  return phase <= 0 ? 1.0 : 0.0;
}

StateVec mach10_left_state() {
  StateVec u(4);
  u[0] = 8.0;
  u[1] = 57.16;
  u[2] = -33.0;
  u[3] = 563.52;
  return u;
}

StateVec mach10_right_state() {
  StateVec u(4);
  u[0] = 1.4;
  u[1] = 0.0;
  u[2] = 0.0;
  u[3] = 2.5;
  return u;
}

StateVec mach10_north_trace(double t, double x) {
  const double threshold = 1.0 / 6.0 + (1.0 + 20.0 * t) / std::sqrt(3.0);
  return x <= threshold ? mach10_left_state() : mach10_right_state();
}

}  // namespace vlb
