#pragma once

#include <functional>
#include <vector>

#include "vlb/flux.hpp"
#include "vlb/state.hpp"

namespace vlb {

/// Scalar Godunov numerical flux: min of phi over [ul, ur] when ul <= ur,
/// max over [ur, ul] otherwise; interval extrema from the endpoints and
/// the stored critical points.
double godunov_flux(const FluxModel& model, Axis axis, double ul, double ur);

/// One first-order finite-volume step with ghost values resolved by the
/// caller (inflow sides use the same datum averaging as the kinetic
/// scheme, outflow sides first-order extrapolation). Throws when the CFL
/// bound dt max|phi'| / dx > 1 over the data range.
void godunov_step(std::vector<double>& cells, const FluxModel& model, double west_ghost,
                  double east_ghost, double dx, double dt);

/// Ghost-value providers per step; they see the current cells so that
/// extrapolation outflows can read the boundary cell.
struct GodunovBoundary {
  std::function<double(long step, const std::vector<double>&)> west;
  std::function<double(long step, const std::vector<double>&)> east;
};

std::vector<double> godunov_run(const FluxModel& model, std::vector<double> cells,
                                double dx, double dt, long steps,
                                const GodunovBoundary& boundary);

/// Exact solution of the linear transport initial-boundary value problem by
/// characteristic tracing on [x_min, x_max]: the initial datum where the
/// characteristic foot stays inside, the boundary datum where it entered.
double exact_transport(const std::function<double(double)>& initial,
                       const std::function<double(double)>& west_datum,
                       const std::function<double(double)>& east_datum, double velocity,
                       double t, double x, double x_min = 0.0, double x_max = 1.0);

/// Oblique shock profile of the 2D Burgers problem: 1 on the closed set
/// cos(theta)(x - t/2) + sin(theta)(y - t/2) <= 0, else 0.
double exact_oblique_burgers(double t, double x, double y, double theta);

/// Pre- and post-shock states of the Mach 10 reflection problem.
StateVec mach10_left_state();
StateVec mach10_right_state();

/// Trace of the undisturbed oblique shock along the top of the domain:
/// left state for x <= 1/6 + (1 + 20 t)/sqrt(3), right state beyond.
StateVec mach10_north_trace(double t, double x);

}  // namespace vlb
