#include "vlb/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace vlb {

namespace {

void set_time_discretization(GridSpec& g, double lambda, double final_time) {
  if (lambda <= 0) throw std::invalid_argument("lattice velocity must be positive");
  if (final_time < 0) throw std::invalid_argument("final time must be nonnegative");
  g.lattice_velocity = lambda;
  g.dt = g.dx / lambda;
  g.final_time = final_time;
  g.steps = std::llround(final_time / g.dt);
}

}  // namespace

GridSpec GridSpec::make_1d(double x_min, double x_max, int cells, double lambda,
                           double final_time) {
  if (cells <= 0) throw std::invalid_argument("cell count must be positive");
  if (x_max <= x_min) throw std::invalid_argument("empty x extent");
  GridSpec g;
  g.dimension = 1;
  g.x_min = x_min;
  g.x_max = x_max;
  g.cells_x = cells;
  g.cells_y = 1;
  g.dx = (x_max - x_min) / cells;
  set_time_discretization(g, lambda, final_time);
  return g;
}

GridSpec GridSpec::make_2d(double x_min, double x_max, double y_min, double y_max,
                           int cells_x, double lambda, double final_time) {
  if (cells_x <= 0) throw std::invalid_argument("cell count must be positive");
  if (x_max <= x_min || y_max <= y_min) throw std::invalid_argument("empty extent");
  GridSpec g;
  g.dimension = 2;
  g.x_min = x_min;
  g.x_max = x_max;
  g.y_min = y_min;
  g.y_max = y_max;
  g.cells_x = cells_x;
  g.dx = (x_max - x_min) / cells_x;
  g.cells_y = static_cast<int>(std::llround((y_max - y_min) / g.dx));
  // Cells are square, so the y extent must be an exact multiple of dx.
  double extent = y_max - y_min;
  if (g.cells_y <= 0 || std::abs(g.cells_y * g.dx - extent) > 1e-9 * std::max(1.0, extent))
    throw std::invalid_argument("y extent is not an integer number of square cells");
  set_time_discretization(g, lambda, final_time);
  return g;
}

void GridSpec::override_steps(long n) {
  if (n < 0) throw std::invalid_argument("step count must be nonnegative");
  steps = n;
}

}  // namespace vlb
