#pragma once

namespace vlb {

/// Uniform square-cell grid together with the time discretization tied to
/// it through the lattice velocity: dt = dx / lambda, N = round(T / dt).
/// The realized final time N*dt is reported alongside the requested T,
/// which the two match only for compatible parameter choices.
struct GridSpec {
  int dimension = 1;
  double x_min = 0, x_max = 1;
  double y_min = 0, y_max = 0;
  int cells_x = 0;
  int cells_y = 1;
  double dx = 0;
  double lattice_velocity = 1;  // lambda = dx/dt
  double dt = 0;
  double final_time = 0;  // requested T
  long steps = 0;         // N

  static GridSpec make_1d(double x_min, double x_max, int cells, double lambda,
                          double final_time);
  static GridSpec make_2d(double x_min, double x_max, double y_min, double y_max,
                          int cells_x, double lambda, double final_time);

  /// Replace the step count (keeps dt); realized final time changes.
  void override_steps(long n);

  double realized_final_time() const { return static_cast<double>(steps) * dt; }
  double cell_center_x(int jx) const { return x_min + (jx + 0.5) * dx; }
  double cell_center_y(int jy) const {
    return dimension == 1 ? 0.0 : y_min + (jy + 0.5) * dx;
  }
  long cell_count() const { return static_cast<long>(cells_x) * cells_y; }
};

}  // namespace vlb
