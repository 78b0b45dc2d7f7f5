#include "vlb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vlb {

double grid_lp_norm(const MomentField& moments, double p, double dx, int dimension) {
  const int m = moments.components();
  const long cells = static_cast<long>(moments.cells_x()) * moments.cells_y();
  std::span<const double> data = moments.data();
  if (std::isinf(p)) {
    double best = 0;
    for (long j = 0; j < cells; ++j) {
      double a = 0;
      for (int c = 0; c < m; ++c) a += std::abs(data[j * m + c]);
      best = std::max(best, a);
    }
    return best;
  }
  if (p != 1.0 && p != 2.0) throw std::invalid_argument("grid_lp_norm: p must be 1, 2 or inf");
  double acc = 0;
  for (long j = 0; j < cells; ++j) {
    double a = 0;
    for (int c = 0; c < m; ++c) a += std::abs(data[j * m + c]);
    acc += p == 1.0 ? a : a * a;
  }
  const double weight = dimension == 2 ? dx * dx : dx;
  return p == 1.0 ? weight * acc : std::sqrt(weight * acc);
}

namespace {

double tv_of_component_array(std::span<const double> data, int nx, int ny, int m,
                             double dx, int dimension) {
  double acc = 0;
  auto at = [&](int jx, int jy, int c) {
    return data[(static_cast<std::size_t>(jy) * nx + jx) * m + c];
  };
  for (int jy = 0; jy < ny; ++jy)
    for (int jx = 0; jx + 1 < nx; ++jx)
      for (int c = 0; c < m; ++c) acc += std::abs(at(jx + 1, jy, c) - at(jx, jy, c));
  if (dimension == 2) {
    for (int jy = 0; jy + 1 < ny; ++jy)
      for (int jx = 0; jx < nx; ++jx)
        for (int c = 0; c < m; ++c) acc += std::abs(at(jx, jy + 1, c) - at(jx, jy, c));
    acc *= dx;
  }
  return acc;
}

}  // namespace

double discrete_tv(const MomentField& moments, double dx, int dimension) {
  return tv_of_component_array(moments.data(), moments.cells_x(), moments.cells_y(),
                               moments.components(), dx, dimension);
}

double discrete_tv(const DistributionField& field, double dx, int dimension) {
  double acc = 0;
  for (Velocity v : field.velocities().velocities())
    acc += tv_of_component_array(field.data(v), field.cells_x(), field.cells_y(),
                                 field.components(), dx, dimension);
  return acc;
}

double equilibrium_distance(const DistributionField& field, const EquilibriumSpec& spec,
                            double dx, int dimension) {
  MomentField moments = compute_moments(field);
  double acc = 0;
  for (int jy = 0; jy < field.cells_y(); ++jy)
    for (int jx = 0; jx < field.cells_x(); ++jx) {
      EquilibriumValues eq = equilibrium(spec, moments.state(jx, jy));
      for (Velocity v : field.velocities().velocities())
        acc += (field.cell_state(v, jx, jy) - eq[v]).abs_sum();
    }
  return (dimension == 2 ? dx * dx : dx) * acc;
}

double field_l1_distance(const DistributionField& a, const DistributionField& b,
                         double dx, int dimension) {
  if (!a.same_shape(b)) throw std::invalid_argument("field_l1_distance: shape mismatch");
  double acc = 0;
  for (Velocity v : a.velocities().velocities()) {
    std::span<const double> pa = a.data(v);
    std::span<const double> pb = b.data(v);
    for (std::size_t i = 0; i < pa.size(); ++i) acc += std::abs(pa[i] - pb[i]);
  }
  return (dimension == 2 ? dx * dx : dx) * acc;
}

double chebyshev_second_kind(int n, double x) {
  if (n < 0) return 0;
  double prev = 1.0;  // U_0
  if (n == 0) return prev;
  double cur = 2.0 * x;  // U_1
  for (int k = 2; k <= n; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double boundary_layer_chebyshev(int cells, double courant, double trace, long step,
                                int j) {
  if (!(courant > -1 && courant < 0))
    throw std::invalid_argument("boundary_layer_chebyshev: need -1 < C < 0");
  if (j < 0 || j >= cells) throw std::invalid_argument("cell index out of range");
  const double C = courant;
  const double pre = 0.5 * trace * (1.0 + C);
  double acc = (j == 0) ? 1.0 : 0.0;
  const double ratio_pow = std::pow((1.0 + C) / (1.0 - C), 0.5 * j);
  const double root = std::sqrt(1.0 - C * C);
  for (int h = 1; h <= cells / 2; ++h) {
    // lambda_{J-h+1} = 2 cos(h pi / (J+1)), the positive half of the spectrum.
    const double lam = 2.0 * std::cos(h * std::numbers::pi / (cells + 1.0));
    const double weight = (4.0 - lam * lam) * chebyshev_second_kind(j, 0.5 * lam) /
                          (2.0 * cells + 2.0);
    const double base = 0.5 * root * lam;
    double power = base;
    double psum = 0;
    for (long p = 1; p <= step - 1; ++p) {
      if ((j + p) % 2 == 0) psum += 2.0 * power;  // the (1 + (-1)^{j+p}) factor
      power *= base;
    }
    acc += ratio_pow * weight * psum;
  }
  return pre * acc;
}

double boundary_layer_longtime(double omega, double courant, double trace, int j) {
  if (!(omega > 0 && omega < 2))
    throw std::invalid_argument("boundary_layer_longtime: need omega in (0, 2)");
  if (!(courant > -1 && courant < 0))
    throw std::invalid_argument("boundary_layer_longtime: need -1 < C < 0");
  const double C = courant;
  const double num = 2.0 - omega + omega * C;
  const double den = 2.0 - omega - omega * C;
  if (num == 0.0)  // omega == 2/(1-C): the layer sits on the first cell only
    return j == 0 ? 0.5 * trace * (1.0 + C) : 0.0;
  const double amplitude = trace * (2.0 - omega) * (1.0 + C) / (2.0 - omega * (1.0 + C));
  return amplitude * std::pow(num / den, j);
}

double stable_root_kappa1(double omega, double courant) {
  if (!(omega > 0 && omega < 2))
    throw std::invalid_argument("stable_root_kappa1: need omega in (0, 2)");
  if (!(courant > -1 && courant < 0))
    throw std::invalid_argument("stable_root_kappa1: need -1 < C < 0");
  const double den = 2.0 - omega - omega * courant;
  if (den == 0.0) throw std::domain_error("stable_root_kappa1: degenerate coefficient");
  return (2.0 - omega + omega * courant) / den;
}

RootPair characteristic_roots_at_one(double omega, double courant) {
  const double a = 0.5 * (2.0 - omega - omega * courant);
  const double b = -(2.0 - omega);
  const double c = 0.5 * (2.0 - omega + omega * courant);
  if (a == 0.0) throw std::domain_error("characteristic_roots_at_one: degenerate quadratic");
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0) throw std::domain_error("characteristic_roots_at_one: complex roots");
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  const double r1 = q / a;
  const double r2 = c / q;
  RootPair roots;
  if (std::abs(r1) <= std::abs(r2)) {
    roots.stable = r1;
    roots.unstable = r2;
  } else {
    roots.stable = r2;
    roots.unstable = r1;
  }
  return roots;
}

std::vector<double> tridiagonal_oracle(int cells, double courant, double trace,
                                       long steps) {
  if (!(courant > -1 && courant < 0))
    throw std::invalid_argument("tridiagonal_oracle: need -1 < C < 0");
  const double lo = 0.5 * (1.0 + courant);  // subdiagonal
  const double hi = 0.5 * (1.0 - courant);  // supradiagonal
  const double source = lo * trace;
  std::vector<double> u(cells, 0.0), next(cells, 0.0);
  for (long n = 0; n < steps; ++n) {
    next[0] = (cells > 1 ? hi * u[1] : 0.0) + source;
    for (int j = 1; j + 1 < cells; ++j) next[j] = lo * u[j - 1] + hi * u[j + 1];
    if (cells > 1) next[cells - 1] = lo * u[cells - 2];
    u.swap(next);
  }
  return u;
}

double convergence_rate(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2)
    throw std::invalid_argument("convergence_rate: need at least two points");
  double sx = 0, sy = 0;
  for (const auto& [dx, err] : points) {
    if (!(dx > 0) || !(err > 0))
      throw std::invalid_argument("convergence_rate: nonpositive dx or error");
    sx += std::log(dx);
    sy += std::log(err);
  }
  const double mx = sx / points.size(), my = sy / points.size();
  double sxx = 0, sxy = 0;
  for (const auto& [dx, err] : points) {
    const double ex = std::log(dx) - mx;
    sxx += ex * ex;
    sxy += ex * (std::log(err) - my);
  }
  if (sxx == 0) throw std::invalid_argument("convergence_rate: identical resolutions");
  return sxy / sxx;
}

namespace {

// Interior cell adjacent to strip cell k of a side (and its inward neighbor).
void side_adjacent(Side side, int k, int nx, int ny, int& x0, int& y0) {
  switch (side) {
    case Side::west:
      x0 = 0;
      y0 = k;
      return;
    case Side::east:
      x0 = nx - 1;
      y0 = k;
      return;
    case Side::south:
      x0 = k;
      y0 = 0;
      return;
    case Side::north:
      x0 = k;
      y0 = ny - 1;
      return;
  }
}

double trace_discrepancy_sum(const AppliedTraces& a, const AppliedTraces& b) {
  double acc = 0;
  for (int s = 0; s < 4; ++s) {
    if (a[s].size() != b[s].size())
      throw std::invalid_argument("trace histories have mismatched shapes");
    for (std::size_t k = 0; k < a[s].size(); ++k) acc += (a[s][k] - b[s][k]).abs_sum();
  }
  return acc;
}

}  // namespace

ContractionReport check_l1_contraction(std::span<const DistributionField> run_a,
                                       std::span<const DistributionField> run_b,
                                       const TraceHistory& traces_a,
                                       const TraceHistory& traces_b, double dx,
                                       int dimension, double tol) {
  if (run_a.size() != run_b.size() || run_a.empty())
    throw std::invalid_argument("check_l1_contraction: mismatched run lengths");
  if (traces_a.size() != traces_b.size())
    throw std::invalid_argument("check_l1_contraction: mismatched trace histories");
  const double weight = dimension == 2 ? dx * dx : dx;

  ContractionReport report;
  double rhs = field_l1_distance(run_a[0], run_b[0], dx, dimension);
  for (std::size_t n = 0; n < traces_a.size(); ++n)
    rhs += weight * trace_discrepancy_sum(traces_a[n], traces_b[n]);
  report.rhs = rhs;

  for (std::size_t n = 0; n < run_a.size(); ++n) {
    const double lhs = field_l1_distance(run_a[n], run_b[n], dx, dimension);
    const double excess = lhs - (rhs + tol);
    if (excess > 0) {
      report.holds = false;
      if (report.first_violation < 0) report.first_violation = static_cast<long>(n);
    }
    report.max_excess = std::max(report.max_excess, lhs - rhs);
  }
  return report;
}

EquicontinuityReport check_equicontinuity(std::span<const DistributionField> fields,
                                          const TraceHistory& traces, double dx,
                                          int dimension) {
  if (fields.size() < 2)
    throw std::invalid_argument("check_equicontinuity: need at least two snapshots");
  const DistributionField& f0 = fields[0];
  const int nx = f0.cells_x(), ny = f0.cells_y();
  MomentField u0 = compute_moments(f0);

  // C_EC = 2 TV(u0) + boundary discrepancy at n = 0 + time variation of the
  // applied traces, the side sums carrying the strip weight dx^{d-1}.
  double constant = 2.0 * discrete_tv(u0, dx, dimension);
  const double strip_weight = dimension == 2 ? dx : 1.0;
  if (!traces.empty()) {
    for (int s = 0; s < 4; ++s) {
      const auto& first = traces[0][s];
      for (std::size_t k = 0; k < first.size(); ++k) {
        int x0, y0;
        side_adjacent(static_cast<Side>(s), static_cast<int>(k), nx, ny, x0, y0);
        constant += strip_weight * (u0.state(x0, y0) - first[k]).abs_sum();
      }
    }
    for (std::size_t n = 1; n < traces.size(); ++n)
      constant += strip_weight * trace_discrepancy_sum(traces[n], traces[n - 1]);
  }

  EquicontinuityReport report;
  report.constant = constant;
  for (std::size_t n = 0; n + 1 < fields.size(); ++n) {
    const double inc = field_l1_distance(fields[n + 1], fields[n], dx, dimension) / dx;
    report.max_increment_over_dx = std::max(report.max_increment_over_dx, inc);
  }
  report.holds = report.max_increment_over_dx <= constant + 1e-12;
  return report;
}

double tv_estimate_constant_1d(const MomentField& initial_moments,
                               const TraceHistory& traces, double m, double lambda,
                               double final_time) {
  // 1D analogue of the data-assembled bound: the band-integral terms of the
  // 2D estimate degenerate to multiples of the data magnitude m.
  double boundary = 0;
  for (int s = 0; s < 4; ++s) {
    if (traces.empty() || traces[0][s].empty()) continue;
    double tv_time = 0;
    for (std::size_t n = 1; n < traces.size(); ++n)
      tv_time += (traces[n][s][0] - traces[n - 1][s][0]).abs_sum();
    boundary += tv_time + m;
  }
  return 2.0 * (discrete_tv(initial_moments, 0.0, 1) + 4.0 * m +
                2.0 * lambda * final_time * m + boundary);
}

long entropy_violation_count(const DistributionField& before,
                             const DistributionField& after,
                             const EquilibriumSpec& spec, std::span<const double> kappas,
                             double tol) {
  if (!before.same_shape(after))
    throw std::invalid_argument("entropy_violation_count: shape mismatch");
  long violations = 0;
  for (double kappa : kappas) {
    EquilibriumValues eq = equilibrium(spec, StateVec::scalar(kappa));
    for (int jy = 0; jy < before.cells_y(); ++jy)
      for (int jx = 0; jx < before.cells_x(); ++jx) {
        double s_before = 0, s_after = 0;
        for (Velocity v : before.velocities().velocities()) {
          s_before += (before.cell_state(v, jx, jy) - eq[v]).abs_sum();
          s_after += (after.cell_state(v, jx, jy) - eq[v]).abs_sum();
        }
        if (s_after > s_before + tol) ++violations;
      }
  }
  return violations;
}

}  // namespace vlb
