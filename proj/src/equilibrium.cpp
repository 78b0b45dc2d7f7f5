#include "vlb/equilibrium.hpp"

#include <cmath>
#include <stdexcept>

namespace vlb {

void EquilibriumSpec::validate() const {
  if (!model) throw std::invalid_argument("equilibrium spec: missing flux model");
  if (lattice_velocity <= 0)
    throw std::invalid_argument("equilibrium spec: lattice velocity must be positive");
  const double tol = 1e-14;
  switch (stencil) {
    case Stencil::d1q2:
      if (std::abs(coefficient_x - 0.5) > tol || std::abs(coefficient_y) > tol)
        throw std::invalid_argument("d1q2 requires a_x = 1/2 and a_y = 0");
      break;
    case Stencil::d1q3:
      if (std::abs(coefficient_y) > tol)
        throw std::invalid_argument("d1q3 requires a_y = 0");
      break;
    case Stencil::d2q4:
      if (std::abs(rest_weight()) > tol)
        throw std::invalid_argument("d2q4 requires zero rest weight (a_x + a_y = 1/2)");
      break;
    case Stencil::d2q5:
      break;
  }
}

EquilibriumValues equilibrium(const EquilibriumSpec& spec, const StateVec& u) {
  const VelocitySet& vs = VelocitySet::of(spec.stencil);
  EquilibriumValues eq;
  const double inv2l = 0.5 / spec.lattice_velocity;
  StateVec base_x = spec.coefficient_x * u;
  if (vs.contains(Velocity::rest)) eq[Velocity::rest] = spec.rest_weight() * u;
  {
    StateVec half_flux = inv2l * spec.model->flux(Axis::x, u);
    eq[Velocity::right] = base_x + half_flux;
    eq[Velocity::left] = base_x - half_flux;
  }
  if (vs.dimension() == 2) {
    StateVec base_y = spec.coefficient_y * u;
    StateVec half_flux = inv2l * spec.model->flux(Axis::y, u);
    eq[Velocity::up] = base_y + half_flux;
    eq[Velocity::down] = base_y - half_flux;
  }
  return eq;
}

StateVec equilibrium_component(const EquilibriumSpec& spec, Velocity v,
                               const StateVec& u) {
  if (!VelocitySet::of(spec.stencil).contains(v))
    throw std::invalid_argument("equilibrium_component: velocity not in stencil");
  const double inv2l = 0.5 / spec.lattice_velocity;
  switch (v) {
    case Velocity::rest:
      return spec.rest_weight() * u;
    case Velocity::right:
      return spec.coefficient_x * u + inv2l * spec.model->flux(Axis::x, u);
    case Velocity::left:
      return spec.coefficient_x * u - inv2l * spec.model->flux(Axis::x, u);
    case Velocity::up:
      return spec.coefficient_y * u + inv2l * spec.model->flux(Axis::y, u);
    case Velocity::down:
      return spec.coefficient_y * u - inv2l * spec.model->flux(Axis::y, u);
  }
  throw std::invalid_argument("unknown velocity");
}

StateVec sample_cell(const SpatialFn& fn, const GridSpec& grid, int jx, int jy,
                     const SamplingSpec& sampling) {
  const int nq = sampling.subcell;
  if (nq <= 1)
    return fn(grid.cell_center_x(jx), grid.cell_center_y(jy));
  const double x0 = grid.x_min + jx * grid.dx;
  const double h = grid.dx / nq;
  if (grid.dimension == 1) {
    StateVec acc = fn(x0 + 0.5 * h, 0.0);
    for (int i = 1; i < nq; ++i) acc += fn(x0 + (i + 0.5) * h, 0.0);
    return (1.0 / nq) * acc;
  }
  const double y0 = grid.y_min + jy * grid.dx;
  StateVec acc;
  bool first = true;
  for (int i = 0; i < nq; ++i)
    for (int k = 0; k < nq; ++k) {
      StateVec s = fn(x0 + (i + 0.5) * h, y0 + (k + 0.5) * h);
      if (first) {
        acc = s;
        first = false;
      } else {
        acc += s;
      }
    }
  return (1.0 / (nq * nq)) * acc;
}

DistributionField initialize_field(const EquilibriumSpec& spec, const GridSpec& grid,
                                   const SpatialFn& initial_datum,
                                   const SamplingSpec& sampling) {
  spec.validate();
  const int m = spec.model->components();
  DistributionField field(spec.stencil, grid.cells_x, grid.cells_y, m);
  for (int jy = 0; jy < grid.cells_y; ++jy)
    for (int jx = 0; jx < grid.cells_x; ++jx) {
      StateVec u = sample_cell(initial_datum, grid, jx, jy, sampling);
      if (u.size() != m)
        throw std::invalid_argument("initial datum has wrong component count");
      EquilibriumValues eq = equilibrium(spec, u);
      for (Velocity v : field.velocities().velocities())
        field.set_cell_state(v, jx, jy, eq[v]);
    }
  return field;
}

}  // namespace vlb
