#pragma once

#include <array>
#include <functional>
#include <memory>

#include "vlb/field.hpp"
#include "vlb/flux.hpp"
#include "vlb/grid.hpp"
#include "vlb/state.hpp"
#include "vlb/stencil.hpp"

namespace vlb {

/// Linear-weight equilibrium family
///   f_rest = (1 - 2 a_x - 2 a_y) u,
///   f_right/left = a_x u +- phi_x(u) / (2 lambda),
///   f_up/down   = a_y u +- phi_y(u) / (2 lambda).
/// The stencil fixes coefficient constraints: d2q4 has zero rest weight,
/// d1q3 has a_y = 0, d1q2 additionally pins a_x = 1/2.
struct EquilibriumSpec {
  Stencil stencil = Stencil::d1q2;
  double coefficient_x = 0.5;  // a_x
  double coefficient_y = 0.0;  // a_y
  double lattice_velocity = 1.0;
  std::shared_ptr<const FluxModel> model;

  double rest_weight() const { return 1.0 - 2.0 * coefficient_x - 2.0 * coefficient_y; }
  void validate() const;
};

/// Equilibrium values indexed by velocity slot; only the stencil's
/// velocities are meaningful.
struct EquilibriumValues {
  std::array<StateVec, velocity_slot_count> f;
  const StateVec& operator[](Velocity v) const { return f[static_cast<int>(v)]; }
  StateVec& operator[](Velocity v) { return f[static_cast<int>(v)]; }
};

EquilibriumValues equilibrium(const EquilibriumSpec& spec, const StateVec& u);

/// Single-velocity equilibrium (ghost fills need just the incoming one).
StateVec equilibrium_component(const EquilibriumSpec& spec, Velocity v,
                               const StateVec& u);

using SpatialFn = std::function<StateVec(double x, double y)>;

/// Cell sampling rule for initial data: midpoint by default, or the mean
/// of subcell^d uniformly placed samples for discontinuous data.
struct SamplingSpec {
  int subcell = 1;
};

StateVec sample_cell(const SpatialFn& fn, const GridSpec& grid, int jx, int jy,
                     const SamplingSpec& sampling);

/// Start at equilibrium: f_i(j) = f_i^eq(u0_j) for every velocity and cell.
DistributionField initialize_field(const EquilibriumSpec& spec, const GridSpec& grid,
                                   const SpatialFn& initial_datum,
                                   const SamplingSpec& sampling = {});

}  // namespace vlb
