#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "vlb/equilibrium.hpp"
#include "vlb/field.hpp"

namespace vlb {

/// Two-relaxation-times rates; both in (0, 2].
struct RelaxationParams {
  double omega_symmetric = 1.0;
  double omega_antisymmetric = 1.0;
  void validate() const;
};

/// One-cell TRT relaxation on the velocity slots of the spec's stencil:
///   f_rest* = (1 - w_s) f_rest + w_s f_rest^eq(u),
///   f_i*    = (1 - (w_s+w_a)/2) f_i + (w_s+w_a)/2 f_i^eq(u)
///             + (w_s-w_a)/2 (f_ib^eq(u) - f_ib)     for opposite pairs (i, ib),
/// with u the pre-collision moment sum.
void collide_cell(std::array<StateVec, velocity_slot_count>& f,
                  const EquilibriumSpec& spec, const RelaxationParams& params);

/// TRT relaxation, cell by cell, in place.
void relax_trt(DistributionField& field, const EquilibriumSpec& spec,
               const RelaxationParams& params);

/// BGK is TRT with equal rates.
void relax_bgk(DistributionField& field, const EquilibriumSpec& spec, double omega);

struct GuardReport {
  std::vector<std::uint8_t> fallback;  // per cell, row-major
  long fallback_count = 0;
};

/// BGK collision with a per-cell admissibility guard for Euler: collide
/// provisionally at rate omega, look one step ahead (streamed moment from
/// the provisional neighbors, boundary cells reuse their own values for the
/// missing inflow contribution), mark every cell whose lookahead state has
/// rho <= 0 or p <= 0, and re-collide the marked cells at omega = 1. If the
/// re-checked field is still inadmissible somewhere, abort with the cell
/// coordinates.
GuardReport relax_guarded(const DistributionField& field, const EquilibriumSpec& spec,
                          double omega, DistributionField& out);

}  // namespace vlb
