#pragma once

#include <array>
#include <functional>
#include <variant>
#include <vector>

#include "vlb/equilibrium.hpp"
#include "vlb/field.hpp"
#include "vlb/grid.hpp"

namespace vlb {

enum class Side : int { west = 0, east = 1, south = 2, north = 3 };

const char* to_string(Side s);

/// Velocity that enters the domain through a side (whose ghost strip the
/// side owns): west -> right, east -> left, south -> up, north -> down.
Velocity inflow_velocity(Side s);

/// Macroscopic datum on a side as a function of time and the tangential
/// boundary coordinate (ignored in 1D).
using BoundaryDatum = std::function<StateVec(double t, double s)>;

struct DirichletBc {
  BoundaryDatum datum;
  int quadrature = 1;  // 1 = time-space midpoint, n_q > 1 = tensor subsampling
};

struct ExtrapolationBc {
  int order = 1;  // 1 or 2
};

/// Mirror the adjacent interior state with the wall-normal momentum
/// reversed (Euler only).
struct ReflectiveWallBc {};

using AtomicBc = std::variant<DirichletBc, ExtrapolationBc, ReflectiveWallBc>;

/// Piecewise side specification over tangential intervals; the pieces must
/// partition the side exactly.
struct CompositeBc {
  struct Piece {
    double lo, hi;
    AtomicBc bc;
  };
  std::vector<Piece> pieces;
};

using SideBc = std::variant<DirichletBc, ExtrapolationBc, ReflectiveWallBc, CompositeBc>;

struct BoundarySpec {
  std::array<SideBc, 4> side{DirichletBc{}, DirichletBc{}, DirichletBc{}, DirichletBc{}};
  SideBc& operator[](Side s) { return side[static_cast<int>(s)]; }
  const SideBc& operator[](Side s) const { return side[static_cast<int>(s)]; }
};

/// Approximate time-space mean of the datum over [t_n, t_{n+1}] x the cell
/// face: a single evaluation at the midpoint by default, or the mean over
/// an n_q x n_q uniform tensor sample (n_q in time only for 1D problems).
StateVec boundary_datum_average(const BoundaryDatum& datum, Side side, int cell,
                                long step, const GridSpec& grid, int quadrature);

struct GhostFillOptions {
  /// Clamp extrapolated scalar traces into [-data_bound, data_bound]
  /// ("safe mode"). Off by default: out-of-range traces pass through and
  /// are only counted.
  bool clamp_traces = false;
  double data_bound = 0;
};

struct GhostFillStats {
  long out_of_range_traces = 0;
  long clamped_traces = 0;
};

/// Traces applied to each side's ghost strip this step (recorded when a
/// recorder is passed to fill_ghosts), indexed [side][strip cell].
using AppliedTraces = std::array<std::vector<StateVec>, 4>;

/// Fill every ghost strip of the post-collision field from the equilibrium
/// of a macroscopic boundary state: averaged Dirichlet data, first- or
/// second-order extrapolated interior traces (2 u_0 - u_1), or the mirror
/// state of a reflective wall. `moments` are those of the pre-stream
/// interior state at t_n.
GhostFillStats fill_ghosts(DistributionField& post_collision, const BoundarySpec& bc,
                           const EquilibriumSpec& eq, const MomentField& moments,
                           long step, const GridSpec& grid,
                           const GhostFillOptions& options = {},
                           AppliedTraces* recorder = nullptr);

}  // namespace vlb
