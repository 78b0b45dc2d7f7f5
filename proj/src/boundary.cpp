#include "vlb/boundary.hpp"

#include <cmath>
#include <stdexcept>

#include "vlb/errors.hpp"
#include <string>

namespace vlb {

const char* to_string(Side s) {
  switch (s) {
    case Side::west:
      return "west";
    case Side::east:
      return "east";
    case Side::south:
      return "south";
    case Side::north:
      return "north";
  }
  return "?";
}

Velocity inflow_velocity(Side s) {
  switch (s) {
    case Side::west:
      return Velocity::right;
    case Side::east:
      return Velocity::left;
    case Side::south:
      return Velocity::up;
    case Side::north:
      return Velocity::down;
  }
  throw std::invalid_argument("unknown side");
}

namespace {

bool horizontal(Side s) { return s == Side::west || s == Side::east; }

// Tangential coordinate origin of a side: y for west/east, x for south/north.
double tangential_origin(Side s, const GridSpec& grid) {
  return horizontal(s) ? grid.y_min : grid.x_min;
}

}  // namespace

StateVec boundary_datum_average(const BoundaryDatum& datum, Side side, int cell,
                                long step, const GridSpec& grid, int quadrature) {
  if (quadrature < 1) throw std::invalid_argument("quadrature must be >= 1");
  const double t0 = static_cast<double>(step) * grid.dt;
  const double s0 = tangential_origin(side, grid) + cell * grid.dx;
  if (quadrature == 1)
    return datum(t0 + 0.5 * grid.dt, grid.dimension == 1 ? 0.0 : s0 + 0.5 * grid.dx);

  const int nq = quadrature;
  const double ht = grid.dt / nq;
  if (grid.dimension == 1) {
    StateVec acc = datum(t0 + 0.5 * ht, 0.0);
    for (int i = 1; i < nq; ++i) acc += datum(t0 + (i + 0.5) * ht, 0.0);
    return (1.0 / nq) * acc;
  }
  const double hs = grid.dx / nq;
  StateVec acc;
  bool first = true;
  for (int i = 0; i < nq; ++i)
    for (int k = 0; k < nq; ++k) {
      StateVec v = datum(t0 + (i + 0.5) * ht, s0 + (k + 0.5) * hs);
      if (first) {
        acc = v;
        first = false;
      } else {
        acc += v;
      }
    }
  return (1.0 / (nq * nq)) * acc;
}

namespace {

void validate_composite(const CompositeBc& c, double lo, double hi) {
  if (c.pieces.empty()) throw std::invalid_argument("composite side with no pieces");
  const double tol = 1e-12 * std::max(1.0, hi - lo);
  double cursor = lo;
  for (const auto& p : c.pieces) {
    if (std::abs(p.lo - cursor) > tol)
      throw std::invalid_argument("composite pieces do not partition the side");
    if (p.hi <= p.lo) throw std::invalid_argument("empty composite piece");
    cursor = p.hi;
  }
  if (std::abs(cursor - hi) > tol)
    throw std::invalid_argument("composite pieces do not cover the side");
}

const AtomicBc& select_piece(const CompositeBc& c, double s) {
  for (const auto& p : c.pieces)
    if (s < p.hi || &p == &c.pieces.back()) return p.bc;
  return c.pieces.back().bc;
}

struct SideGeometry {
  // Interior cells adjacent to strip cell k: (x0,y0) touches the boundary,
  // (x1,y1) is one cell further inside.
  int x0, y0, x1, y1;
};

SideGeometry adjacent_cells(Side side, int k, const GridSpec& grid) {
  const int nx = grid.cells_x, ny = grid.cells_y;
  switch (side) {
    case Side::west:
      return {0, k, std::min(1, nx - 1), k};
    case Side::east:
      return {nx - 1, k, std::max(nx - 2, 0), k};
    case Side::south:
      return {k, 0, k, std::min(1, ny - 1)};
    case Side::north:
      return {k, ny - 1, k, std::max(ny - 2, 0)};
  }
  throw std::invalid_argument("unknown side");
}

int normal_momentum_component(Side side) { return horizontal(side) ? 1 : 2; }

}  // namespace

GhostFillStats fill_ghosts(DistributionField& field, const BoundarySpec& bc,
                           const EquilibriumSpec& eq, const MomentField& moments,
                           long step, const GridSpec& grid,
                           const GhostFillOptions& options, AppliedTraces* recorder) {
  GhostFillStats stats;
  const bool scalar = eq.model->is_scalar();
  const bool euler = eq.model->is_euler();
  const double gamma = euler ? eq.model->adiabatic_exponent() : 0.0;

  for (int si = 0; si < 4; ++si) {
    const Side side = static_cast<Side>(si);
    const Velocity v = inflow_velocity(side);
    if (!field.has_ghost(v)) continue;

    const int len = field.ghost_length(v);
    const double s_origin = tangential_origin(side, grid);
    const CompositeBc* composite = std::get_if<CompositeBc>(&bc[side]);
    if (composite)
      validate_composite(*composite, s_origin, s_origin + len * grid.dx);
    if (recorder) (*recorder)[si].assign(len, StateVec(field.components()));

    auto trace_of = [&](const DirichletBc* d, const ExtrapolationBc* e,
                        const ReflectiveWallBc* r, int k) {
      StateVec trace(field.components());
      if (d) {
        if (!d->datum) throw std::invalid_argument("dirichlet side without a datum");
        trace = boundary_datum_average(d->datum, side, k, step, grid, d->quadrature);
      } else if (e) {
        if (e->order != 1 && e->order != 2)
          throw std::invalid_argument("extrapolation order must be 1 or 2");
        const SideGeometry g = adjacent_cells(side, k, grid);
        StateVec u0 = moments.state(g.x0, g.y0);
        trace = e->order == 1 ? u0 : 2.0 * u0 - moments.state(g.x1, g.y1);
        if (euler) {
          const bool ok =
              trace[0] > 0 &&
              euler_pressure({trace[0], trace[1], trace[2], trace[3], gamma}) > 0;
          if (!ok)
            throw AdmissibilityError(
                std::string("fill_ghosts: inadmissible extrapolated state on ") +
                to_string(side) + " side, strip cell " + std::to_string(k));
        } else if (scalar && options.data_bound > 0) {
          const double m = options.data_bound;
          if (trace[0] < -m || trace[0] > m) {
            ++stats.out_of_range_traces;
            if (options.clamp_traces) {
              trace[0] = std::min(m, std::max(-m, trace[0]));
              ++stats.clamped_traces;
            }
          }
        }
      } else if (r) {
        if (field.components() != 4)
          throw std::invalid_argument("reflective wall requires an Euler state");
        const SideGeometry g = adjacent_cells(side, k, grid);
        trace = moments.state(g.x0, g.y0);
        const int nc = normal_momentum_component(side);
        trace[nc] = -trace[nc];
      }
      return trace;
    };

    for (int k = 0; k < len; ++k) {
      StateVec trace(field.components());
      if (composite) {
        const AtomicBc& a = select_piece(*composite, s_origin + (k + 0.5) * grid.dx);
        trace = trace_of(std::get_if<DirichletBc>(&a), std::get_if<ExtrapolationBc>(&a),
                         std::get_if<ReflectiveWallBc>(&a), k);
      } else {
        const SideBc& a = bc[side];
        trace = trace_of(std::get_if<DirichletBc>(&a), std::get_if<ExtrapolationBc>(&a),
                         std::get_if<ReflectiveWallBc>(&a), k);
      }
      field.set_ghost_state(v, k, equilibrium_component(eq, v, trace));
      if (recorder) (*recorder)[si][k] = trace;
    }
    field.set_ghost_filled(v, true);
  }
  return stats;
}

}  // namespace vlb
