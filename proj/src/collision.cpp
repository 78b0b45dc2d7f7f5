#include "vlb/collision.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "vlb/errors.hpp"

namespace vlb {

void RelaxationParams::validate() const {
  if (!(omega_symmetric > 0 && omega_symmetric <= 2))
    throw std::invalid_argument("omega_s must lie in (0, 2]");
  if (!(omega_antisymmetric > 0 && omega_antisymmetric <= 2))
    throw std::invalid_argument("omega_a must lie in (0, 2]");
}

void collide_cell(std::array<StateVec, velocity_slot_count>& f,
                  const EquilibriumSpec& spec, const RelaxationParams& params) {
  const VelocitySet& vs = VelocitySet::of(spec.stencil);
  StateVec u = f[static_cast<int>(vs.velocities()[0])];
  for (std::size_t i = 1; i < vs.velocities().size(); ++i)
    u += f[static_cast<int>(vs.velocities()[i])];
  EquilibriumValues eq = equilibrium(spec, u);

  const double ws = params.omega_symmetric;
  const double wa = params.omega_antisymmetric;
  const double keep = 1.0 - 0.5 * (ws + wa);
  const double toward = 0.5 * (ws + wa);
  const double cross = 0.5 * (ws - wa);

  auto pair_update = [&](Velocity i, Velocity ib) {
    StateVec fi = f[static_cast<int>(i)];
    StateVec fib = f[static_cast<int>(ib)];
    f[static_cast<int>(i)] =
        keep * fi + toward * eq[i] + cross * (eq[ib] - fib);
    f[static_cast<int>(ib)] =
        keep * fib + toward * eq[ib] + cross * (eq[i] - fi);
  };

  if (vs.contains(Velocity::rest)) {
    StateVec fr = f[static_cast<int>(Velocity::rest)];
    f[static_cast<int>(Velocity::rest)] = (1.0 - ws) * fr + ws * eq[Velocity::rest];
  }
  pair_update(Velocity::right, Velocity::left);
  if (vs.dimension() == 2) pair_update(Velocity::up, Velocity::down);
}

namespace {

void load_cell(const DistributionField& field, int jx, int jy,
               std::array<StateVec, velocity_slot_count>& f) {
  for (Velocity v : field.velocities().velocities())
    f[static_cast<int>(v)] = field.cell_state(v, jx, jy);
}

void store_cell(DistributionField& field, int jx, int jy,
                const std::array<StateVec, velocity_slot_count>& f) {
  for (Velocity v : field.velocities().velocities())
    field.set_cell_state(v, jx, jy, f[static_cast<int>(v)]);
}

}  // namespace

void relax_trt(DistributionField& field, const EquilibriumSpec& spec,
               const RelaxationParams& params) {
  spec.validate();
  params.validate();
  std::array<StateVec, velocity_slot_count> f;
  for (int jy = 0; jy < field.cells_y(); ++jy)
    for (int jx = 0; jx < field.cells_x(); ++jx) {
      load_cell(field, jx, jy, f);
      collide_cell(f, spec, params);
      store_cell(field, jx, jy, f);
    }
}

void relax_bgk(DistributionField& field, const EquilibriumSpec& spec, double omega) {
  relax_trt(field, spec, {omega, omega});
}

namespace {

// Moment the cell would hold after streaming the given post-collision
// buffer. Out-of-domain neighbors (whose ghost values do not exist yet at
// collision time) contribute the cell's own value for that velocity. When
// `self_override` is given, reads of the cell's own slots use it instead.
StateVec lookahead_moment(
    const DistributionField& star, int jx, int jy,
    const std::array<StateVec, velocity_slot_count>* self_override = nullptr) {
  const int nx = star.cells_x(), ny = star.cells_y();
  StateVec u(star.components());
  for (Velocity v : star.velocities().velocities()) {
    auto d = displacement(v);
    int sx = jx - d[0], sy = jy - d[1];
    if (sx < 0 || sx >= nx || sy < 0 || sy >= ny) {
      sx = jx;
      sy = jy;
    }
    if (self_override && sx == jx && sy == jy)
      u += (*self_override)[static_cast<int>(v)];
    else
      u += star.cell_state(v, sx, sy);
  }
  return u;
}

bool admissible(const StateVec& u, double gamma) {
  if (!(u[0] > 0)) return false;
  const double p =
      euler_pressure({u[0], u[1], u[2], u[3], gamma});
  return p > 0;
}

}  // namespace

GuardReport relax_guarded(const DistributionField& field, const EquilibriumSpec& spec,
                          double omega, DistributionField& out) {
  spec.validate();
  if (!spec.model->is_euler())
    throw std::invalid_argument("relax_guarded: Euler flux model required");
  if (!field.same_shape(out))
    throw std::invalid_argument("relax_guarded: mismatched field shapes");
  const double gamma = spec.model->adiabatic_exponent();
  const int nx = field.cells_x(), ny = field.cells_y();
  const std::size_t cells = static_cast<std::size_t>(nx) * ny;

  // Provisional collision everywhere, kept frozen while marking.
  DistributionField provisional = field;
  relax_trt(provisional, spec, {omega, omega});
  out = provisional;

  GuardReport report;
  report.fallback.assign(cells, 0);

  auto find_failures = [&](const DistributionField& star, std::vector<std::uint8_t>& bad) {
    long count = 0;
    for (int jy = 0; jy < ny; ++jy)
      for (int jx = 0; jx < nx; ++jx) {
        const bool ok = admissible(lookahead_moment(star, jx, jy), gamma);
        bad[static_cast<std::size_t>(jy) * nx + jx] = ok ? 0 : 1;
        if (!ok) ++count;
      }
    return count;
  };

  std::vector<std::uint8_t> marked(cells, 0);
  if (find_failures(provisional, marked) == 0) return report;

  // A cell's streamed moment is assembled from the post-collision values of
  // its whole stencil neighborhood, so the unit-rate cure has to cover the
  // contributors of every marked cell. Newly exposed failures extend the
  // marked set until the check passes or stops making progress.
  std::vector<std::uint8_t> cure(cells, 0);
  std::vector<std::uint8_t> bad(cells, 0);
  std::array<StateVec, velocity_slot_count> f;
  while (true) {
    std::fill(cure.begin(), cure.end(), 0);
    for (int jy = 0; jy < ny; ++jy)
      for (int jx = 0; jx < nx; ++jx) {
        if (!marked[static_cast<std::size_t>(jy) * nx + jx]) continue;
        for (Velocity v : field.velocities().velocities()) {
          auto d = displacement(v);
          const int sx = jx - d[0], sy = jy - d[1];
          if (sx >= 0 && sx < nx && sy >= 0 && sy < ny)
            cure[static_cast<std::size_t>(sy) * nx + sx] = 1;
        }
        cure[static_cast<std::size_t>(jy) * nx + jx] = 1;
      }

    out = provisional;
    for (int jy = 0; jy < ny; ++jy)
      for (int jx = 0; jx < nx; ++jx) {
        if (!cure[static_cast<std::size_t>(jy) * nx + jx]) continue;
        load_cell(field, jx, jy, f);
        collide_cell(f, spec, {1.0, 1.0});
        store_cell(out, jx, jy, f);
      }

    if (find_failures(out, bad) == 0) {
      report.fallback = cure;
      for (std::uint8_t b : cure) report.fallback_count += b;
      return report;
    }
    bool grew = false;
    for (std::size_t i = 0; i < cells; ++i)
      if (bad[i] && !marked[i]) {
        marked[i] = 1;
        grew = true;
      }
    if (!grew) {
      for (int jy = 0; jy < ny; ++jy)
        for (int jx = 0; jx < nx; ++jx)
          if (bad[static_cast<std::size_t>(jy) * nx + jx])
            throw AdmissibilityError("relax_guarded: cell (" + std::to_string(jx) +
                                     ", " + std::to_string(jy) +
                                     ") inadmissible even at omega = 1");
    }
  }
}

}  // namespace vlb
