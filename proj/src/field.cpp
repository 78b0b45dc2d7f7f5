#include "vlb/field.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace vlb {

MomentField::MomentField(int cells_x, int cells_y, int components)
    : cells_x_(cells_x), cells_y_(cells_y), components_(components) {
  if (cells_x <= 0 || cells_y <= 0 || components <= 0 ||
      components > StateVec::capacity)
    throw std::invalid_argument("bad moment field shape");
  data_.assign(static_cast<std::size_t>(cells_x) * cells_y * components, 0.0);
}

StateVec MomentField::state(int jx, int jy) const {
  StateVec u(components_);
  const double* p = cell(jx, jy);
  for (int c = 0; c < components_; ++c) u[c] = p[c];
  return u;
}

void MomentField::set_state(int jx, int jy, const StateVec& u) {
  double* p = cell(jx, jy);
  for (int c = 0; c < components_; ++c) p[c] = u[c];
}

DistributionField::DistributionField(Stencil stencil, int cells_x, int cells_y,
                                     int components)
    : velocities_(&VelocitySet::of(stencil)),
      cells_x_(cells_x),
      cells_y_(cells_y),
      components_(components) {
  if (cells_x <= 0 || cells_y <= 0 || components <= 0 ||
      components > StateVec::capacity)
    throw std::invalid_argument("bad distribution field shape");
  if (velocities_->dimension() == 1 && cells_y != 1)
    throw std::invalid_argument("1D stencil requires cells_y == 1");
  const std::size_t interior =
      static_cast<std::size_t>(cells_x) * cells_y * components;
  for (Velocity v : velocities_->velocities()) {
    values_[slot(v)].assign(interior, 0.0);
    if (v != Velocity::rest) {
      // Strip along the inflow side: one cell per row (x velocities) or
      // per column (y velocities).
      const int len = (v == Velocity::right || v == Velocity::left) ? cells_y
                                                                    : cells_x;
      ghost_[slot(v)].assign(static_cast<std::size_t>(len) * components, 0.0);
    }
  }
}

int DistributionField::ghost_length(Velocity v) const {
  if (!has_ghost(v)) return 0;
  return (v == Velocity::right || v == Velocity::left) ? cells_y_ : cells_x_;
}

StateVec DistributionField::cell_state(Velocity v, int jx, int jy) const {
  StateVec f(components_);
  const double* p = cell(v, jx, jy);
  for (int c = 0; c < components_; ++c) f[c] = p[c];
  return f;
}

void DistributionField::set_cell_state(Velocity v, int jx, int jy, const StateVec& f) {
  double* p = cell(v, jx, jy);
  for (int c = 0; c < components_; ++c) p[c] = f[c];
}

StateVec DistributionField::ghost_state(Velocity v, int k) const {
  StateVec f(components_);
  const double* p = ghost(v, k);
  for (int c = 0; c < components_; ++c) f[c] = p[c];
  return f;
}

void DistributionField::set_ghost_state(Velocity v, int k, const StateVec& f) {
  double* p = ghost(v, k);
  for (int c = 0; c < components_; ++c) p[c] = f[c];
}

bool DistributionField::interior_finite() const {
  for (Velocity v : velocities_->velocities())
    for (double x : values_[slot(v)])
      if (!std::isfinite(x)) return false;
  return true;
}

bool DistributionField::same_shape(const DistributionField& other) const {
  return stencil() == other.stencil() && cells_x_ == other.cells_x_ &&
         cells_y_ == other.cells_y_ && components_ == other.components_;
}

MomentField compute_moments(const DistributionField& field) {
  MomentField moments(field.cells_x(), field.cells_y(), field.components());
  std::span<double> out = moments.data();
  for (Velocity v : field.velocities().velocities()) {
    std::span<const double> in = field.data(v);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += in[i];
  }
  return moments;
}

void stream(const DistributionField& post_collision, DistributionField& next) {
  if (!post_collision.same_shape(next))
    throw std::invalid_argument("stream: mismatched field shapes");
  const int jx_max = post_collision.cells_x();
  const int jy_max = post_collision.cells_y();
  const int m = post_collision.components();
  const std::size_t cell_bytes = sizeof(double) * m;

  for (Velocity v : post_collision.velocities().velocities()) {
    if (v != Velocity::rest && !post_collision.ghost_filled(v))
      throw std::logic_error(std::string("stream: ghost strip for velocity '") +
                             to_string(v) + "' has not been filled");
    std::span<const double> in = post_collision.data(v);
    std::span<double> out = next.data(v);
    switch (v) {
      case Velocity::rest:
        std::memcpy(out.data(), in.data(), in.size() * sizeof(double));
        break;
      case Velocity::right:
        for (int jy = 0; jy < jy_max; ++jy) {
          std::memcpy(next.cell(v, 0, jy), post_collision.ghost(v, jy), cell_bytes);
          if (jx_max > 1)
            std::memcpy(next.cell(v, 1, jy), post_collision.cell(v, 0, jy),
                        cell_bytes * (jx_max - 1));
        }
        break;
      case Velocity::left:
        for (int jy = 0; jy < jy_max; ++jy) {
          if (jx_max > 1)
            std::memcpy(next.cell(v, 0, jy), post_collision.cell(v, 1, jy),
                        cell_bytes * (jx_max - 1));
          std::memcpy(next.cell(v, jx_max - 1, jy), post_collision.ghost(v, jy),
                      cell_bytes);
        }
        break;
      case Velocity::up:
        for (int jy = jy_max - 1; jy >= 1; --jy)
          std::memcpy(next.cell(v, 0, jy), post_collision.cell(v, 0, jy - 1),
                      cell_bytes * jx_max);
        std::memcpy(next.cell(v, 0, 0), post_collision.ghost(v, 0),
                    cell_bytes * jx_max);
        break;
      case Velocity::down:
        for (int jy = 0; jy + 1 < jy_max; ++jy)
          std::memcpy(next.cell(v, 0, jy), post_collision.cell(v, 0, jy + 1),
                      cell_bytes * jx_max);
        std::memcpy(next.cell(v, 0, jy_max - 1), post_collision.ghost(v, 0),
                    cell_bytes * jx_max);
        break;
    }
    if (v != Velocity::rest) next.set_ghost_filled(v, false);
  }
}

}  // namespace vlb
