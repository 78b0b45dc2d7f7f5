#pragma once

#include <array>
#include <span>
#include <vector>

#include "vlb/state.hpp"
#include "vlb/stencil.hpp"

namespace vlb {

/// Conserved moments on the interior cells: M components per cell,
/// row-major over cells (x contiguous).
class MomentField {
 public:
  MomentField(int cells_x, int cells_y, int components);

  int cells_x() const { return cells_x_; }
  int cells_y() const { return cells_y_; }
  int components() const { return components_; }

  double* cell(int jx, int jy) { return data_.data() + offset(jx, jy); }
  const double* cell(int jx, int jy) const { return data_.data() + offset(jx, jy); }
  StateVec state(int jx, int jy) const;
  void set_state(int jx, int jy, const StateVec& u);

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

 private:
  std::size_t offset(int jx, int jy) const {
    return (static_cast<std::size_t>(jy) * cells_x_ + jx) * components_;
  }
  int cells_x_, cells_y_, components_;
  std::vector<double> data_;
};

/// Per-velocity arrays of M-component distribution values on the interior
/// cells, plus a one-cell-thick ghost strip for every nonzero velocity on
/// the side it enters from (west strip feeds `right`, east feeds `left`,
/// south feeds `up`, north feeds `down`). Ghost strips carry a filled flag;
/// streaming refuses to read an unfilled strip.
class DistributionField {
 public:
  DistributionField(Stencil stencil, int cells_x, int cells_y, int components);

  const VelocitySet& velocities() const { return *velocities_; }
  Stencil stencil() const { return velocities_->id(); }
  int cells_x() const { return cells_x_; }
  int cells_y() const { return cells_y_; }
  int components() const { return components_; }
  int dimension() const { return velocities_->dimension(); }

  double* cell(Velocity v, int jx, int jy) {
    return values_[slot(v)].data() + offset(jx, jy);
  }
  const double* cell(Velocity v, int jx, int jy) const {
    return values_[slot(v)].data() + offset(jx, jy);
  }
  StateVec cell_state(Velocity v, int jx, int jy) const;
  void set_cell_state(Velocity v, int jx, int jy, const StateVec& f);

  std::span<double> data(Velocity v) { return values_[slot(v)]; }
  std::span<const double> data(Velocity v) const { return values_[slot(v)]; }

  bool has_ghost(Velocity v) const { return !ghost_[slot(v)].empty(); }
  /// Number of cells in the ghost strip of velocity v.
  int ghost_length(Velocity v) const;
  double* ghost(Velocity v, int k) {
    return ghost_[slot(v)].data() + static_cast<std::size_t>(k) * components_;
  }
  const double* ghost(Velocity v, int k) const {
    return ghost_[slot(v)].data() + static_cast<std::size_t>(k) * components_;
  }
  StateVec ghost_state(Velocity v, int k) const;
  void set_ghost_state(Velocity v, int k, const StateVec& f);

  bool ghost_filled(Velocity v) const { return ghost_filled_[slot(v)]; }
  void set_ghost_filled(Velocity v, bool filled) { ghost_filled_[slot(v)] = filled; }

  bool interior_finite() const;
  bool same_shape(const DistributionField& other) const;

 private:
  static int slot(Velocity v) { return static_cast<int>(v); }
  std::size_t offset(int jx, int jy) const {
    return (static_cast<std::size_t>(jy) * cells_x_ + jx) * components_;
  }

  const VelocitySet* velocities_;
  int cells_x_, cells_y_, components_;
  std::array<std::vector<double>, velocity_slot_count> values_;
  std::array<std::vector<double>, velocity_slot_count> ghost_;
  std::array<bool, velocity_slot_count> ghost_filled_{};
};

/// Sum the distributions over the velocity set, cell by cell, in the
/// canonical velocity order.
MomentField compute_moments(const DistributionField& field);

/// Transport phase: shift each velocity's array by its displacement,
/// reading the matching ghost strip on the inflow side. Double buffered:
/// `post_collision` is left untouched, `next` receives the streamed values
/// and its ghost strips are marked unfilled.
void stream(const DistributionField& post_collision, DistributionField& next);

}  // namespace vlb
