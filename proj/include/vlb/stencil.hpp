#pragma once

#include <array>
#include <span>
#include <string>

namespace vlb {

/// Discrete velocity slots. The order (rest, right, left, up, down) is the
/// canonical iteration order used everywhere sums over velocities appear,
/// so that floating-point summation is deterministic.
enum class Velocity : int { rest = 0, right = 1, left = 2, up = 3, down = 4 };

inline constexpr int velocity_slot_count = 5;

enum class Stencil : int { d1q2, d1q3, d2q4, d2q5 };

/// Opposite velocity (rest maps to itself).
Velocity opposite(Velocity v);

/// Integer cell displacement {dx, dy} of a velocity; entries in {-1,0,+1},
/// at most one nonzero (axis-aligned stencils only).
std::array<int, 2> displacement(Velocity v);

const char* to_string(Velocity v);
const char* to_string(Stencil s);
Stencil stencil_from_string(const std::string& name);
int stencil_dimension(Stencil s);

/// The ordered velocity index set of a stencil.
class VelocitySet {
 public:
  static const VelocitySet& of(Stencil s);

  Stencil id() const { return id_; }
  int count() const { return count_; }
  int dimension() const { return dimension_; }
  bool contains(Velocity v) const { return member_[static_cast<int>(v)]; }
  std::span<const Velocity> velocities() const {
    return {order_.data(), static_cast<std::size_t>(count_)};
  }

 private:
  VelocitySet(Stencil id, std::initializer_list<Velocity> vs);

  Stencil id_;
  std::array<Velocity, velocity_slot_count> order_{};
  std::array<bool, velocity_slot_count> member_{};
  int count_ = 0;
  int dimension_ = 0;
};

}  // namespace vlb
