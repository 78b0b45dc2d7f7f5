#include "vlb/stencil.hpp"

#include <stdexcept>

namespace vlb {

Velocity opposite(Velocity v) {
  switch (v) {
    case Velocity::rest:
      return Velocity::rest;
    case Velocity::right:
      return Velocity::left;
    case Velocity::left:
      return Velocity::right;
    case Velocity::up:
      return Velocity::down;
    case Velocity::down:
      return Velocity::up;
  }
  throw std::invalid_argument("unknown velocity");
}

std::array<int, 2> displacement(Velocity v) {
  switch (v) {
    case Velocity::rest:
      return {0, 0};
    case Velocity::right:
      return {+1, 0};
    case Velocity::left:
      return {-1, 0};
    case Velocity::up:
      return {0, +1};
    case Velocity::down:
      return {0, -1};
  }
  throw std::invalid_argument("unknown velocity");
}

const char* to_string(Velocity v) {
  switch (v) {
    case Velocity::rest:
      return "rest";
    case Velocity::right:
      return "right";
    case Velocity::left:
      return "left";
    case Velocity::up:
      return "up";
    case Velocity::down:
      return "down";
  }
  return "?";
}

const char* to_string(Stencil s) {
  switch (s) {
    case Stencil::d1q2:
      return "d1q2";
    case Stencil::d1q3:
      return "d1q3";
    case Stencil::d2q4:
      return "d2q4";
    case Stencil::d2q5:
      return "d2q5";
  }
  return "?";
}

Stencil stencil_from_string(const std::string& name) {
  if (name == "d1q2") return Stencil::d1q2;
  if (name == "d1q3") return Stencil::d1q3;
  if (name == "d2q4") return Stencil::d2q4;
  if (name == "d2q5") return Stencil::d2q5;
  throw std::invalid_argument("unknown stencil: " + name);
}

int stencil_dimension(Stencil s) {
  return (s == Stencil::d1q2 || s == Stencil::d1q3) ? 1 : 2;
}

VelocitySet::VelocitySet(Stencil id, std::initializer_list<Velocity> vs)
    : id_(id), dimension_(stencil_dimension(id)) {
  for (Velocity v : vs) {
    order_[count_++] = v;
    member_[static_cast<int>(v)] = true;
  }
}

const VelocitySet& VelocitySet::of(Stencil s) {
  static const VelocitySet d1q2{Stencil::d1q2, {Velocity::right, Velocity::left}};
  static const VelocitySet d1q3{
      Stencil::d1q3, {Velocity::rest, Velocity::right, Velocity::left}};
  static const VelocitySet d2q4{
      Stencil::d2q4, {Velocity::right, Velocity::left, Velocity::up, Velocity::down}};
  static const VelocitySet d2q5{Stencil::d2q5,
                                {Velocity::rest, Velocity::right, Velocity::left,
                                 Velocity::up, Velocity::down}};
  switch (s) {
    case Stencil::d1q2:
      return d1q2;
    case Stencil::d1q3:
      return d1q3;
    case Stencil::d2q4:
      return d2q4;
    case Stencil::d2q5:
      return d2q5;
  }
  throw std::invalid_argument("unknown stencil");
}

}  // namespace vlb
