#pragma once

#include <array>
#include <cmath>
#include <cstdlib>

namespace vlb {

/// Fixed-capacity vector of conserved components (M <= 4 covers all
/// built-in systems: scalar problems and 2D Euler).
class StateVec {
 public:
  static constexpr int capacity = 4;

  StateVec() = default;
  explicit StateVec(int n, double value = 0.0) : size_(n) {
    for (int i = 0; i < n; ++i) v_[i] = value;
  }
  static StateVec scalar(double a) {
    StateVec s(1);
    s.v_[0] = a;
    return s;
  }

  int size() const { return size_; }
  double& operator[](int i) { return v_[i]; }
  double operator[](int i) const { return v_[i]; }

  StateVec& operator+=(const StateVec& o) {
    for (int i = 0; i < size_; ++i) v_[i] += o.v_[i];
    return *this;
  }
  StateVec& operator-=(const StateVec& o) {
    for (int i = 0; i < size_; ++i) v_[i] -= o.v_[i];
    return *this;
  }
  StateVec& operator*=(double a) {
    for (int i = 0; i < size_; ++i) v_[i] *= a;
    return *this;
  }

  friend StateVec operator+(StateVec a, const StateVec& b) { return a += b; }
  friend StateVec operator-(StateVec a, const StateVec& b) { return a -= b; }
  friend StateVec operator*(double a, StateVec b) { return b *= a; }

  /// l1 norm of the components; vector quantities are always measured
  /// component-wise in l1.
  double abs_sum() const {
    double s = 0;
    for (int i = 0; i < size_; ++i) s += std::abs(v_[i]);
    return s;
  }

  bool finite() const {
    for (int i = 0; i < size_; ++i)
      if (!std::isfinite(v_[i])) return false;
    return true;
  }

 private:
  std::array<double, capacity> v_{};
  int size_ = 0;
};

}  // namespace vlb
