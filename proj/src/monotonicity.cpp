#include "vlb/monotonicity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace vlb {

const char* to_string(MonotonicityVerdict v) {
  switch (v) {
    case MonotonicityVerdict::monotone:
      return "monotone";
    case MonotonicityVerdict::not_monotone:
      return "not_monotone";
    case MonotonicityVerdict::uncertified:
      return "uncertified";
  }
  return "?";
}

std::string MonotonicityReport::to_text() const {
  std::string out;
  char line[256];
  for (const auto& q : inequalities) {
    std::snprintf(line, sizeof(line), "  [%s] %s: lhs = %.17g, rhs = %.17g, slack = %.17g\n",
                  q.holds() ? "ok" : "violated", q.label.c_str(), q.lhs, q.rhs, q.slack());
    out += line;
  }
  out += "verdict: ";
  out += to_string(verdict);
  if (!note.empty()) out += " (" + note + ")";
  out += "\n";
  return out;
}

namespace {

// Pair condition along one axis:
//   (omega_a / 2) max|phi'| / lambda <= omega_s a + min(2-omega_s-omega_a, 0, omega_a-omega_s)/2
MonotonicityInequality pair_condition(const char* label, double omega_s, double omega_a,
                                      double a, double courant_max) {
  MonotonicityInequality q;
  q.label = label;
  q.lhs = 0.5 * omega_a * courant_max;
  q.rhs = omega_s * a +
          0.5 * std::min({2.0 - omega_s - omega_a, 0.0, omega_a - omega_s});
  return q;
}

// Rest-weight condition: omega_s w >= max(0, omega_s - 1), normalized to lhs <= rhs.
MonotonicityInequality rest_condition(double omega_s, double rest_weight) {
  MonotonicityInequality q;
  q.label = "rest_weight";
  q.lhs = std::max(0.0, omega_s - 1.0);
  q.rhs = omega_s * rest_weight;
  return q;
}

}  // namespace

MonotonicityReport check_monotone(Stencil stencil, double omega_s, double omega_a,
                                  double a_x, double a_y, double lambda,
                                  const FluxModel& model, double m) {
  if (lambda <= 0) throw std::invalid_argument("check_monotone: lambda must be positive");
  if (m < 0) throw std::invalid_argument("check_monotone: negative data bound");
  const int dim = stencil_dimension(stencil);
  if (dim == 1 && a_y != 0)
    throw std::invalid_argument("check_monotone: a_y must vanish for 1D stencils");

  MonotonicityReport report;
  if (!model.is_scalar()) {
    report.verdict = MonotonicityVerdict::uncertified;
    report.note = "vectorial model: scalar monotonicity theory does not apply";
    return report;
  }

  const double rx = max_abs_flux_derivative(model, Axis::x, m) / lambda;
  const double ry = dim == 2 ? max_abs_flux_derivative(model, Axis::y, m) / lambda : 0.0;
  if (rx == 0 && ry == 0) {
    report.trivial_courant = true;
    report.verdict = MonotonicityVerdict::uncertified;
    report.note = "all Courant numbers vanish (excluded trivial case)";
    return report;
  }

  switch (stencil) {
    case Stencil::d2q5:
      report.inequalities.push_back(rest_condition(omega_s, 1 - 2 * a_x - 2 * a_y));
      report.inequalities.push_back(pair_condition("x_pair", omega_s, omega_a, a_x, rx));
      report.inequalities.push_back(pair_condition("y_pair", omega_s, omega_a, a_y, ry));
      break;
    case Stencil::d2q4:
      report.inequalities.push_back(pair_condition("x_pair", omega_s, omega_a, a_x, rx));
      report.inequalities.push_back(pair_condition("y_pair", omega_s, omega_a, a_y, ry));
      break;
    case Stencil::d1q3:
      report.inequalities.push_back(rest_condition(omega_s, 1 - 2 * a_x));
      report.inequalities.push_back(pair_condition("x_pair", omega_s, omega_a, a_x, rx));
      break;
    case Stencil::d1q2: {
      // omega_s plays no role: omega max|phi'|/lambda <= omega + 2 min(1-omega, 0).
      MonotonicityInequality q;
      q.label = "x_pair";
      q.lhs = omega_a * rx;
      q.rhs = omega_a + 2.0 * std::min(1.0 - omega_a, 0.0);
      report.inequalities.push_back(q);
      break;
    }
  }

  const bool all = std::all_of(report.inequalities.begin(), report.inequalities.end(),
                               [](const auto& q) { return q.holds(); });
  report.verdict = all ? MonotonicityVerdict::monotone : MonotonicityVerdict::not_monotone;
  return report;
}

MaxOmegaResult max_bgk_omega(Stencil stencil, double a_x, double a_y, double lambda,
                             const FluxModel& model, double m) {
  auto passes = [&](double omega) {
    MonotonicityReport r = check_monotone(stencil, omega, omega, a_x, a_y, lambda, model, m);
    if (r.verdict == MonotonicityVerdict::uncertified)
      throw std::invalid_argument("max_bgk_omega: configuration cannot be certified");
    return std::all_of(r.inequalities.begin(), r.inequalities.end(),
                       [](const auto& q) { return q.slack() >= 0; });
  };

  // The conditions do not depend on omega on (0, 1] and their slack is
  // non-increasing beyond, so admissibility at omega -> 0+ equals
  // admissibility at 1 and the admissible set is an interval.
  if (!passes(1.0)) return {0.0, false};
  if (passes(2.0)) return {2.0, true};
  double lo = 1.0, hi = 2.0;
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    (passes(mid) ? lo : hi) = mid;
  }
  return {lo, true};
}

}  // namespace vlb
