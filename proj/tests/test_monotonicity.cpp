#include <doctest.h>

#include <cmath>

#include "vlb/monotonicity.hpp"

using namespace vlb;

TEST_CASE("two-velocity transport condition by hand") {
  FluxModel transport = FluxModel::transport(-1.0);
  // omega |phi'|/lambda <= omega + 2 min(1 - omega, 0)
  MonotonicityReport ok =
      check_monotone(Stencil::d1q2, 1.2, 1.2, 0.5, 0.0, 2.0, transport, 1.0);
  CHECK(ok.verdict == MonotonicityVerdict::monotone);
  REQUIRE(ok.inequalities.size() == 1);
  CHECK(ok.inequalities[0].lhs == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(ok.inequalities[0].rhs == doctest::Approx(0.8).epsilon(1e-15));

  MonotonicityReport bad =
      check_monotone(Stencil::d1q2, 1.5, 1.5, 0.5, 0.0, 2.0, transport, 1.0);
  CHECK(bad.verdict == MonotonicityVerdict::not_monotone);
  CHECK(bad.inequalities[0].lhs == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(bad.inequalities[0].rhs == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("2D square-flux scheme sits on the boundary at omega = 12/11") {
  FluxModel burgers = FluxModel::burgers(2);
  MonotonicityReport edge = check_monotone(Stencil::d2q4, 12.0 / 11.0, 12.0 / 11.0,
                                           0.25, 0.25, 3.0, burgers, 1.0);
  CHECK(edge.verdict == MonotonicityVerdict::monotone);
  for (const auto& q : edge.inequalities) CHECK(std::abs(q.slack()) <= 1e-12);
}

TEST_CASE("largest admissible bgk rates match the quoted thresholds") {
  FluxModel transport = FluxModel::transport(-1.0);
  MaxOmegaResult a = max_bgk_omega(Stencil::d1q2, 0.5, 0.0, 2.0, transport, 1.0);
  CHECK(a.admissible);
  CHECK(std::abs(a.omega - 4.0 / 3.0) <= 1e-12);

  FluxModel cubic = FluxModel::cubic();
  MaxOmegaResult b = max_bgk_omega(Stencil::d1q2, 0.5, 0.0, 10.0 / 7.0, cubic, 1.0);
  CHECK(b.admissible);
  CHECK(std::abs(b.omega - 20.0 / 17.0) <= 1e-12);

  FluxModel burgers = FluxModel::burgers(2);
  MaxOmegaResult c = max_bgk_omega(Stencil::d2q4, 0.25, 0.25, 3.0, burgers, 1.0);
  CHECK(c.admissible);
  CHECK(std::abs(c.omega - 12.0 / 11.0) <= 1e-12);
}

TEST_CASE("bisection agrees with the closed form for the two-velocity scheme") {
  // omega* = 2 / (1 + max|phi'|/lambda) whenever the ratio stays below one
  struct Probe {
    FluxModel model;
    double lambda, m;
  };
  for (const Probe& p : {Probe{FluxModel::transport(-1.0), 2.0, 1.0},
                         Probe{FluxModel::transport(-1.0), 4.0, 2.0},
                         Probe{FluxModel::burgers(1), 2.0, 1.0},
                         Probe{FluxModel::burgers(1), 3.0, 0.5},
                         Probe{FluxModel::cubic(), 10.0 / 7.0, 1.0},
                         Probe{FluxModel::cubic(), 2.0, 0.5}}) {
    const double ratio = max_abs_flux_derivative(p.model, Axis::x, p.m) / p.lambda;
    MaxOmegaResult r = max_bgk_omega(Stencil::d1q2, 0.5, 0.0, p.lambda, p.model, p.m);
    CHECK(r.admissible);
    CHECK(std::abs(r.omega - std::min(2.0, 2.0 / (1.0 + ratio))) <= 1e-12);
  }
}

TEST_CASE("the admissible set is sharp at the threshold") {
  struct Probe {
    Stencil stencil;
    double a_x, a_y, lambda;
    FluxModel model;
  };
  for (const Probe& p :
       {Probe{Stencil::d1q2, 0.5, 0.0, 2.0, FluxModel::transport(-1.0)},
        Probe{Stencil::d1q2, 0.5, 0.0, 10.0 / 7.0, FluxModel::cubic()},
        Probe{Stencil::d2q4, 0.25, 0.25, 3.0, FluxModel::burgers(2)}}) {
    MaxOmegaResult r = max_bgk_omega(p.stencil, p.a_x, p.a_y, p.lambda, p.model, 1.0);
    REQUIRE(r.admissible);
    MonotonicityReport at = check_monotone(p.stencil, r.omega, r.omega, p.a_x, p.a_y,
                                           p.lambda, p.model, 1.0);
    CHECK(at.verdict == MonotonicityVerdict::monotone);
    MonotonicityReport beyond = check_monotone(p.stencil, r.omega + 1e-6, r.omega + 1e-6,
                                               p.a_x, p.a_y, p.lambda, p.model, 1.0);
    CHECK(beyond.verdict == MonotonicityVerdict::not_monotone);
  }
}

TEST_CASE("vectorial and zero-Courant configurations are not certified") {
  FluxModel euler = FluxModel::euler2d(1.4);
  MonotonicityReport e =
      check_monotone(Stencil::d2q4, 1.35, 1.35, 0.25, 0.25, 30.0, euler, 0.0);
  CHECK(e.verdict == MonotonicityVerdict::uncertified);

  FluxModel still = FluxModel::transport(0.0);
  MonotonicityReport t =
      check_monotone(Stencil::d1q2, 1.0, 1.0, 0.5, 0.0, 2.0, still, 1.0);
  CHECK(t.verdict == MonotonicityVerdict::uncertified);
  CHECK(t.trivial_courant);
}

TEST_CASE("supercritical data admit no bgk rate") {
  FluxModel fast = FluxModel::transport(-2.0);
  MaxOmegaResult r = max_bgk_omega(Stencil::d1q2, 0.5, 0.0, 1.0, fast, 1.0);
  CHECK_FALSE(r.admissible);
  CHECK(r.omega == 0.0);
}

TEST_CASE("d2q5 threshold combines the rest-weight and pair conditions") {
  FluxModel burgers = FluxModel::burgers(2);
  // Rest condition caps omega at 1/(1 - w) = 1.25; the pair condition at
  // omega <= 1/(1 - a + r/2) = 60/49 with r = 1/30, which binds first.
  MaxOmegaResult r = max_bgk_omega(Stencil::d2q5, 0.2, 0.2, 30.0, burgers, 1.0);
  CHECK(r.admissible);
  CHECK(std::abs(r.omega - 60.0 / 49.0) <= 1e-12);

  // With a small rest weight the rest condition becomes the cap: 1/(1 - w).
  MaxOmegaResult rest_bound =
      max_bgk_omega(Stencil::d2q5, 0.24, 0.24, 30.0, burgers, 1.0);
  CHECK(rest_bound.admissible);
  CHECK(std::abs(rest_bound.omega - 25.0 / 24.0) <= 1e-12);
}
