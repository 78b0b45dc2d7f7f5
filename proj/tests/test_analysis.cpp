#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <vector>

#include "vlb/analysis.hpp"
#include "vlb/cases.hpp"
#include "vlb/reference.hpp"

using namespace vlb;

TEST_CASE("grid lp norms") {
  MomentField zero(50, 1, 1);
  CHECK(grid_lp_norm(zero, 1.0, 1.0 / 50, 1) == 0.0);

  // Indicator of (1/3, 2/3) on 200 cells: 66 centers fall inside.
  MomentField ind(200, 1, 1);
  int inside = 0;
  for (int j = 0; j < 200; ++j) {
    const double x = (j + 0.5) / 200.0;
    if (x > 1.0 / 3.0 && x < 2.0 / 3.0) {
      ind.cell(j, 0)[0] = 1.0;
      ++inside;
    }
  }
  CHECK(inside == 66);
  CHECK(grid_lp_norm(ind, 1.0, 1.0 / 200, 1) ==
        doctest::Approx(66.0 / 200.0).epsilon(1e-15));

  MomentField spike(100, 1, 1);
  spike.cell(42, 0)[0] = 2.0;
  CHECK(grid_lp_norm(spike, std::numeric_limits<double>::infinity(), 0.01, 1) == 2.0);
  CHECK(grid_lp_norm(spike, 2.0, 0.01, 1) == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("discrete total variation") {
  MomentField constant(40, 1, 1);
  for (double& v : constant.data()) v = 3.0;
  CHECK(discrete_tv(constant, 1.0 / 40, 1) == 0.0);

  MomentField ind(200, 1, 1);
  for (int j = 0; j < 200; ++j) {
    const double x = (j + 0.5) / 200.0;
    ind.cell(j, 0)[0] = (x > 1.0 / 3.0 && x < 2.0 / 3.0) ? 1.0 : 0.0;
  }
  CHECK(discrete_tv(ind, 1.0 / 200, 1) == 2.0);
}

TEST_CASE("2D total variation against a brute-force recount") {
  const int n = 100;
  const double dx = 1.0 / n;
  const double theta = std::numbers::pi / 3.0;
  MomentField field(n, n, 1);
  for (int jy = 0; jy < n; ++jy)
    for (int jx = 0; jx < n; ++jx)
      field.cell(jx, jy)[0] =
          exact_oblique_burgers(0.3, (jx + 0.5) * dx, (jy + 0.5) * dx, theta);

  double brute = 0;
  for (int jy = 0; jy < n; ++jy)
    for (int jx = 0; jx < n; ++jx) {
      if (jx + 1 < n)
        brute += std::abs(field.cell(jx + 1, jy)[0] - field.cell(jx, jy)[0]);
      if (jy + 1 < n)
        brute += std::abs(field.cell(jx, jy + 1)[0] - field.cell(jx, jy)[0]);
    }
  brute *= dx;
  CHECK(discrete_tv(field, dx, 2) == doctest::Approx(brute).epsilon(1e-15));
}

TEST_CASE("distance to equilibrium vanishes after initialization and unit collision") {
  auto model = std::make_shared<const FluxModel>(FluxModel::burgers(1));
  EquilibriumSpec spec{Stencil::d1q2, 0.5, 0.0, 2.0, model};
  GridSpec g = GridSpec::make_1d(0, 1, 64, 2.0, 0.1);
  DistributionField f = initialize_field(spec, g, [](double x, double) {
    return StateVec::scalar(std::sin(2 * std::numbers::pi * x));
  });
  CHECK(equilibrium_distance(f, spec, g.dx, 1) <= 1e-15);

  // Perturb off equilibrium, collide at unit rate: back on the manifold.
  for (double& x : f.data(Velocity::right)) x += 0.01;
  for (double& x : f.data(Velocity::left)) x -= 0.01;
  CHECK(equilibrium_distance(f, spec, g.dx, 1) > 1e-3);
  relax_bgk(f, spec, 1.0);
  CHECK(equilibrium_distance(f, spec, g.dx, 1) <= 1e-14);
}

TEST_CASE("chebyshev recurrence matches the sine ratio form") {
  std::mt19937 rng(51);
  std::uniform_real_distribution<double> dist(0.05, std::numbers::pi - 0.05);
  for (int i = 0; i < 20; ++i) {
    const double theta = dist(rng);
    for (int n : {0, 1, 2, 5, 11, 20}) {
      const double expected = std::sin((n + 1) * theta) / std::sin(theta);
      CHECK(chebyshev_second_kind(n, std::cos(theta)) ==
            doctest::Approx(expected).epsilon(1e-11));
    }
  }
}

TEST_CASE("wall layer closed form: first step and long-time limit") {
  // One step: only the first cell is loaded, with (1+C)/2 of the trace.
  CHECK(boundary_layer_chebyshev(20, -0.5, 1.0, 1, 0) == 0.25);
  CHECK(boundary_layer_chebyshev(20, -0.5, 1.0, 1, 5) == 0.0);
  // Long time at the wall: the geometric-series limit (1+C)/(1-C) at j = 0.
  CHECK(std::abs(boundary_layer_chebyshev(20, -0.5, 1.0, 5000, 0) - 1.0 / 3.0) <=
        1e-10);
}

TEST_CASE("wall layer: closed form, matrix oracle, and simulation agree") {
  for (int cells : {5, 10, 20})
    for (double courant : {-0.25, -0.5, -0.75})
      for (long steps : {1L, 7L, 50L, 200L}) {
        std::vector<double> oracle = tridiagonal_oracle(cells, courant, 1.0, steps);
        std::vector<double> sim = run_wrong_trace_layer(cells, courant, 1.0, 1.0, steps);
        for (int j = 0; j < cells; ++j) {
          const double closed = boundary_layer_chebyshev(cells, courant, 1.0, steps, j);
          CHECK(std::abs(closed - oracle[j]) <= 1e-10);
          CHECK(std::abs(sim[j] - oracle[j]) <= 1e-10);
          CHECK(std::abs(sim[j] - closed) <= 1e-10);
        }
      }
}

TEST_CASE("matrix oracle: single step") {
  std::vector<double> u = tridiagonal_oracle(12, -0.5, 2.0, 1);
  CHECK(u[0] == 2.0 * 0.25);
  for (int j = 1; j < 12; ++j) CHECK(u[j] == 0.0);
}

TEST_CASE("long-time layer profile") {
  CHECK(boundary_layer_longtime(1.0, -0.5, 1.0, 0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // omega = 2/(1-C): confined to the first cell
  CHECK(boundary_layer_longtime(4.0 / 3.0, -0.5, 1.0, 0) ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(std::abs(boundary_layer_longtime(4.0 / 3.0, -0.5, 1.0, 1)) <= 1e-15);
  // beyond that rate the layer alternates in sign with ratio kappa < 0
  const double j1 = boundary_layer_longtime(5.0 / 3.0, -0.5, 1.0, 1);
  const double j2 = boundary_layer_longtime(5.0 / 3.0, -0.5, 1.0, 2);
  CHECK(j1 < 0);
  CHECK(j2 / j1 == doctest::Approx(stable_root_kappa1(5.0 / 3.0, -0.5)).epsilon(1e-13));
  CHECK(stable_root_kappa1(5.0 / 3.0, -0.5) < 0);
}

TEST_CASE("long-time layer at unit rate is the geometric wall profile") {
  for (double courant : {-0.1, -0.35, -0.5, -0.8})
    for (int j : {0, 1, 2, 5, 9}) {
      const double expected = std::pow((1 + courant) / (1 - courant), j + 1);
      CHECK(std::abs(boundary_layer_longtime(1.0, courant, 1.0, j) - expected) <=
            1e-13 * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("stable characteristic root") {
  CHECK(stable_root_kappa1(1.0, -0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(std::abs(stable_root_kappa1(1e-9, -0.5) - 1.0) <= 1e-8);
  // numeric quadratic roots: the unstable branch continues to 1 at unit z
  for (double omega : {0.3, 0.9, 1.4, 1.9})
    for (double courant : {-0.8, -0.5, -0.2}) {
      RootPair roots = characteristic_roots_at_one(omega, courant);
      CHECK(std::abs(roots.stable - stable_root_kappa1(omega, courant)) <= 1e-12);
      CHECK(std::abs(roots.unstable - 1.0) <= 1e-12);
    }
}

TEST_CASE("regression slope of log error against log dx") {
  std::vector<std::pair<double, double>> linear = {{0.1, 0.1}, {0.05, 0.05}};
  CHECK(convergence_rate(linear) == doctest::Approx(1.0).epsilon(1e-12));
  std::vector<std::pair<double, double>> half = {
      {0.1, std::sqrt(0.1)}, {0.05, std::sqrt(0.05)}, {0.025, std::sqrt(0.025)}};
  CHECK(convergence_rate(half) == doctest::Approx(0.5).epsilon(1e-12));
  std::vector<std::pair<double, double>> bad = {{0.1, 0.0}, {0.05, 0.1}};
  CHECK_THROWS_AS(convergence_rate(bad), std::invalid_argument);
}

TEST_CASE("identical runs trivially satisfy the contraction bound") {
  RunConfig cfg;
  cfg.case_name = "burgers_outflow";
  cfg.cells = 50;
  cfg.omega_s = cfg.omega_a = 1.2;
  cfg.record_history = true;
  cfg.diagnostics = false;
  RunResult res = run(cfg);
  REQUIRE(res.status == RunStatus::completed);
  ContractionReport report =
      check_l1_contraction(res.field_history, res.field_history, res.trace_history,
                           res.trace_history, res.grid.dx, 1);
  CHECK(report.holds);
  CHECK(report.max_excess <= 0.0);
}

TEST_CASE("unit-rate simulation matches the matrix oracle to near machine precision") {
  std::vector<double> sim = run_wrong_trace_layer(20, -0.5, 1.0, 1.0, 200);
  std::vector<double> oracle = tridiagonal_oracle(20, -0.5, 1.0, 200);
  for (int j = 0; j < 20; ++j) CHECK(std::abs(sim[j] - oracle[j]) <= 1e-12);
  // Neumann-series limit at the wall
  std::vector<double> late = tridiagonal_oracle(20, -0.5, 1.0, 5000);
  CHECK(std::abs(late[0] - 1.0 / 3.0) <= 1e-10);
}

TEST_CASE("l1 stability with shifted boundary data reduces to the datum term") {
  RunConfig cfg;
  cfg.case_name = "transport_outflow";
  cfg.cells = 100;
  cfg.omega_s = cfg.omega_a = 1.2;
  cfg.record_history = true;
  cfg.diagnostics = false;
  RunResult run_a = run(cfg);
  RunConfig shifted = cfg;
  shifted.wrong_trace_value = 0.9;
  RunResult run_b = run(shifted);
  REQUIRE(run_a.status == RunStatus::completed);
  REQUIRE(run_b.status == RunStatus::completed);

  ContractionReport report =
      check_l1_contraction(run_a.field_history, run_b.field_history,
                           run_a.trace_history, run_b.trace_history, run_a.grid.dx, 1);
  CHECK(report.holds);
  // identical initial data: the bound is the lambda-weighted boundary L1
  // discrepancy, here 0.1 per unit time
  const double expected =
      run_a.grid.lattice_velocity * run_a.grid.realized_final_time() * 0.1;
  CHECK(report.rhs == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("inter-step increments shrink linearly under refinement") {
  auto max_increment = [](int cells) {
    RunConfig cfg;
    cfg.case_name = "burgers_outflow";
    cfg.cells = cells;
    cfg.omega_s = cfg.omega_a = 1.2;
    RunResult res = run(cfg);
    REQUIRE(res.status == RunStatus::completed);
    double worst = 0;
    for (const auto& rec : res.diagnostics)
      worst = std::max(worst, rec.step_increment_l1);
    return worst;
  };
  const double ratio = max_increment(200) / max_increment(100);
  CHECK(ratio >= 0.3);
  CHECK(ratio <= 0.7);
}

TEST_CASE("layer predictors validate their parameter domains") {
  CHECK_THROWS_AS(stable_root_kappa1(2.0, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(stable_root_kappa1(1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(boundary_layer_longtime(1.0, 0.1, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(boundary_layer_chebyshev(10, -0.5, 1.0, 5, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(tridiagonal_oracle(10, 0.2, 1.0, 5), std::invalid_argument);
}
