#include "vlb/cases.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "vlb/errors.hpp"
#include "vlb/reference.hpp"

namespace vlb {

RunConfig RunConfig::from_config(KeyValueConfig& cfg) {
  RunConfig rc;
  rc.case_name = cfg.get_string("case", "");
  rc.cells = cfg.get_int("cells", 0);
  rc.lattice_velocity = cfg.get_double("lambda", 0);
  const double omega = cfg.get_double("omega", 0);
  rc.omega_s = cfg.get_double("omega_s", omega);
  rc.omega_a = cfg.get_double("omega_a", omega);
  rc.final_time = cfg.get_double("final_time", -1);
  rc.steps = cfg.get_long("steps", -1);
  rc.outflow_bc = cfg.get_string("outflow_bc", "");
  rc.wrong_trace_value = cfg.get_double("wrong_trace_value", 1.0);
  rc.boundary_quadrature = cfg.get_int("quadrature", 0);
  rc.init_quadrature = cfg.get_int("init_quadrature", 0);
  rc.safe_mode = cfg.get_bool("safe_mode", false);
  rc.euler_variant = cfg.get_string("euler_variant", "a");
  rc.collision = cfg.get_string("collision", "");
  rc.initial = cfg.get_string("initial", "");
  rc.snapshot_every = cfg.get_long("snapshot_every", 0);
  rc.diagnostics = cfg.get_bool("diagnostics", true);
  rc.entropy_diagnostics = cfg.has("entropy_diagnostics")
                               ? (cfg.get_bool("entropy_diagnostics", false) ? 1 : 0)
                               : -1;
  rc.record_history = cfg.get_bool("record_history", false);
  rc.output_dir = cfg.get_string("output_dir", "");
  rc.output_prefix = cfg.get_string("output_prefix", "");
  return rc;
}

const std::vector<CaseDefinition>& registry() {
  static const std::vector<CaseDefinition> cases = {
      {"transport_outflow",
       "1D transport at V = -1 with an indicator initial profile leaving through "
       "the west outflow",
       1, Stencil::d1q2, 200, 2.0, 1.0, 0.5, true},
      {"burgers_outflow",
       "1D Burgers with a negative indicator initial profile and a west outflow",
       1, Stencil::d1q2, 200, 2.0, 1.0, 0.2, true},
      {"nonconvex_sine",
       "1D cubic-flux problem driven by a sine datum on the west inflow",
       1, Stencil::d1q2, 200, 10.0 / 7.0, 1.0, 4.0, true},
      {"burgers2d_oblique",
       "2D Burgers oblique shock built up entirely from the boundary data",
       1, Stencil::d2q4, 100, 3.0, 1.0, 0.5, true},
      {"euler_mach10",
       "2D Euler double Mach reflection driven by composite boundary conditions",
       4, Stencil::d2q4, 100, 30.0, 1.35, 0.2, false},
  };
  return cases;
}

const CaseDefinition& find_case(const std::string& name) {
  for (const auto& c : registry())
    if (c.name == name) return c;
  throw std::invalid_argument("unknown case: " + name);
}

namespace {

constexpr double oblique_theta = std::numbers::pi / 3.0;

SideBc outflow_side(const RunConfig& cfg, int quadrature) {
  const std::string& kind = cfg.outflow_bc.empty() ? "wrong_trace" : cfg.outflow_bc;
  if (kind == "wrong_trace") {
    const double value = cfg.wrong_trace_value;
    return DirichletBc{[value](double, double) { return StateVec::scalar(value); },
                       quadrature};
  }
  if (kind == "extrap1") return ExtrapolationBc{1};
  if (kind == "extrap2") return ExtrapolationBc{2};
  throw std::invalid_argument("unknown outflow_bc: " + kind);
}

DirichletBc constant_scalar(double value, int quadrature) {
  return DirichletBc{[value](double, double) { return StateVec::scalar(value); },
                     quadrature};
}

DirichletBc constant_state(const StateVec& value, int quadrature) {
  return DirichletBc{[value](double, double) { return value; }, quadrature};
}

}  // namespace

ResolvedCase resolve_case(const RunConfig& config) {
  const CaseDefinition& def = find_case(config.case_name);
  const int cells = config.cells > 0 ? config.cells : def.default_cells;
  const double lambda =
      config.lattice_velocity > 0 ? config.lattice_velocity : def.default_lambda;
  const double final_time =
      config.final_time >= 0 ? config.final_time : def.default_final_time;
  const int quadrature = config.boundary_quadrature > 0 ? config.boundary_quadrature : 1;

  ResolvedCase rc;
  rc.name = def.name;
  rc.relax.omega_symmetric = config.omega_s > 0 ? config.omega_s : def.default_omega;
  rc.relax.omega_antisymmetric =
      config.omega_a > 0 ? config.omega_a : rc.relax.omega_symmetric;
  rc.sampling.subcell = config.init_quadrature > 0 ? config.init_quadrature : 1;
  rc.safe_mode = config.safe_mode;
  rc.entropy_diagnostics = config.entropy_diagnostics >= 0
                               ? config.entropy_diagnostics > 0
                               : def.entropy_diagnostics_default;

  if (!config.initial.empty() && !(def.name == "transport_outflow" && config.initial == "sin"))
    throw std::invalid_argument("initial variant '" + config.initial +
                                "' is not available for case " + def.name);
  if (!config.outflow_bc.empty() && def.name != "transport_outflow" &&
      def.name != "burgers_outflow")
    throw std::invalid_argument("outflow_bc does not apply to case " + def.name);
  if (config.euler_variant != "a" && config.euler_variant != "b")
    throw std::invalid_argument("euler_variant must be 'a' or 'b'");

  if (def.name == "transport_outflow") {
    rc.model = std::make_shared<const FluxModel>(FluxModel::transport(-1.0));
    rc.grid = GridSpec::make_1d(0, 1, cells, lambda, final_time);
    rc.eq = {Stencil::d1q2, 0.5, 0.0, lambda, rc.model};
    const bool smooth = config.initial == "sin";
    if (smooth) {
      rc.initial = [](double x, double) {
        return StateVec::scalar(std::sin(2 * std::numbers::pi * x));
      };
      rc.boundary[Side::west] =
          config.outflow_bc.empty() ? SideBc{ExtrapolationBc{1}}
                                    : outflow_side(config, quadrature);
      rc.boundary[Side::east] = DirichletBc{
          [](double t, double) {
            return StateVec::scalar(std::sin(2 * std::numbers::pi * (1.0 + t)));
          },
          quadrature};
      rc.exact = [](double t, double x, double) {
        return std::sin(2 * std::numbers::pi * (x + t));
      };
      rc.data_bound = std::max(
          1.0, config.outflow_bc == "wrong_trace" ? std::abs(config.wrong_trace_value)
                                                  : 0.0);
    } else {
      rc.initial = [](double x, double) {
        return StateVec::scalar(x > 1.0 / 3.0 && x < 2.0 / 3.0 ? 1.0 : 0.0);
      };
      rc.boundary[Side::west] = outflow_side(config, quadrature);
      rc.boundary[Side::east] = constant_scalar(0.0, quadrature);
      auto initial_fn = [](double x) {
        return x > 1.0 / 3.0 && x < 2.0 / 3.0 ? 1.0 : 0.0;
      };
      rc.exact = [initial_fn](double t, double x, double) {
        return exact_transport(
            initial_fn, [](double) { return 0.0; }, [](double) { return 0.0; }, -1.0,
            t, x);
      };
      rc.data_bound = std::max(
          1.0, rc.boundary[Side::west].index() == 0 ? std::abs(config.wrong_trace_value)
                                                    : 0.0);
    }
  } else if (def.name == "burgers_outflow") {
    rc.model = std::make_shared<const FluxModel>(FluxModel::burgers(1));
    rc.grid = GridSpec::make_1d(0, 1, cells, lambda, final_time);
    rc.eq = {Stencil::d1q2, 0.5, 0.0, lambda, rc.model};
    rc.initial = [](double x, double) {
      return StateVec::scalar(x > 0.2 && x < 0.5 ? -1.0 : 0.0);
    };
    rc.boundary[Side::west] = outflow_side(config, quadrature);
    rc.boundary[Side::east] = constant_scalar(0.0, quadrature);
    rc.data_bound = std::max(
        1.0, rc.boundary[Side::west].index() == 0 ? std::abs(config.wrong_trace_value)
                                                  : 0.0);
  } else if (def.name == "nonconvex_sine") {
    rc.model = std::make_shared<const FluxModel>(FluxModel::cubic());
    rc.grid = GridSpec::make_1d(0, 1, cells, lambda, final_time);
    rc.eq = {Stencil::d1q2, 0.5, 0.0, lambda, rc.model};
    rc.initial = [](double, double) { return StateVec::scalar(0.0); };
    rc.boundary[Side::west] = DirichletBc{
        [](double t, double) { return StateVec::scalar(std::sin(6.0 * t)); },
        quadrature};
    rc.boundary[Side::east] = constant_scalar(0.0, quadrature);
    rc.data_bound = 1.0;
  } else if (def.name == "burgers2d_oblique") {
    rc.model = std::make_shared<const FluxModel>(FluxModel::burgers(2));
    rc.grid = GridSpec::make_2d(0, 1, 0, 1, cells, lambda, final_time);
    rc.eq = {Stencil::d2q4, 0.25, 0.25, lambda, rc.model};
    rc.initial = [](double, double) { return StateVec::scalar(0.0); };
    rc.boundary[Side::west] = DirichletBc{
        [](double t, double y) {
          return StateVec::scalar(exact_oblique_burgers(t, 0.0, y, oblique_theta));
        },
        quadrature};
    rc.boundary[Side::east] = DirichletBc{
        [](double t, double y) {
          return StateVec::scalar(exact_oblique_burgers(t, 1.0, y, oblique_theta));
        },
        quadrature};
    rc.boundary[Side::south] = DirichletBc{
        [](double t, double x) {
          return StateVec::scalar(exact_oblique_burgers(t, x, 0.0, oblique_theta));
        },
        quadrature};
    rc.boundary[Side::north] = DirichletBc{
        [](double t, double x) {
          return StateVec::scalar(exact_oblique_burgers(t, x, 1.0, oblique_theta));
        },
        quadrature};
    rc.exact = [](double t, double x, double y) {
      return exact_oblique_burgers(t, x, y, oblique_theta);
    };
    rc.data_bound = 1.0;
  } else if (def.name == "euler_mach10") {
    rc.model = std::make_shared<const FluxModel>(FluxModel::euler2d(1.4));
    rc.grid = GridSpec::make_2d(0, 4, 0, 1, 4 * cells, lambda, final_time);
    if (config.euler_variant == "a")
      rc.eq = {Stencil::d2q4, 0.25, 0.25, lambda, rc.model};
    else
      rc.eq = {Stencil::d2q5, 0.125, 0.125, lambda, rc.model};
    const StateVec left = mach10_left_state();
    const StateVec right = mach10_right_state();
    rc.initial = [left, right](double x, double y) {
      return y - std::sqrt(3.0) * (x - 1.0 / 6.0) >= 0 ? left : right;
    };
    rc.boundary[Side::west] = constant_state(left, quadrature);
    rc.boundary[Side::east] = constant_state(right, quadrature);
    rc.boundary[Side::north] = DirichletBc{
        [](double t, double x) { return mach10_north_trace(t, x); }, quadrature};
    CompositeBc south;
    south.pieces.push_back({0.0, 1.0 / 6.0, constant_state(left, quadrature)});
    south.pieces.push_back({1.0 / 6.0, 4.0, ReflectiveWallBc{}});
    rc.boundary[Side::south] = south;
    rc.data_bound = 0.0;
  } else {
    throw std::logic_error("case missing from resolver: " + def.name);
  }

  if (config.steps >= 0) rc.grid.override_steps(config.steps);

  const std::string collision =
      !config.collision.empty() ? config.collision
                                : (def.name == "euler_mach10" ? "guarded" : "bgk");
  if (collision == "bgk")
    rc.collision = CollisionKind::bgk;
  else if (collision == "trt")
    rc.collision = CollisionKind::trt;
  else if (collision == "guarded")
    rc.collision = CollisionKind::guarded;
  else
    throw std::invalid_argument("unknown collision: " + collision);
  if (rc.collision == CollisionKind::guarded && !rc.model->is_euler())
    throw std::invalid_argument("guarded collision applies to the Euler case only");
  if (rc.collision == CollisionKind::bgk &&
      rc.relax.omega_symmetric != rc.relax.omega_antisymmetric)
    throw std::invalid_argument("bgk collision requires omega_s == omega_a");

  rc.eq.validate();
  rc.relax.validate();
  return rc;
}

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::completed:
      return "completed";
    case RunStatus::aborted_nan:
      return "aborted_nan";
    case RunStatus::aborted_inadmissible:
      return "aborted_inadmissible";
  }
  return "?";
}

namespace {

void moment_range(const MomentField& moments, StateVec& min_u, StateVec& max_u) {
  const int m = moments.components();
  min_u = StateVec(m);
  max_u = StateVec(m);
  std::span<const double> data = moments.data();
  for (int c = 0; c < m; ++c) {
    double lo = data[c], hi = data[c];
    for (std::size_t j = 1; j < data.size() / m; ++j) {
      lo = std::min(lo, data[j * m + c]);
      hi = std::max(hi, data[j * m + c]);
    }
    min_u[c] = lo;
    max_u[c] = hi;
  }
}

DiagnosticsRecord make_record(long step, const DistributionField& field,
                              const MomentField& moments, const EquilibriumSpec& eq,
                              const GridSpec& grid, const DistributionField* previous) {
  DiagnosticsRecord rec;
  rec.step = step;
  rec.time = step * grid.dt;
  const int d = grid.dimension;
  rec.l1 = grid_lp_norm(moments, 1.0, grid.dx, d);
  rec.l2 = grid_lp_norm(moments, 2.0, grid.dx, d);
  rec.linf = grid_lp_norm(moments, std::numeric_limits<double>::infinity(), grid.dx, d);
  rec.tv_moments = discrete_tv(moments, grid.dx, d);
  rec.tv_distributions = discrete_tv(field, grid.dx, d);
  rec.equilibrium_distance = equilibrium_distance(field, eq, grid.dx, d);
  rec.step_increment_l1 =
      previous ? field_l1_distance(field, *previous, grid.dx, d) : 0.0;
  moment_range(moments, rec.min_u, rec.max_u);
  return rec;
}

std::array<double, 5> entropy_kappas(double m) {
  return {-m, -0.5 * m, 0.0, 0.5 * m, m};
}

}  // namespace

RunResult run(const RunConfig& config) { return run(resolve_case(config), config); }

RunResult run(const ResolvedCase& rc, const RunConfig& config) {
  RunResult res;
  res.grid = rc.grid;
  res.components = rc.model->components();

  if (rc.model->is_scalar()) {
    MonotonicityReport report = check_monotone(
        rc.eq.stencil, rc.relax.omega_symmetric, rc.relax.omega_antisymmetric,
        rc.eq.coefficient_x, rc.eq.coefficient_y, rc.eq.lattice_velocity, *rc.model,
        rc.data_bound);
    res.monotonicity_verdict = to_string(report.verdict);
  } else {
    res.monotonicity_verdict = to_string(MonotonicityVerdict::uncertified);
  }

  DistributionField field = initialize_field(rc.eq, rc.grid, rc.initial, rc.sampling);
  DistributionField streamed = field;
  DistributionField collided = field;  // used by the guarded path
  const long total_steps = rc.grid.steps;
  const GhostFillOptions ghost_options{rc.safe_mode, rc.data_bound};
  const bool entropy =
      config.diagnostics && rc.entropy_diagnostics && rc.model->is_scalar();
  const auto kappas = entropy_kappas(rc.data_bound);

  DistributionField previous = field;
  DistributionField pre_collision = field;

  if (config.record_history) res.field_history.push_back(field);

  long n = 0;
  try {
    for (n = 0; n < total_steps; ++n) {
      MomentField moments = compute_moments(field);
      if (!field.interior_finite()) {
        res.status = RunStatus::aborted_nan;
        res.abort_step = n;
        break;
      }
      DiagnosticsRecord rec;
      if (config.diagnostics)
        rec = make_record(n, field, moments, rc.eq, rc.grid, n > 0 ? &previous : nullptr);
      if (config.snapshot_every > 0 && n % config.snapshot_every == 0)
        res.snapshots.emplace_back(n, moments);
      if (config.diagnostics) previous = field;
      if (entropy) pre_collision = field;

      DistributionField* post = &field;
      switch (rc.collision) {
        case CollisionKind::bgk:
        case CollisionKind::trt:
          relax_trt(field, rc.eq, rc.relax);
          break;
        case CollisionKind::guarded: {
          GuardReport guard =
              relax_guarded(field, rc.eq, rc.relax.omega_symmetric, collided);
          res.guard_fallbacks += guard.fallback_count;
          post = &collided;
          break;
        }
      }
      if (entropy) {
        rec.entropy_violations =
            entropy_violation_count(pre_collision, *post, rc.eq, kappas);
      }
      if (config.diagnostics) res.diagnostics.push_back(rec);

      AppliedTraces traces;
      GhostFillStats stats =
          fill_ghosts(*post, rc.boundary, rc.eq, moments, n, rc.grid, ghost_options,
                      config.record_history ? &traces : nullptr);
      res.ghost_traces_out_of_range += stats.out_of_range_traces;
      if (config.record_history) res.trace_history.push_back(std::move(traces));

      stream(*post, streamed);
      std::swap(field, streamed);
      if (config.record_history) res.field_history.push_back(field);
    }
  } catch (const AdmissibilityError&) {
    res.status = RunStatus::aborted_inadmissible;
    res.abort_step = n;
  }

  if (res.status == RunStatus::completed && !field.interior_finite()) {
    res.status = RunStatus::aborted_nan;
    res.abort_step = total_steps;
  }

  MomentField final_moments = compute_moments(field);
  if (config.diagnostics && res.status == RunStatus::completed) {
    res.diagnostics.push_back(make_record(total_steps, field, final_moments, rc.eq,
                                          rc.grid, total_steps > 0 ? &previous : nullptr));
  }
  res.final_field = std::move(field);
  res.final_moments = std::move(final_moments);

  auto add = [&](const std::string& k, const std::string& v) {
    res.metadata.emplace_back(k, v);
  };
  add("case", rc.name);
  add("stencil", to_string(rc.eq.stencil));
  add("components", std::to_string(res.components));
  add("cells_x", std::to_string(rc.grid.cells_x));
  add("cells_y", std::to_string(rc.grid.cells_y));
  add("dx", format_full_precision(rc.grid.dx));
  add("lambda", format_full_precision(rc.grid.lattice_velocity));
  add("dt", format_full_precision(rc.grid.dt));
  add("omega_s", format_full_precision(rc.relax.omega_symmetric));
  add("omega_a", format_full_precision(rc.relax.omega_antisymmetric));
  add("a_x", format_full_precision(rc.eq.coefficient_x));
  add("a_y", format_full_precision(rc.eq.coefficient_y));
  add("requested_final_time", format_full_precision(rc.grid.final_time));
  add("steps", std::to_string(total_steps));
  add("realized_final_time", format_full_precision(rc.grid.realized_final_time()));
  add("collision", rc.collision == CollisionKind::guarded
                       ? "guarded"
                       : (rc.collision == CollisionKind::trt ? "trt" : "bgk"));
  if (rc.name == "transport_outflow" || rc.name == "burgers_outflow") {
    add("outflow_bc", config.outflow_bc.empty() ? "wrong_trace" : config.outflow_bc);
    add("wrong_trace_value", format_full_precision(config.wrong_trace_value));
  }
  if (rc.name == "euler_mach10") add("euler_variant", config.euler_variant);
  if (!config.initial.empty()) add("initial", config.initial);
  add("boundary_quadrature",
      std::to_string(config.boundary_quadrature > 0 ? config.boundary_quadrature : 1));
  add("init_quadrature", std::to_string(rc.sampling.subcell));
  add("safe_mode", rc.safe_mode ? "true" : "false");
  add("data_bound", format_full_precision(rc.data_bound));
  add("monotonicity", res.monotonicity_verdict);
  add("status", to_string(res.status));
  if (res.abort_step >= 0) add("abort_step", std::to_string(res.abort_step));
  add("guard_fallbacks", std::to_string(res.guard_fallbacks));
  add("ghost_traces_out_of_range", std::to_string(res.ghost_traces_out_of_range));
  return res;
}

std::vector<double> run_wrong_trace_layer(int cells, double courant, double omega,
                                          double trace, long steps) {
  if (!(courant > -1 && courant < 0))
    throw std::invalid_argument("run_wrong_trace_layer: need -1 < C < 0");
  ResolvedCase rc;
  rc.name = "wrong_trace_layer";
  rc.model = std::make_shared<const FluxModel>(FluxModel::transport(courant));
  rc.grid = GridSpec::make_1d(0, 1, cells, 1.0, 0.0);
  rc.grid.override_steps(steps);
  rc.eq = {Stencil::d1q2, 0.5, 0.0, 1.0, rc.model};
  rc.initial = [](double, double) { return StateVec::scalar(0.0); };
  rc.boundary[Side::west] = DirichletBc{
      [trace](double, double) { return StateVec::scalar(trace); }, 1};
  rc.boundary[Side::east] = DirichletBc{
      [](double, double) { return StateVec::scalar(0.0); }, 1};
  rc.data_bound = std::max(1.0, std::abs(trace));
  rc.relax = {omega, omega};
  rc.collision = CollisionKind::bgk;
  rc.entropy_diagnostics = false;

  RunConfig cfg;
  cfg.diagnostics = false;
  RunResult res = run(rc, cfg);
  if (res.status != RunStatus::completed)
    throw std::runtime_error("run_wrong_trace_layer: run aborted");
  std::vector<double> profile(cells);
  for (int j = 0; j < cells; ++j) profile[j] = res.final_moments->state(j, 0)[0];
  return profile;
}

ErrorTarget error_target_from_string(const std::string& name) {
  if (name == "exact") return ErrorTarget::exact;
  if (name == "godunov") return ErrorTarget::godunov;
  if (name == "self") return ErrorTarget::self;
  throw std::invalid_argument("unknown study target: " + name);
}

MomentField restrict_by_averaging(const MomentField& fine, int factor) {
  if (factor < 1) throw std::invalid_argument("restriction factor must be >= 1");
  if (fine.cells_x() % factor != 0 ||
      (fine.cells_y() > 1 && fine.cells_y() % factor != 0))
    throw std::invalid_argument("fine grid is not a multiple of the coarse one");
  const int nx = fine.cells_x() / factor;
  const int ny = fine.cells_y() > 1 ? fine.cells_y() / factor : 1;
  const int m = fine.components();
  const int fy = fine.cells_y() > 1 ? factor : 1;
  MomentField coarse(nx, ny, m);
  for (int jy = 0; jy < ny; ++jy)
    for (int jx = 0; jx < nx; ++jx) {
      StateVec acc(m);
      for (int ky = 0; ky < fy; ++ky)
        for (int kx = 0; kx < factor; ++kx)
          acc += fine.state(jx * factor + kx, jy * fy + ky);
      coarse.set_state(jx, jy, (1.0 / (factor * fy)) * acc);
    }
  return coarse;
}

namespace {

double moments_l1_distance(const MomentField& a, const MomentField& b, double dx,
                           int dimension) {
  double acc = 0;
  std::span<const double> pa = a.data();
  std::span<const double> pb = b.data();
  for (std::size_t i = 0; i < pa.size(); ++i) acc += std::abs(pa[i] - pb[i]);
  return (dimension == 2 ? dx * dx : dx) * acc;
}

double exact_l1_error(const RunResult& res, const ResolvedCase& rc) {
  const GridSpec& g = res.grid;
  const double t = g.realized_final_time();
  double acc = 0;
  for (int jy = 0; jy < g.cells_y; ++jy)
    for (int jx = 0; jx < g.cells_x; ++jx)
      acc += std::abs(res.final_moments->state(jx, jy)[0] -
                      rc.exact(t, g.cell_center_x(jx), g.cell_center_y(jy)));
  return (g.dimension == 2 ? g.dx * g.dx : g.dx) * acc;
}

// Ghost-value provider mirroring the kinetic run's side treatment on the
// Godunov grid.
std::function<double(long, const std::vector<double>&)> godunov_side(
    const ResolvedCase& rc, Side side, const GridSpec& grid) {
  const SideBc& bc = rc.boundary[side];
  if (const auto* d = std::get_if<DirichletBc>(&bc)) {
    BoundaryDatum datum = d->datum;
    const int quadrature = d->quadrature;
    return [datum, side, grid, quadrature](long step, const std::vector<double>&) {
      return boundary_datum_average(datum, side, 0, step, grid, quadrature)[0];
    };
  }
  if (const auto* e = std::get_if<ExtrapolationBc>(&bc)) {
    const int order = e->order;
    const bool west = side == Side::west;
    return [order, west](long, const std::vector<double>& cells) {
      const double u0 = west ? cells.front() : cells.back();
      if (order == 1 || cells.size() < 2) return u0;
      const double u1 = west ? cells[1] : cells[cells.size() - 2];
      return 2.0 * u0 - u1;
    };
  }
  throw std::invalid_argument("godunov reference supports dirichlet and extrapolation sides");
}

double godunov_reference_error(const RunConfig& base, int cells, int refine,
                               const RunResult& coarse) {
  RunConfig fine_cfg = base;
  fine_cfg.cells = cells * refine;
  ResolvedCase fine_rc = resolve_case(fine_cfg);
  // Align the time grids: dt_f = dt/refine and the same realized final time.
  fine_rc.grid.override_steps(coarse.grid.steps * refine);

  const GridSpec& fg = fine_rc.grid;
  std::vector<double> cells_f(fg.cells_x);
  for (int j = 0; j < fg.cells_x; ++j)
    cells_f[j] = sample_cell(fine_rc.initial, fg, j, 0, fine_rc.sampling)[0];

  GodunovBoundary boundary{godunov_side(fine_rc, Side::west, fg),
                           godunov_side(fine_rc, Side::east, fg)};
  cells_f = godunov_run(*fine_rc.model, std::move(cells_f), fg.dx, fg.dt, fg.steps,
                        boundary);

  MomentField fine_moments(fg.cells_x, 1, 1);
  for (int j = 0; j < fg.cells_x; ++j) fine_moments.cell(j, 0)[0] = cells_f[j];
  MomentField restricted = restrict_by_averaging(fine_moments, refine);
  return moments_l1_distance(*coarse.final_moments, restricted, coarse.grid.dx, 1);
}

}  // namespace

StudyResult convergence_study(const RunConfig& base, std::span<const int> resolutions,
                              ErrorTarget target, int godunov_refine) {
  if (resolutions.size() < 2)
    throw std::invalid_argument("convergence_study: need at least two resolutions");
  StudyResult out;

  auto run_at = [&](int cells) {
    RunConfig cfg = base;
    cfg.cells = cells;
    cfg.diagnostics = false;
    cfg.record_history = false;
    cfg.snapshot_every = 0;
    ResolvedCase rc = resolve_case(cfg);
    RunResult res = run(rc, cfg);
    if (res.status != RunStatus::completed)
      throw std::runtime_error("convergence_study: run aborted at " +
                               std::to_string(res.abort_step) + " steps (J = " +
                               std::to_string(cells) + ")");
    return std::make_pair(std::move(rc), std::move(res));
  };

  if (target == ErrorTarget::self) {
    std::vector<std::pair<ResolvedCase, RunResult>> runs;
    for (int cells : resolutions) runs.push_back(run_at(cells));
    for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
      const int coarse = resolutions[i], fine = resolutions[i + 1];
      if (fine % coarse != 0)
        throw std::invalid_argument("convergence_study: resolutions are not nested");
      MomentField restricted =
          restrict_by_averaging(*runs[i + 1].second.final_moments, fine / coarse);
      const double err =
          moments_l1_distance(*runs[i].second.final_moments, restricted,
                              runs[i].second.grid.dx, runs[i].second.grid.dimension);
      out.points.push_back({coarse, runs[i].second.grid.dx, err});
    }
  } else {
    for (int cells : resolutions) {
      auto [rc, res] = run_at(cells);
      double err = 0;
      if (target == ErrorTarget::exact) {
        if (!rc.exact)
          throw std::invalid_argument("convergence_study: case has no exact solution");
        err = exact_l1_error(res, rc);
      } else {
        if (!rc.model->is_scalar() || rc.grid.dimension != 1)
          throw std::invalid_argument(
              "convergence_study: godunov target needs a scalar 1D case");
        err = godunov_reference_error(base, cells, godunov_refine, res);
      }
      out.points.push_back({cells, res.grid.dx, err});
    }
  }

  std::vector<std::pair<double, double>> pts;
  for (const auto& p : out.points)
    if (p.error > 0) pts.emplace_back(p.dx, p.error);
  out.slope = pts.size() >= 2 ? convergence_rate(pts)
                              : std::numeric_limits<double>::quiet_NaN();
  return out;
}

std::string format_full_precision(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

void write_metadata(std::ofstream& out, const Metadata& metadata) {
  for (const auto& [k, v] : metadata) out << "# " << k << " = " << v << "\n";
}

}  // namespace

void write_snapshot_csv(const std::string& path, const MomentField& moments,
                        const GridSpec& grid, const Metadata& metadata) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_metadata(out, metadata);
  out << "x";
  if (grid.dimension == 2) out << ",y";
  for (int c = 0; c < moments.components(); ++c) out << ",u_" << c;
  out << "\n";
  for (int jy = 0; jy < moments.cells_y(); ++jy)
    for (int jx = 0; jx < moments.cells_x(); ++jx) {
      out << format_full_precision(grid.cell_center_x(jx));
      if (grid.dimension == 2)
        out << "," << format_full_precision(grid.cell_center_y(jy));
      for (int c = 0; c < moments.components(); ++c)
        out << "," << format_full_precision(moments.cell(jx, jy)[c]);
      out << "\n";
    }
}

void write_diagnostics_csv(const std::string& path,
                           std::span<const DiagnosticsRecord> records, int components,
                           const Metadata& metadata) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_metadata(out, metadata);
  out << "step,time,l1,l2,linf,tv_moments,tv_distributions,eq_distance,"
         "step_increment_l1";
  for (int c = 0; c < components; ++c) out << ",min_u_" << c;
  for (int c = 0; c < components; ++c) out << ",max_u_" << c;
  out << ",entropy_violations\n";
  for (const auto& r : records) {
    out << r.step << "," << format_full_precision(r.time) << ","
        << format_full_precision(r.l1) << "," << format_full_precision(r.l2) << ","
        << format_full_precision(r.linf) << "," << format_full_precision(r.tv_moments)
        << "," << format_full_precision(r.tv_distributions) << ","
        << format_full_precision(r.equilibrium_distance) << ","
        << format_full_precision(r.step_increment_l1);
    for (int c = 0; c < components; ++c)
      out << "," << format_full_precision(r.min_u[c]);
    for (int c = 0; c < components; ++c)
      out << "," << format_full_precision(r.max_u[c]);
    out << "," << r.entropy_violations << "\n";
  }
}

std::vector<std::string> write_run_outputs(const RunResult& result,
                                           const RunConfig& config) {
  std::string dir = config.output_dir;
  if (const char* env = std::getenv("VLB_OUTPUT_DIR"); env && *env) dir = env;
  if (dir.empty()) dir = ".";
  std::filesystem::create_directories(dir);
  const std::string prefix =
      config.output_prefix.empty() ? config.case_name : config.output_prefix;
  const std::string base = dir + "/" + prefix;

  std::vector<std::string> written;
  const std::string final_path = base + "_final.csv";
  write_snapshot_csv(final_path, *result.final_moments, result.grid, result.metadata);
  written.push_back(final_path);
  for (const auto& [step, snapshot] : result.snapshots) {
    const std::string path = base + "_step" + std::to_string(step) + ".csv";
    write_snapshot_csv(path, snapshot, result.grid, result.metadata);
    written.push_back(path);
  }
  if (!result.diagnostics.empty()) {
    const std::string path = base + "_diagnostics.csv";
    write_diagnostics_csv(path, result.diagnostics, result.components, result.metadata);
    written.push_back(path);
  }
  return written;
}

}  // namespace vlb
