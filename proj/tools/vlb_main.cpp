#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "vlb/analysis.hpp"
#include "vlb/cases.hpp"
#include "vlb/config.hpp"
#include "vlb/monotonicity.hpp"

namespace {

void print_kv(const std::string& key, const std::string& value) {
  std::printf("%-24s %s\n", key.c_str(), value.c_str());
}

int command_run(const std::string& config_path) {
  vlb::KeyValueConfig cfg = vlb::KeyValueConfig::from_file(config_path);
  vlb::RunConfig rc = vlb::RunConfig::from_config(cfg);
  cfg.finish();
  if (rc.case_name.empty()) throw std::runtime_error("config: missing 'case' key");

  vlb::RunResult result = vlb::run(rc);
  for (const auto& [k, v] : result.metadata) print_kv(k, v);
  for (const std::string& path : vlb::write_run_outputs(result, rc))
    std::printf("wrote %s\n", path.c_str());
  if (result.status != vlb::RunStatus::completed) {
    std::fprintf(stderr, "run %s at step %ld\n", vlb::to_string(result.status),
                 result.abort_step);
    return 2;
  }
  return 0;
}

int command_check(const std::string& config_path) {
  vlb::KeyValueConfig cfg = vlb::KeyValueConfig::from_file(config_path);
  vlb::RunConfig rc = vlb::RunConfig::from_config(cfg);
  cfg.finish();
  if (rc.case_name.empty()) throw std::runtime_error("config: missing 'case' key");

  vlb::ResolvedCase resolved = vlb::resolve_case(rc);
  std::printf("case: %s\n", resolved.name.c_str());
  std::printf("stencil: %s, lambda = %s, omega_s = %s, omega_a = %s, m = %s\n",
              vlb::to_string(resolved.eq.stencil),
              vlb::format_full_precision(resolved.eq.lattice_velocity).c_str(),
              vlb::format_full_precision(resolved.relax.omega_symmetric).c_str(),
              vlb::format_full_precision(resolved.relax.omega_antisymmetric).c_str(),
              vlb::format_full_precision(resolved.data_bound).c_str());
  vlb::MonotonicityReport report = vlb::check_monotone(
      resolved.eq.stencil, resolved.relax.omega_symmetric,
      resolved.relax.omega_antisymmetric, resolved.eq.coefficient_x,
      resolved.eq.coefficient_y, resolved.eq.lattice_velocity, *resolved.model,
      resolved.data_bound);
  std::fputs(report.to_text().c_str(), stdout);

  if (resolved.model->is_scalar() && !report.trivial_courant) {
    vlb::MaxOmegaResult best = vlb::max_bgk_omega(
        resolved.eq.stencil, resolved.eq.coefficient_x, resolved.eq.coefficient_y,
        resolved.eq.lattice_velocity, *resolved.model, resolved.data_bound);
    if (best.admissible)
      std::printf("max_bgk_omega: %s\n", vlb::format_full_precision(best.omega).c_str());
    else
      std::printf("max_bgk_omega: none (no admissible rate)\n");
  }
  return report.verdict == vlb::MonotonicityVerdict::not_monotone ? 1 : 0;
}

int command_study(const std::string& config_path) {
  vlb::KeyValueConfig cfg = vlb::KeyValueConfig::from_file(config_path);
  vlb::RunConfig rc = vlb::RunConfig::from_config(cfg);
  std::vector<int> resolutions = cfg.get_int_list("resolutions", {});
  const std::string target_name = cfg.get_string("target", "self");
  const int refine = cfg.get_int("godunov_refine", 4);
  cfg.finish();
  if (rc.case_name.empty()) throw std::runtime_error("config: missing 'case' key");
  if (resolutions.empty())
    throw std::runtime_error("config: missing 'resolutions' key");

  vlb::StudyResult study = vlb::convergence_study(
      rc, resolutions, vlb::error_target_from_string(target_name), refine);
  std::printf("cells,dx,l1_error\n");
  for (const auto& p : study.points)
    std::printf("%d,%s,%s\n", p.cells, vlb::format_full_precision(p.dx).c_str(),
                vlb::format_full_precision(p.error).c_str());
  std::printf("slope %s\n", vlb::format_full_precision(study.slope).c_str());
  return 0;
}

int command_layer(int cells, double courant, double omega, double trace, long steps) {
  std::vector<double> sim =
      vlb::run_wrong_trace_layer(cells, courant, omega, trace, steps);
  const bool unit_rate = omega == 1.0;
  std::vector<double> oracle =
      unit_rate ? vlb::tridiagonal_oracle(cells, courant, trace, steps)
                : std::vector<double>();
  std::printf("j,simulation,longtime%s\n",
              unit_rate ? ",chebyshev,tridiagonal_oracle" : "");
  for (int j = 0; j < cells; ++j) {
    std::printf("%d,%s,%s", j, vlb::format_full_precision(sim[j]).c_str(),
                vlb::format_full_precision(
                    vlb::boundary_layer_longtime(omega, courant, trace, j))
                    .c_str());
    if (unit_rate)
      std::printf(",%s,%s",
                  vlb::format_full_precision(
                      vlb::boundary_layer_chebyshev(cells, courant, trace, steps, j))
                      .c_str(),
                  vlb::format_full_precision(oracle[j]).c_str());
    std::printf("\n");
  }
  std::printf("kappa_stable %s\n",
              vlb::format_full_precision(vlb::stable_root_kappa1(omega, courant)).c_str());
  return 0;
}

int command_cases() {
  for (const auto& c : vlb::registry())
    std::printf("%-20s J=%-5d lambda=%-8s omega=%-6s T=%-6s %s\n", c.name.c_str(),
                c.default_cells, vlb::format_full_precision(c.default_lambda).c_str(),
                vlb::format_full_precision(c.default_omega).c_str(),
                vlb::format_full_precision(c.default_final_time).c_str(),
                c.description.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vectorial lattice Boltzmann benchmark driver"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "advance a configured case and write outputs");
  run_cmd->add_option("config", config_path, "flat key = value config file")->required();

  auto* check_cmd =
      app.add_subcommand("check", "print the monotonicity report of a configuration");
  check_cmd->add_option("config", config_path, "flat key = value config file")->required();

  auto* study_cmd =
      app.add_subcommand("study", "grid refinement study (keys: resolutions, target)");
  study_cmd->add_option("config", config_path, "flat key = value config file")->required();

  int layer_cells = 20;
  double layer_courant = -0.5, layer_omega = 1.0, layer_trace = 1.0;
  long layer_steps = 200;
  auto* layer_cmd = app.add_subcommand(
      "layer", "wrong-trace boundary layer: simulation vs closed-form predictors");
  layer_cmd->add_option("--cells", layer_cells, "number of cells");
  layer_cmd->add_option("--courant", layer_courant, "Courant number in (-1, 0)");
  layer_cmd->add_option("--omega", layer_omega, "relaxation rate in (0, 2)");
  layer_cmd->add_option("--trace", layer_trace, "enforced trace value");
  layer_cmd->add_option("--steps", layer_steps, "number of steps");

  auto* cases_cmd = app.add_subcommand("cases", "list the built-in cases");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return command_run(config_path);
    if (check_cmd->parsed()) return command_check(config_path);
    if (study_cmd->parsed()) return command_study(config_path);
    if (layer_cmd->parsed())
      return command_layer(layer_cells, layer_courant, layer_omega, layer_trace,
                           layer_steps);
    if (cases_cmd->parsed()) return command_cases();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
