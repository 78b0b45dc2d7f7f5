#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vlb/analysis.hpp"
#include "vlb/boundary.hpp"
#include "vlb/collision.hpp"
#include "vlb/config.hpp"
#include "vlb/equilibrium.hpp"
#include "vlb/grid.hpp"
#include "vlb/monotonicity.hpp"

namespace vlb {

enum class CollisionKind { bgk, trt, guarded };

/// Resolved run parameters: case name plus overrides; zero/negative/empty
/// entries mean "use the case default".
struct RunConfig {
  std::string case_name;
  int cells = 0;
  double lattice_velocity = 0;
  double omega_s = 0;
  double omega_a = 0;
  double final_time = -1;
  long steps = -1;  // overrides the step count derived from final_time
  std::string outflow_bc;  // wrong_trace | extrap1 | extrap2 (1D outflow cases)
  double wrong_trace_value = 1.0;
  int boundary_quadrature = 0;
  int init_quadrature = 0;
  bool safe_mode = false;
  std::string euler_variant = "a";  // a = d2q4 weights 1/4, b = d2q5 weights 1/8
  std::string collision;            // bgk | trt | guarded
  std::string initial;              // "" = case default, "sin" = smooth variant
  long snapshot_every = 0;
  bool diagnostics = true;
  int entropy_diagnostics = -1;  // -1 = case default
  bool record_history = false;
  std::string output_dir;
  std::string output_prefix;

  /// Consume the run keys of a flat config (study keys are left alone).
  static RunConfig from_config(KeyValueConfig& cfg);
};

struct CaseDefinition {
  std::string name;
  std::string description;
  int components = 1;
  Stencil stencil = Stencil::d1q2;
  int default_cells = 0;
  double default_lambda = 0;
  double default_omega = 1.0;
  double default_final_time = 0;
  bool entropy_diagnostics_default = true;
};

/// The five built-in benchmark cases with their quoted default parameters.
const std::vector<CaseDefinition>& registry();
const CaseDefinition& find_case(const std::string& name);

/// Everything a run needs, with all overrides applied.
struct ResolvedCase {
  std::string name;
  std::shared_ptr<const FluxModel> model;
  GridSpec grid;
  EquilibriumSpec eq;
  BoundarySpec boundary;
  SpatialFn initial;
  SamplingSpec sampling;
  double data_bound = 0;  // m; 0 when no scalar bound applies (Euler)
  RelaxationParams relax;
  CollisionKind collision = CollisionKind::bgk;
  bool safe_mode = false;
  bool entropy_diagnostics = false;
  std::function<double(double t, double x, double y)> exact;  // null when unknown
};

ResolvedCase resolve_case(const RunConfig& config);

enum class RunStatus { completed, aborted_nan, aborted_inadmissible };
const char* to_string(RunStatus s);

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct RunResult {
  RunStatus status = RunStatus::completed;
  long abort_step = -1;
  GridSpec grid;
  int components = 1;
  std::optional<DistributionField> final_field;
  std::optional<MomentField> final_moments;
  std::vector<DiagnosticsRecord> diagnostics;
  std::vector<std::pair<long, MomentField>> snapshots;
  std::vector<DistributionField> field_history;  // f^0..f^N when recorded
  TraceHistory trace_history;                    // applied traces per step
  Metadata metadata;
  std::string monotonicity_verdict;
  long guard_fallbacks = 0;
  long ghost_traces_out_of_range = 0;
};

/// Drive N steps of moments -> collision -> ghost fill -> transport,
/// collecting diagnostics and outputs. NaN/Inf or a lost admissible state
/// abort with the step index in the result.
RunResult run(const RunConfig& config);
RunResult run(const ResolvedCase& rc, const RunConfig& config);

/// Wrong-trace boundary-layer run of the two-velocity transport scheme:
/// zero initial datum, constant trace on the west outflow, zero east
/// datum; returns the moment profile after `steps`.
std::vector<double> run_wrong_trace_layer(int cells, double courant, double omega,
                                          double trace, long steps);

enum class ErrorTarget { exact, godunov, self };
ErrorTarget error_target_from_string(const std::string& name);

struct StudyPoint {
  int cells = 0;
  double dx = 0;
  double error = 0;
};

struct StudyResult {
  std::vector<StudyPoint> points;
  double slope = 0;
};

/// l1 refinement study against the exact solution, an aligned refined
/// Godunov reference (scalar 1D), or the cell-average restriction of the
/// next finer run (resolutions must then double).
StudyResult convergence_study(const RunConfig& base, std::span<const int> resolutions,
                              ErrorTarget target, int godunov_refine = 4);

/// Coarsen by integer block averaging (factor^d cells per coarse cell).
MomentField restrict_by_averaging(const MomentField& fine, int factor);

// ---- file outputs ----------------------------------------------------

std::string format_full_precision(double x);
void write_snapshot_csv(const std::string& path, const MomentField& moments,
                        const GridSpec& grid, const Metadata& metadata);
void write_diagnostics_csv(const std::string& path,
                           std::span<const DiagnosticsRecord> records, int components,
                           const Metadata& metadata);

/// Write final snapshot, optional per-cadence snapshots, and diagnostics
/// under the configured output directory (environment variable
/// VLB_OUTPUT_DIR overrides it). Returns the written paths.
std::vector<std::string> write_run_outputs(const RunResult& result,
                                           const RunConfig& config);

}  // namespace vlb
