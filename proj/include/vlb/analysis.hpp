#pragma once

#include <span>
#include <utility>
#include <vector>

#include "vlb/boundary.hpp"
#include "vlb/equilibrium.hpp"
#include "vlb/field.hpp"

namespace vlb {

/// Per-step quantitative diagnostics mirroring the stability estimates the
/// scheme is certified by: grid norms, discrete total variation, distance
/// to equilibrium, inter-step l1 increments, range of the moment, and the
/// kinetic entropy dissipation violation count.
struct DiagnosticsRecord {
  long step = 0;
  double time = 0;
  double l1 = 0, l2 = 0, linf = 0;
  double tv_moments = 0;
  double tv_distributions = 0;
  double equilibrium_distance = 0;
  double step_increment_l1 = 0;  // ||f^{n} - f^{n-1}||_1 (0 at n = 0)
  StateVec min_u, max_u;         // per component
  long entropy_violations = 0;
};

/// (dx^d sum |u_j|^p)^(1/p); max norm for infinite p. Vector components
/// contribute through their l1 modulus. Deterministic summation order.
double grid_lp_norm(const MomentField& moments, double p, double dx, int dimension);

/// Discrete total variation: sum of absolute one-sided differences over
/// interior neighbor pairs; unweighted in 1D, weighted by dx in 2D.
double discrete_tv(const MomentField& moments, double dx, int dimension);
double discrete_tv(const DistributionField& field, double dx, int dimension);

/// delta = dx^d sum_j sum_i |f_ij - f_i^eq(u_j)|.
double equilibrium_distance(const DistributionField& field, const EquilibriumSpec& spec,
                            double dx, int dimension);

/// dx^d-weighted l1 distance between two fields of identical shape.
double field_l1_distance(const DistributionField& a, const DistributionField& b,
                         double dx, int dimension);

/// Chebyshev polynomial of the second kind by the three-term recurrence.
double chebyshev_second_kind(int n, double x);

/// Closed-form wall layer of the two-velocity scheme at unit relaxation
/// rate with a constant trace enforced against zero data: value at cell j
/// after `step` iterations on J cells with Courant number C in (-1, 0).
double boundary_layer_chebyshev(int cells, double courant, double trace, long step,
                                int j);

/// Long-time layer profile for relaxation rates in (0, 2):
///   trace (2-w)(1+C) / (2 - w(1+C)) * kappa^j,  kappa = (2-w+wC)/(2-w-wC),
/// degenerating to trace (1+C)/2 on the first cell when w = 2/(1-C).
double boundary_layer_longtime(double omega, double courant, double trace, int j);

/// kappa = (2-w+wC)/(2-w-wC), the modulus-below-one characteristic root at
/// unit time amplification.
double stable_root_kappa1(double omega, double courant);

struct RootPair {
  double stable = 0;    // |kappa| <= 1
  double unstable = 0;  // |kappa| >= 1
};

/// Both roots of (2-w-wC)/2 k^2 - (2-w) k + (2-w+wC)/2 = 0, solved
/// numerically and classified by modulus.
RootPair characteristic_roots_at_one(double omega, double courant);

/// Brute-force layer reference: iterate u <- A u + trace (1+C)/2 e_1 with A
/// the tridiagonal matrix ((1+C)/2, 0, (1-C)/2); returns u after `steps`.
std::vector<double> tridiagonal_oracle(int cells, double courant, double trace,
                                       long steps);

/// Least-squares slope of log(error) against log(dx).
double convergence_rate(std::span<const std::pair<double, double>> points);

/// Traces applied per step: [step][side][strip cell].
using TraceHistory = std::vector<AppliedTraces>;

struct ContractionReport {
  bool holds = true;
  long first_violation = -1;
  double max_excess = 0;  // worst lhs - rhs over steps
  double rhs = 0;
};

/// Check ||g^n - f^n||_1 <= ||g^0 - f^0||_1 + sum over steps and sides of
/// the dx^d-weighted datum discrepancies (the discrete form of the
/// lambda-weighted boundary L1 terms), at every step, up to `tol`.
ContractionReport check_l1_contraction(std::span<const DistributionField> run_a,
                                       std::span<const DistributionField> run_b,
                                       const TraceHistory& traces_a,
                                       const TraceHistory& traces_b, double dx,
                                       int dimension, double tol = 1e-10);

struct EquicontinuityReport {
  bool holds = true;
  double constant = 0;               // C_EC assembled from the run's data
  double max_increment_over_dx = 0;  // max_n ||f^{n+1} - f^n||_1 / dx
};

/// Assemble the equicontinuity constant from the recorded data (initial
/// total variation, initial datum/boundary discrepancy, time variation of
/// the applied traces) and check every inter-step increment against it.
EquicontinuityReport check_equicontinuity(std::span<const DistributionField> fields,
                                          const TraceHistory& traces, double dx,
                                          int dimension);

/// Data-assembled bound on the discrete total variation of the
/// distributions for 1D runs with data magnitude m.
double tv_estimate_constant_1d(const MomentField& initial_moments,
                               const TraceHistory& traces, double m, double lambda,
                               double final_time);

/// Count (cell, kappa) pairs where the collision increased the summed
/// kinetic entropies s_i(f) = |f_i - f_i^eq(kappa)| by more than `tol`.
long entropy_violation_count(const DistributionField& before,
                             const DistributionField& after,
                             const EquilibriumSpec& spec, std::span<const double> kappas,
                             double tol = 1e-13);

}  // namespace vlb
