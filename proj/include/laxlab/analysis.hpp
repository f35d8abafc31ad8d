#pragma once

#include <complex>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "laxlab/grid_space.hpp"
#include "laxlab/refinement.hpp"
#include "laxlab/schemes.hpp"
#include "laxlab/semigroup.hpp"

namespace laxlab {

// ---------------------------------------------------------------------------
// Operator norms

/// Sup-norm operator norm of a stencil on a periodic grid: sum of |c_m|.
double operator_norm(const StencilSchemed& s);

/// ||C w|| / ||w|| for the sign witness w_{o_m mod N} = sign(c_m), which
/// attains the operator norm at grid point 0. Independent check of
/// operator_norm; requires the stencil to fit on the grid.
double operator_norm_witness_ratio(const StencilSchemed& s, Index grid_n);

// ---------------------------------------------------------------------------
// Stability

struct StabilityReport {
  double horizon = 0.0;
  double dt = 0.0;
  std::vector<std::pair<long long, double>> norms;  // (n, ||C^n||)
  double bound_L = 0.0;                             // +inf once a power diverged
  double threshold = 10.0;
  bool stable = false;
  bool subsampled = false;  // n past 64 sampled at powers of two plus the endpoint
  bool diverged = false;
  std::optional<long long> first_exceeding_n;  // first sampled n with ||C^n|| > threshold
};

/// Step counts examined for n_max steps: 1..64, then powers of two, then n_max.
std::vector<long long> stability_sample_steps(long long n_max);

/// max ||C^n|| over sampled n with n dt <= T; stable iff that max <= threshold.
StabilityReport stability_check(const StencilSchemed& s, double horizon, double threshold = 10.0);

// ---------------------------------------------------------------------------
// von Neumann analysis

/// g(k) = sum_m c_m exp(i o_m theta_k) with grid phase theta_k = 2 pi k / N
/// (equal to k dx on the default 2 pi domain). Requires |k| <= N/2.
std::complex<double> von_neumann_symbol(const StencilSchemed& s, Index k, Index grid_n);

struct VonNeumannReport {
  double max_abs_g = 0.0;
  Index argmax_k = 0;
  bool pass = false;
};

/// Scans every representable k. Passes iff max |g| <= 1 + growth_allowance * dt,
/// with 1e-12 slack for rounding.
VonNeumannReport von_neumann_check(const StencilSchemed& s, Index grid_n, double growth_allowance = 0.0);

// ---------------------------------------------------------------------------
// Consistency

struct ConsistencyRow {
  double t = 0.0;
  double residual = 0.0;
};

/// ||C E(t)u - E(t + dt)u|| for each t, with the exact spectral semigroup.
std::vector<ConsistencyRow> consistency_check(const StencilSchemed& s, const HeatSemigroup& sg,
                                              const GridFunctiond& u, const std::vector<double>& ts);

// ---------------------------------------------------------------------------
// Convergence

/// One refinement level of a convergence sweep.
struct ConvergenceRow {
  double dt = 0.0;
  double dx = 0.0;
  double ratio = 0.0;  // dt / dx^2
  Index grid_n = 0;
  long long n_steps = 0;
  double bound_L = 0.0;
  double max_abs_g = 0.0;
  double error_final = 0.0;  // +inf if the trajectory diverged
  bool diverged = false;
  /// Diameter of {endpoints at this and all finer levels} u {U(T)}.
  double tail_diameter = 0.0;
};

struct ConvergenceReport {
  RefinementPath path = RefinementPath::fixed_ratio(0.5);
  std::vector<ConvergenceRow> rows;  // sorted by dt, coarsest first
  std::optional<double> observed_order;
  bool converged = false;
  double tolerance = 0.0;  // absolute bound on the finest error
  double compactness_diameter = 0.0;
};

struct ConvergenceOptions {
  double relative_tolerance = 1e-3;  // final error < relative_tolerance * ||u||
  double jitter = 0.10;              // allowed relative increase between levels
  double stability_threshold = 10.0;
  int jobs = 1;
};

/// Runs n = round(T/dt) steps of the family's scheme for each dt, starting
/// from u resampled onto that level's grid, and compares against the exact
/// solution at n dt. u must be band-limited on the coarsest grid.
ConvergenceReport convergence_experiment(const SchemeFamily& family, const HeatSemigroup& sg,
                                         const GridFunctiond& u, double horizon, std::vector<double> dts,
                                         const ConvergenceOptions& options = {});

/// Header "dt,dx,r,n_steps,bound_L,max_abs_g,error_final,converged".
void write_csv(std::ostream& os, const ConvergenceReport& report);

/// Least-squares slope of log(y) against log(x). Pairs with a nonpositive or
/// non-finite coordinate are skipped; nullopt when fewer than min_points remain.
std::optional<double> loglog_slope(std::span<const double> x, std::span<const double> y,
                                   std::size_t min_points = 2);

}  // namespace laxlab
