#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "laxlab/grid_space.hpp"
#include "laxlab/refinement.hpp"
#include "laxlab/schemes.hpp"

namespace laxlab {

/// Emulated storage precision: values keep `significand_bits` fraction bits
/// (4..52; 52 is IEEE double itself) and are rounded to nearest, ties to
/// even, after every full time step.
struct PrecisionSpec {
  enum class RoundingMode { nearest_even };
  enum class ApplyPoint { per_step };

  int significand_bits = 52;
  RoundingMode rounding_mode = RoundingMode::nearest_even;
  ApplyPoint apply_point = ApplyPoint::per_step;

  explicit PrecisionSpec(int bits);
  /// Relative precision 2^-bits used to scale gap growth fits.
  double epsilon() const;
};

/// x with its fraction truncated to p.significand_bits bits, rounded to
/// nearest-even. A carry out of the fraction bumps the exponent as in IEEE
/// rounding. Throws DivergedValueError on non-finite x.
double round_to_precision(double x, const PrecisionSpec& p);

GridFunctiond round_to_precision(const GridFunctiond& u, const PrecisionSpec& p);

struct RoundoffSample {
  long long n = 0;
  double t = 0.0;
  double gap = 0.0;  // ||low precision - reference||
};

struct RoundoffReport {
  std::vector<RoundoffSample> samples;
  int significand_bits = 52;
  double dt = 0.0;
  double dx = 0.0;
  std::string scheme;
  bool diverged = false;
  bool unstable_scheme = false;  // scheme fails stability_check on [0, T]
  /// Fit gap(n) ~ C n^q eps over samples with positive gap; needs >= 8 points.
  std::optional<double> growth_exponent;
  std::optional<double> growth_constant;
};

/// n = 1, 2, 3, 4, 6, 8, 12, 16, ... (powers of two and their 3/2 multiples)
/// up to n_max, always ending at n_max.
std::vector<long long> roundoff_sample_steps(long long n_max);

/// Runs a working-precision reference and a per-step rounded trajectory from
/// the same u for round(T/dt) steps and records their sup-norm gap.
RoundoffReport roundoff_growth_experiment(const StencilSchemed& s, const GridFunctiond& u, double horizon,
                                          const PrecisionSpec& p);

struct HalvingRow {
  double dt = 0.0;
  double dx = 0.0;
  Index grid_n = 0;
  long long n_steps = 0;
  double final_gap = 0.0;
  bool diverged = false;
};

struct HalvingReport {
  std::vector<HalvingRow> rows;  // sorted by dt, coarsest first
  /// s in gap ~ dt^{-s}; absent when any gap is zero or fewer than 2 usable rows.
  std::optional<double> exponent;
  std::vector<RoundoffReport> runs;
};

/// Final round-off gap at T for each dt along the family's path, with u
/// resampled to each level's grid. Requires at least 4 dt values.
HalvingReport halving_sweep(const SchemeFamily& family, const GridFunctiond& u, double horizon,
                            const PrecisionSpec& p, std::vector<double> dts, int jobs = 1);

/// Header "n,t,gap,bits,dt,dx,scheme".
void write_csv(std::ostream& os, const RoundoffReport& report, bool header = true);

}  // namespace laxlab
