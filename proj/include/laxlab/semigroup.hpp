#pragma once

#include <string>
#include <vector>

#include "laxlab/grid_space.hpp"

namespace laxlab {

/// Exact solution operators E(t) of U_t = U_xx on a periodic grid, realized
/// by the spectral multipliers exp(-kappa^2 t).
///
/// horizon is the T of the well-posedness interval [0, T]; bound is the
/// uniform constant K with ||E(t)|| <= K on [0, T]. The heat semigroup is a
/// contraction, so K = 1 by default.
struct HeatSemigroup {
  double horizon = 1.0;
  double bound = 1.0;
  Index grid_n = 0;

  HeatSemigroup(double horizon_T, Index grid_n, double bound_K = 1.0);
};

/// Spectral multiplier of E(t) at physical wavenumber kappa.
inline double heat_multiplier(double kappa, double t) { return std::exp(-kappa * kappa * t); }

/// E(t) u for any t >= 0 by the direct multiplier. For t > horizon this
/// agrees with extend_evolve to rounding.
GridFunctiond evolve(const HeatSemigroup& sg, const GridFunctiond& u, double t);

/// E(t) for t > T via E(t - floor(t/T) T) E(T)^floor(t/T).
GridFunctiond extend_evolve(const HeatSemigroup& sg, const GridFunctiond& u, double t);

/// Number of whole horizons contained in t, i.e. floor(t / T).
long long whole_horizons(double t, double horizon);

struct ProperlyPosedRow {
  double t = 0.0;
  std::size_t probe_id = 0;
  double ratio = 0.0;
};

struct ProperlyPosedReport {
  double max_ratio = 0.0;
  double bound_K = 1.0;
  bool pass = false;
  std::vector<ProperlyPosedRow> rows;
};

/// max over (t, u) of ||E(t)u|| / ||u||, compared against K (1 + 1e-9).
/// Every t must lie in [0, T]; every probe must be nonzero.
ProperlyPosedReport properly_posed_check(const HeatSemigroup& sg, const std::vector<double>& ts,
                                         const std::vector<GridFunctiond>& probes);

/// CSV "t,probe_id,ratio" with a header row.
void write_csv(std::ostream& os, const ProperlyPosedReport& report);

/// ||(E(t+dt)u - E(t)u)/dt - A E(t)u|| for each dt, with A the spectral
/// second derivative. u must be band-limited (modes |k| <= N/4).
std::vector<double> exact_solution_residual(const HeatSemigroup& sg, const GridFunctiond& u, double t,
                                            const std::vector<double>& dts);

}  // namespace laxlab
