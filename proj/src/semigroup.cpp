#include "laxlab/semigroup.hpp"

#include <algorithm>
#include <cmath>

#include "laxlab/csv.hpp"

namespace laxlab {

namespace {

void require_grid(const HeatSemigroup& sg, const GridFunctiond& u) {
  if (u.size() != sg.grid_n)
    throw InvalidGridError("semigroup built for N=" + std::to_string(sg.grid_n) + ", got N=" +
                           std::to_string(u.size()));
}

}  // namespace

HeatSemigroup::HeatSemigroup(double horizon_T, Index n, double bound_K)
    : horizon(horizon_T), bound(bound_K), grid_n(n) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("semigroup horizon T must be positive");
  if (!(bound >= 1.0)) throw DomainError("semigroup bound K must be >= 1");
  if (grid_n < 2) throw InvalidGridError("semigroup grid needs N >= 2");
}

GridFunctiond evolve(const HeatSemigroup& sg, const GridFunctiond& u, double t) {
  require_grid(sg, u);
  if (!(t >= 0.0)) throw DomainError("evolve: t must be nonnegative");
  if (t == 0.0) return u;
  return apply_spectral_multiplier(u, [t](double kappa) { return heat_multiplier(kappa, t); });
}

long long whole_horizons(double t, double horizon) {
  return static_cast<long long>(std::floor(t / horizon));
}

GridFunctiond extend_evolve(const HeatSemigroup& sg, const GridFunctiond& u, double t) {
  require_grid(sg, u);
  if (!(t > sg.horizon)) throw DomainError("extend_evolve: t must exceed the horizon T; use evolve");
  const long long m = whole_horizons(t, sg.horizon);
  // t - m T lies in [0, T); clamp tiny negative remainders from rounding.
  const double remainder = std::max(0.0, t - double(m) * sg.horizon);
  GridFunctiond v = u;
  for (long long i = 0; i < m; ++i) v = evolve(sg, v, sg.horizon);
  return evolve(sg, v, remainder);
}

ProperlyPosedReport properly_posed_check(const HeatSemigroup& sg, const std::vector<double>& ts,
                                         const std::vector<GridFunctiond>& probes) {
  if (probes.empty()) throw InvalidProbeError("properly_posed_check: no probes");
  ProperlyPosedReport report;
  report.bound_K = sg.bound;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const double norm_u = sup_norm(probes[p]);
    if (norm_u == 0.0) throw InvalidProbeError("properly_posed_check: probe " + std::to_string(p) + " is zero");
    for (double t : ts) {
      if (t < 0.0 || t > sg.horizon) throw DomainError("properly_posed_check: t outside [0, T]");
      const double ratio = sup_norm(evolve(sg, probes[p], t)) / norm_u;
      report.rows.push_back({t, p, ratio});
      report.max_ratio = std::max(report.max_ratio, ratio);
    }
  }
  report.pass = report.max_ratio <= sg.bound * (1.0 + 1e-9);
  return report;
}

void write_csv(std::ostream& os, const ProperlyPosedReport& report) {
  csv::write_row(os, {"t", "probe_id", "ratio"});
  for (const auto& row : report.rows)
    csv::write_row(os, {csv::format(row.t), std::to_string(row.probe_id), csv::format(row.ratio)});
}

std::vector<double> exact_solution_residual(const HeatSemigroup& sg, const GridFunctiond& u, double t,
                                            const std::vector<double>& dts) {
  require_grid(sg, u);
  if (!is_band_limited(u)) throw InvalidProbeError("exact_solution_residual: probe is not band-limited");
  std::vector<double> out;
  out.reserve(dts.size());
  for (double dt : dts) {
    if (!(dt > 0.0)) throw DomainError("exact_solution_residual: dt must be positive");
    // Per mode: e^{-k^2 t} ((e^{-k^2 dt} - 1)/dt + k^2), with expm1 to keep
    // the difference quotient accurate for small dt.
    const GridFunctiond r = apply_spectral_multiplier(u, [t, dt](double kappa) {
      const double k2 = kappa * kappa;
      return heat_multiplier(kappa, t) * (std::expm1(-k2 * dt) / dt + k2);
    });
    out.push_back(sup_norm(r));
  }
  return out;
}

}  // namespace laxlab
