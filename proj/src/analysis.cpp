#include "laxlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "laxlab/csv.hpp"
#include "laxlab/parallel.hpp"

namespace laxlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

long long step_count(double horizon, double dt) {
  return static_cast<long long>(std::floor(horizon / dt * (1.0 + 1e-12)));
}

}  // namespace

double operator_norm(const StencilSchemed& s) { return s.coefficients().cwiseAbs().sum(); }

double operator_norm_witness_ratio(const StencilSchemed& s, Index grid_n) {
  if (s.period() > 0 && s.period() != grid_n) throw InvalidGridError("witness grid differs from stencil period");
  if (s.width() > grid_n) throw InvalidGridError("stencil wider than the witness grid");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(grid_n);
  for (Index m = 0; m < s.size(); ++m) {
    const double c = s.coefficients()[m];
    const Index j = ((Index(s.offsets()[std::size_t(m)]) % grid_n) + grid_n) % grid_n;
    w[j] = c > 0.0 ? 1.0 : (c < 0.0 ? -1.0 : 0.0);
  }
  const GridFunctiond witness(std::move(w));
  const double norm_w = sup_norm(witness);
  if (norm_w == 0.0) return 0.0;  // zero operator
  return sup_norm(apply(s, witness)) / norm_w;
}

std::vector<long long> stability_sample_steps(long long n_max) {
  std::vector<long long> steps;
  for (long long n = 1; n <= std::min<long long>(64, n_max); ++n) steps.push_back(n);
  for (long long n = 128; n < n_max; n *= 2) steps.push_back(n);
  if (n_max > 64) steps.push_back(n_max);
  return steps;
}

StabilityReport stability_check(const StencilSchemed& s, double horizon, double threshold) {
  if (!(horizon > 0.0)) throw DomainError("stability_check: T must be positive");
  if (s.dt() > horizon) throw DomainError("stability_check: dt exceeds T");

  StabilityReport report;
  report.horizon = horizon;
  report.dt = s.dt();
  report.threshold = threshold;
  const long long n_max = std::max<long long>(1, step_count(horizon, s.dt()));
  const auto steps = stability_sample_steps(n_max);
  report.subsampled = n_max > 64;

  auto record = [&](long long n, double norm) {
    report.norms.emplace_back(n, norm);
    report.bound_L = std::max(report.bound_L, norm);
    if (norm > threshold && !report.first_exceeding_n) report.first_exceeding_n = n;
  };

  try {
    std::optional<StencilSchemed> current;  // C^n for the last sampled n <= 64, then C^(2^j)
    long long current_n = 0;
    for (long long n : steps) {
      if (n <= 64) {
        current = current ? compose(*current, s) : s;
        current_n = n;
        record(n, operator_norm(*current));
      } else if (n == current_n * 2) {
        current = compose(*current, *current);
        current_n = n;
        record(n, operator_norm(*current));
      } else {
        record(n, operator_norm(power(s, n)));
      }
    }
  } catch (const DivergedOperatorError&) {
    report.diverged = true;
    const long long n = report.norms.empty() ? 1 : report.norms.back().first + 1;
    record(n, kInf);
  }
  report.stable = !report.diverged && report.bound_L <= threshold;
  return report;
}

std::complex<double> von_neumann_symbol(const StencilSchemed& s, Index k, Index grid_n) {
  if (2 * std::abs(k) > grid_n) throw DomainError("von_neumann_symbol: |k| must not exceed N/2");
  const double theta = kTwoPi<double> * double(k) / double(grid_n);
  std::complex<double> g = 0.0;
  for (Index m = 0; m < s.size(); ++m)
    g += s.coefficients()[m] * std::polar(1.0, double(s.offsets()[std::size_t(m)]) * theta);
  return g;
}

VonNeumannReport von_neumann_check(const StencilSchemed& s, Index grid_n, double growth_allowance) {
  VonNeumannReport report;
  report.max_abs_g = -1.0;
  for (Index k = -(grid_n / 2); k <= (grid_n + 1) / 2 - 1; ++k) {
    const double a = std::abs(von_neumann_symbol(s, k, grid_n));
    if (a > report.max_abs_g) {
      report.max_abs_g = a;
      report.argmax_k = k;
    }
  }
  report.pass = report.max_abs_g <= 1.0 + growth_allowance * s.dt() + 1e-12;
  return report;
}

std::vector<ConsistencyRow> consistency_check(const StencilSchemed& s, const HeatSemigroup& sg,
                                              const GridFunctiond& u, const std::vector<double>& ts) {
  if (u.size() != sg.grid_n) throw InvalidGridError("consistency_check: probe grid differs from semigroup grid");
  if (!is_band_limited(u)) throw InvalidProbeError("consistency_check: probe is not band-limited");
  std::vector<ConsistencyRow> rows;
  rows.reserve(ts.size());
  for (double t : ts) {
    const GridFunctiond now = evolve(sg, u, t);
    const GridFunctiond exact_next = evolve(sg, u, t + s.dt());
    rows.push_back({t, sup_norm(apply(s, now) - exact_next)});
  }
  return rows;
}

std::optional<double> loglog_slope(std::span<const double> x, std::span<const double> y, std::size_t min_points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i])) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < std::max<std::size_t>(min_points, 2)) return std::nullopt;
  const double n = double(count);
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return (n * sxy - sx * sy) / denom;
}

namespace {

struct LevelResult {
  ConvergenceRow row;
  std::optional<GridFunctiond> endpoint;  // empty when diverged
};

LevelResult run_level(const SchemeFamily& family, const HeatSemigroup& sg, const GridFunctiond& u, double horizon,
                      double dt, const ConvergenceOptions& options) {
  const SweepCell cell = family.cell(dt);
  LevelResult out;
  ConvergenceRow& row = out.row;
  row.dt = dt;
  row.dx = cell.dx;
  row.ratio = cell.scheme.ratio();
  row.grid_n = cell.grid_n;
  row.n_steps = std::max<long long>(1, std::llround(horizon / dt));

  const StabilityReport stability = stability_check(cell.scheme, std::max(horizon, dt), options.stability_threshold);
  row.bound_L = stability.bound_L;
  row.max_abs_g = von_neumann_check(cell.scheme, cell.grid_n).max_abs_g;

  const GridFunctiond start = resample(u, cell.grid_n);
  GridFunctiond v = start;
  for (long long i = 0; i < row.n_steps; ++i) {
    v = apply(cell.scheme, v);
    if ((i & 31) == 31 && v.diverged()) break;
  }
  if (v.diverged()) {
    row.diverged = true;
    row.error_final = kInf;
    return out;
  }
  const HeatSemigroup level_sg(sg.horizon, cell.grid_n, sg.bound);
  const GridFunctiond exact = evolve(level_sg, start, double(row.n_steps) * dt);
  row.error_final = sup_norm(v - exact);
  out.endpoint = std::move(v);
  return out;
}

}  // namespace

ConvergenceReport convergence_experiment(const SchemeFamily& family, const HeatSemigroup& sg,
                                         const GridFunctiond& u, double horizon, std::vector<double> dts,
                                         const ConvergenceOptions& options) {
  if (dts.empty()) throw DomainError("convergence_experiment: no dt values");
  if (!(horizon > 0.0)) throw DomainError("convergence_experiment: T must be positive");
  std::sort(dts.begin(), dts.end(), std::greater<>());
  dts.erase(std::unique(dts.begin(), dts.end()), dts.end());

  std::vector<LevelResult> levels = parallel_map(dts.size(), options.jobs, [&](std::size_t i) {
    return run_level(family, sg, u, horizon, dts[i], options);
  });

  ConvergenceReport report;
  report.path = family.path;
  report.tolerance = options.relative_tolerance * sup_norm(u);
  for (const auto& l : levels) report.rows.push_back(l.row);

  bool all_finite = true;
  bool monotone = true;
  std::vector<double> dxs, errs;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    all_finite = all_finite && !row.diverged;
    if (i > 0 && !(row.error_final <= report.rows[i - 1].error_final * (1.0 + options.jitter))) monotone = false;
    if (!row.diverged) {
      dxs.push_back(row.dx);
      errs.push_back(row.error_final);
    }
  }
  report.observed_order = loglog_slope(dxs, errs, 3);
  report.converged = all_finite && monotone && report.rows.back().error_final < report.tolerance;

  // Diameters on the finest grid; point m is the exact solution U(T).
  const std::size_t m = levels.size();
  std::vector<double> tails(m, kInf);
  if (all_finite) {
    Index finest = 0;
    for (const auto& row : report.rows) finest = std::max(finest, row.grid_n);
    std::vector<GridFunctiond> points;
    points.reserve(m + 1);
    for (const auto& l : levels) points.push_back(resample(*l.endpoint, finest));
    const HeatSemigroup fine_sg(sg.horizon, finest, sg.bound);
    points.push_back(evolve(fine_sg, resample(u, finest), horizon));

    Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(Index(m + 1), Index(m + 1));
    for (std::size_t i = 0; i <= m; ++i)
      for (std::size_t j = i + 1; j <= m; ++j)
        dist(Index(i), Index(j)) = dist(Index(j), Index(i)) = sup_norm(points[i] - points[j]);
    for (std::size_t i = 0; i < m; ++i) {
      const Index first = Index(i);
      const Index count = Index(m + 1) - first;
      tails[i] = dist.bottomRightCorner(count, count).maxCoeff();
    }
  }
  for (std::size_t i = 0; i < m; ++i) report.rows[i].tail_diameter = tails[i];
  report.compactness_diameter = tails.front();
  return report;
}

void write_csv(std::ostream& os, const ConvergenceReport& report) {
  csv::write_row(os, {"dt", "dx", "r", "n_steps", "bound_L", "max_abs_g", "error_final", "converged"});
  for (const auto& row : report.rows) {
    csv::write_row(os, {csv::format(row.dt), csv::format(row.dx), csv::format(row.ratio), std::to_string(row.n_steps),
                        csv::format(row.bound_L), csv::format(row.max_abs_g), csv::format(row.error_final),
                        report.converged ? "true" : "false"});
  }
}

}  // namespace laxlab
