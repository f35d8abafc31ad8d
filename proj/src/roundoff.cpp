#include "laxlab/roundoff.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

#include "laxlab/analysis.hpp"
#include "laxlab/csv.hpp"
#include "laxlab/parallel.hpp"

namespace laxlab {

PrecisionSpec::PrecisionSpec(int bits) : significand_bits(bits) {
  if (bits < 4 || bits > 52) throw DomainError("significand bits must lie in [4, 52]");
}

double PrecisionSpec::epsilon() const { return std::ldexp(1.0, -significand_bits); }

double round_to_precision(double x, const PrecisionSpec& p) {
  if (!std::isfinite(x)) throw DivergedValueError("round_to_precision: non-finite input");
  const int drop = 52 - p.significand_bits;
  if (drop == 0) return x;
  auto bits = std::bit_cast<std::uint64_t>(x);
  const std::uint64_t half = std::uint64_t{1} << (drop - 1);
  const std::uint64_t lsb = (bits >> drop) & 1u;
  // Adding half - 1 + lsb rounds the magnitude to nearest with ties to even;
  // a carry propagates into the exponent field.
  bits += half - 1 + lsb;
  bits &= ~((std::uint64_t{1} << drop) - 1);
  return std::bit_cast<double>(bits);
}

GridFunctiond round_to_precision(const GridFunctiond& u, const PrecisionSpec& p) {
  return GridFunctiond(u.values().unaryExpr([&p](double v) { return round_to_precision(v, p); }), u.domain_length());
}

std::vector<long long> roundoff_sample_steps(long long n_max) {
  std::vector<long long> steps;
  for (long long n = 1; n < n_max; n *= 2) {
    steps.push_back(n);
    if (n >= 2 && n + n / 2 < n_max) steps.push_back(n + n / 2);
  }
  steps.push_back(n_max);
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  return steps;
}

RoundoffReport roundoff_growth_experiment(const StencilSchemed& s, const GridFunctiond& u, double horizon,
                                          const PrecisionSpec& p) {
  if (!(horizon > 0.0)) throw DomainError("roundoff_growth_experiment: T must be positive");
  RoundoffReport report;
  report.significand_bits = p.significand_bits;
  report.dt = s.dt();
  report.dx = u.dx();
  report.scheme = s.name();
  report.unstable_scheme = !stability_check(s, std::max(horizon, s.dt())).stable;

  const long long n_max = std::max<long long>(1, std::llround(horizon / s.dt()));
  const auto steps = roundoff_sample_steps(n_max);
  GridFunctiond reference = u;
  GridFunctiond reduced = u;
  std::size_t next = 0;
  for (long long n = 1; n <= n_max; ++n) {
    reference = apply(s, reference);
    reduced = apply(s, reduced);
    if (reference.diverged() || reduced.diverged()) {
      report.diverged = true;
      break;
    }
    reduced = round_to_precision(reduced, p);
    if (next < steps.size() && steps[next] == n) {
      const double gap = sup_norm(reduced - reference);
      if (!std::isfinite(gap)) {
        report.diverged = true;
        break;
      }
      report.samples.push_back({n, double(n) * s.dt(), gap});
      ++next;
    }
  }

  std::vector<double> ns, gaps;
  for (const auto& smp : report.samples) {
    ns.push_back(double(smp.n));
    gaps.push_back(smp.gap);
  }
  report.growth_exponent = loglog_slope(ns, gaps, 8);
  if (report.growth_exponent) {
    // Intercept of the same fit: mean(log gap) - q mean(log n).
    double sx = 0, sy = 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      if (gaps[i] > 0.0) {
        sx += std::log(ns[i]);
        sy += std::log(gaps[i]);
        ++count;
      }
    }
    const double intercept = (sy - *report.growth_exponent * sx) / double(count);
    report.growth_constant = std::exp(intercept) / p.epsilon();
  }
  return report;
}

HalvingReport halving_sweep(const SchemeFamily& family, const GridFunctiond& u, double horizon,
                            const PrecisionSpec& p, std::vector<double> dts, int jobs) {
  std::sort(dts.begin(), dts.end(), std::greater<>());
  dts.erase(std::unique(dts.begin(), dts.end()), dts.end());
  if (dts.size() < 4) throw DomainError("halving_sweep: needs at least 4 distinct dt values");

  HalvingReport report;
  report.runs = parallel_map(dts.size(), jobs, [&](std::size_t i) {
    const SweepCell cell = family.cell(dts[i]);
    return roundoff_growth_experiment(cell.scheme, resample(u, cell.grid_n), horizon, p);
  });

  bool any_zero = false;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < dts.size(); ++i) {
    const RoundoffReport& run = report.runs[i];
    HalvingRow row;
    row.dt = dts[i];
    row.dx = run.dx;
    row.grid_n = Index(std::llround(u.domain_length() / run.dx));
    row.diverged = run.diverged;
    row.n_steps = run.samples.empty() ? 0 : run.samples.back().n;
    row.final_gap = run.diverged || run.samples.empty() ? std::numeric_limits<double>::infinity()
                                                        : run.samples.back().gap;
    any_zero = any_zero || row.final_gap == 0.0;
    xs.push_back(row.dt);
    ys.push_back(row.final_gap);
    report.rows.push_back(row);
  }
  if (!any_zero) {
    if (auto slope = loglog_slope(xs, ys, 2)) report.exponent = -*slope;
  }
  return report;
}

void write_csv(std::ostream& os, const RoundoffReport& report, bool header) {
  if (header) csv::write_row(os, {"n", "t", "gap", "bits", "dt", "dx", "scheme"});
  for (const auto& s : report.samples) {
    csv::write_row(os, {std::to_string(s.n), csv::format(s.t), csv::format(s.gap),
                        std::to_string(report.significand_bits), csv::format(report.dt), csv::format(report.dx),
                        report.scheme});
  }
}

}  // namespace laxlab
