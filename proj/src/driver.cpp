#include "laxlab/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "laxlab/analysis.hpp"
#include "laxlab/csv.hpp"
#include "laxlab/parallel.hpp"
#include "laxlab/roundoff.hpp"
#include "laxlab/semigroup.hpp"

namespace laxlab {

namespace fs = std::filesystem;

namespace {

std::string utc_stamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

std::string fmt(const char* spec, double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string g6(double v) { return fmt("%.6g", v); }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void section_header(std::ostream& os, const ExperimentConfig& cfg) {
  os << "[" << cfg.name << "] " << to_string(cfg.kind);
  if (cfg.kind != ExperimentKind::ubp_demo) {
    os << "  scheme=" << to_string(cfg.scheme) << "  path=" << cfg.refinement_path().to_string()
       << "  T=" << g6(cfg.horizon);
    if (cfg.kind != ExperimentKind::stability) os << "  probe=" << cfg.probe;
  }
  os << '\n';
}

void run_stability(const ExperimentConfig& cfg, const RunOptions& opt, std::ostream& csv_out, std::ostream& sum) {
  const SchemeFamily family{cfg.scheme, cfg.refinement_path()};
  auto dts = cfg.sweep_dts();
  std::sort(dts.begin(), dts.end(), std::greater<>());
  struct Cell {
    SweepCell cell;
    StabilityReport report;
    double max_abs_g;
  };
  const auto cells = parallel_map(dts.size(), opt.jobs, [&](std::size_t i) {
    SweepCell c = family.cell(dts[i]);
    StabilityReport rep = stability_check(c.scheme, cfg.horizon, cfg.threshold);
    const double g = von_neumann_check(c.scheme, c.grid_n).max_abs_g;
    return Cell{std::move(c), std::move(rep), g};
  });

  csv::write_row(csv_out, {"dt", "dx", "r", "n_steps", "bound_L", "max_abs_g", "error_final", "converged"});
  sum << "  " << "dt            N      r           n_max     bound_L       max|g|      stable  first n > L\n";
  for (const auto& c : cells) {
    const long long n_max = c.report.norms.empty() ? 0 : c.report.norms.back().first;
    csv::write_row(csv_out, {csv::format(c.cell.dt), csv::format(c.cell.dx), csv::format(c.cell.scheme.ratio()),
                             std::to_string(n_max), csv::format(c.report.bound_L), csv::format(c.max_abs_g), "",
                             ""});
    char line[256];
    std::snprintf(line, sizeof(line), "  %-12s  %-5lld  %-10s  %-8lld  %-12s  %-10s  %-6s  %s\n", g6(c.cell.dt).c_str(),
                  (long long)c.cell.grid_n, g6(c.cell.scheme.ratio()).c_str(), n_max, g6(c.report.bound_L).c_str(),
                  g6(c.max_abs_g).c_str(), yes_no(c.report.stable).c_str(),
                  c.report.first_exceeding_n ? std::to_string(*c.report.first_exceeding_n).c_str() : "-");
    sum << line;
  }
}

void run_consistency(const ExperimentConfig& cfg, const RunOptions& opt, std::ostream& csv_out, std::ostream& sum) {
  const SchemeFamily family{cfg.scheme, cfg.refinement_path()};
  const Probe probe = Probe::parse(cfg.probe, cfg.seed);
  auto dts = cfg.sweep_dts();
  std::sort(dts.begin(), dts.end(), std::greater<>());
  struct Cell {
    SweepCell cell;
    std::vector<ConsistencyRow> rows;
  };
  const auto cells = parallel_map(dts.size(), opt.jobs, [&](std::size_t i) {
    SweepCell c = family.cell(dts[i]);
    const HeatSemigroup sg(cfg.horizon, c.grid_n);
    auto rows = consistency_check(c.scheme, sg, sample(probe, c.grid_n), cfg.ts);
    return Cell{std::move(c), std::move(rows)};
  });

  csv::write_row(csv_out, {"dt", "dx", "r", "t", "residual"});
  for (const auto& c : cells)
    for (const auto& row : c.rows)
      csv::write_row(csv_out, {csv::format(c.cell.dt), csv::format(c.cell.dx), csv::format(c.cell.scheme.ratio()),
                               csv::format(row.t), csv::format(row.residual)});

  sum << "  dt            N      t           residual      ratio to previous dt\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = 0; j < cells[i].rows.size(); ++j) {
      const double res = cells[i].rows[j].residual;
      std::string ratio = "-";
      if (i > 0 && res > 0.0) ratio = g6(cells[i - 1].rows[j].residual / res);
      char line[256];
      std::snprintf(line, sizeof(line), "  %-12s  %-5lld  %-10s  %-12s  %s\n", g6(cells[i].cell.dt).c_str(),
                    (long long)cells[i].cell.grid_n, g6(cells[i].rows[j].t).c_str(), g6(res).c_str(), ratio.c_str());
      sum << line;
    }
  }
}

void run_convergence(const ExperimentConfig& cfg, const RunOptions& opt, std::ostream& csv_out, std::ostream& sum) {
  const SchemeFamily family{cfg.scheme, cfg.refinement_path()};
  const Probe probe = Probe::parse(cfg.probe, cfg.seed);
  const auto dts = cfg.sweep_dts();
  const double coarsest_dt = *std::max_element(dts.begin(), dts.end());
  const Index coarse_n = grid_size_for(family.path.dx_for(coarsest_dt));
  const GridFunctiond u = sample(probe, coarse_n);
  const HeatSemigroup sg(cfg.horizon, coarse_n);

  ConvergenceOptions options;
  options.relative_tolerance = cfg.tolerance;
  options.stability_threshold = cfg.threshold;
  options.jobs = opt.jobs;
  const ConvergenceReport report = convergence_experiment(family, sg, u, cfg.horizon, dts, options);
  write_csv(csv_out, report);

  sum << "  dt            N      r           n_steps   bound_L       max|g|      error_final   tail diameter\n";
  double max_bound = 0.0;
  for (const auto& row : report.rows) {
    max_bound = std::max(max_bound, row.bound_L);
    char line[256];
    std::snprintf(line, sizeof(line), "  %-12s  %-5lld  %-10s  %-8lld  %-12s  %-10s  %-12s  %s\n", g6(row.dt).c_str(),
                  (long long)row.grid_n, g6(row.ratio).c_str(), row.n_steps, g6(row.bound_L).c_str(),
                  g6(row.max_abs_g).c_str(), g6(row.error_final).c_str(), g6(row.tail_diameter).c_str());
    sum << line;
  }
  sum << "  converged: " << yes_no(report.converged)
      << "  observed order (in dx): " << (report.observed_order ? fmt("%.4f", *report.observed_order) : "n/a")
      << "  tolerance: " << g6(report.tolerance) << '\n'
      << "  bounded vs compact: max bound_L = " << g6(max_bound)
      << ", trajectory-set diameter = " << g6(report.compactness_diameter) << '\n';
}

void run_roundoff(const ExperimentConfig& cfg, const RunOptions& opt, std::ostream& csv_out, std::ostream& sum) {
  const SchemeFamily family{cfg.scheme, cfg.refinement_path()};
  const Probe probe = Probe::parse(cfg.probe, cfg.seed);
  auto dts = cfg.sweep_dts();
  std::sort(dts.begin(), dts.end(), std::greater<>());
  dts.erase(std::unique(dts.begin(), dts.end()), dts.end());
  const Index coarse_n = grid_size_for(family.path.dx_for(dts.front()));
  const GridFunctiond u = sample(probe, coarse_n);

  csv::write_row(csv_out, {"n", "t", "gap", "bits", "dt", "dx", "scheme"});
  sum << "  bits  dt            N      final gap     growth q    flags\n";
  for (int bits : cfg.bits) {
    const PrecisionSpec p(bits);
    std::vector<RoundoffReport> runs;
    std::optional<double> halving_exponent;
    bool halving = dts.size() >= 4;
    if (halving) {
      HalvingReport h = halving_sweep(family, u, cfg.horizon, p, dts, opt.jobs);
      runs = std::move(h.runs);
      halving_exponent = h.exponent;
    } else {
      runs = parallel_map(dts.size(), opt.jobs, [&](std::size_t i) {
        const SweepCell c = family.cell(dts[i]);
        return roundoff_growth_experiment(c.scheme, resample(u, c.grid_n), cfg.horizon, p);
      });
    }
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const auto& run = runs[i];
      write_csv(csv_out, run, false);
      std::string flags;
      if (run.diverged) flags += "diverged ";
      if (run.unstable_scheme) flags += "unstable-scheme";
      char line[256];
      std::snprintf(line, sizeof(line), "  %-4d  %-12s  %-5lld  %-12s  %-10s  %s\n", bits, g6(run.dt).c_str(),
                    std::llround(kTwoPi<double> / run.dx),
                    run.samples.empty() ? "-" : g6(run.samples.back().gap).c_str(),
                    run.growth_exponent ? fmt("%.4f", *run.growth_exponent).c_str() : "n/a", flags.c_str());
      sum << line;
    }
    if (halving)
      sum << "  bits " << bits << ": halving exponent s (gap ~ dt^-s) = "
          << (halving_exponent ? fmt("%.4f", *halving_exponent) : "n/a (zero gap)") << '\n';
  }
}

void run_ubp(const ExperimentConfig& cfg, std::ostream& csv_out, std::ostream& sum) {
  std::vector<std::size_t> ks;
  for (std::size_t k = cfg.k_min; k <= cfg.k_max; ++k) ks.push_back(k);
  const auto rows = ubp::ubp_violation_demo(ks, cfg.probes);
  ubp::write_csv(csv_out, rows);
  sum << "  k range " << cfg.k_min << ".." << cfg.k_max << ": operator norms " << g6(ubp::norm_Tk(cfg.k_min))
      << " .. " << g6(ubp::norm_Tk(cfg.k_max)) << " (unbounded in k)\n";
  for (std::size_t p = 0; p < cfg.probes.size(); ++p) {
    const auto b = ubp::pointwise_bound(cfg.probes[p], std::max(cfg.k_max, cfg.probes[p].support_bound()));
    sum << "  probe " << p << ": support bound " << cfg.probes[p].support_bound() << ", pointwise bound "
        << g6(b.bound) << " at k=" << b.saturating_k << '\n';
  }
}

}  // namespace

RunResult run(const std::vector<ExperimentConfig>& experiments, const RunOptions& options) {
  fs::create_directories(options.out_dir);
  const std::string stamp = options.timestamp.empty() ? utc_stamp() : options.timestamp;

  RunResult result;
  std::ostringstream summary;
  for (ExperimentConfig cfg : experiments) {
    if (options.seed) cfg.seed = *options.seed;
    const std::string scheme = cfg.kind == ExperimentKind::ubp_demo ? "ubp" : to_string(cfg.scheme);
    const fs::path file = options.out_dir / (to_string(cfg.kind) + "_" + scheme + "_" + stamp + "_" + cfg.name + ".csv");

    std::ostringstream body;
    section_header(summary, cfg);
    switch (cfg.kind) {
      case ExperimentKind::stability: run_stability(cfg, options, body, summary); break;
      case ExperimentKind::consistency: run_consistency(cfg, options, body, summary); break;
      case ExperimentKind::convergence: run_convergence(cfg, options, body, summary); break;
      case ExperimentKind::roundoff: run_roundoff(cfg, options, body, summary); break;
      case ExperimentKind::ubp_demo: run_ubp(cfg, body, summary); break;
    }
    summary << '\n';

    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error("cannot write " + file.string());
    out << body.str();
    result.csv_files.push_back(file);
  }

  result.summary = summary.str();
  result.summary_file = options.out_dir / "summary.txt";
  std::ofstream out(result.summary_file, std::ios::binary);
  if (!out) throw Error("cannot write " + result.summary_file.string());
  out << result.summary;
  return result;
}

}  // namespace laxlab
