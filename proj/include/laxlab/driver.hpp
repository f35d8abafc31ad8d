#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "laxlab/config.hpp"

namespace laxlab {

struct RunOptions {
  std::filesystem::path out_dir = "laxlab_out";
  int jobs = 1;
  std::optional<std::uint64_t> seed;  // overrides every section's seed
  /// Filename stamp; empty means the current UTC time as YYYYMMDDTHHMMSSZ.
  std::string timestamp;
};

struct RunResult {
  std::vector<std::filesystem::path> csv_files;  // one per section, in file order
  std::filesystem::path summary_file;
  std::string summary;
};

/// Runs every section and writes <kind>_<scheme>_<timestamp>_<section>.csv
/// plus summary.txt into options.out_dir. Verdicts (stable, converged, ...)
/// are reported in the files; only configuration or I/O problems throw.
RunResult run(const std::vector<ExperimentConfig>& experiments, const RunOptions& options);

}  // namespace laxlab
