#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "laxlab/refinement.hpp"
#include "laxlab/ubp.hpp"

namespace laxlab {

enum class ExperimentKind { stability, consistency, convergence, roundoff, ubp_demo };

std::string to_string(ExperimentKind kind);

/// One [section] of an experiment file.
///
/// The file format is flat key = value text:
///
///   # CFL threshold, stable side
///   [ftcs_r05]
///   kind    = convergence
///   scheme  = ftcs
///   r       = 0.5
///   grid_N  = 128, 256, 512
///   probe   = sine:1 + sine:31
///   T       = 1
///
/// Lists are comma separated. Keys a kind does not use are rejected, as are
/// unknown and repeated keys.
struct ExperimentConfig {
  std::string name;
  int line = 0;  // line of the section header
  ExperimentKind kind = ExperimentKind::stability;

  // Scheme sweeps (every kind except ubp_demo).
  SchemeKind scheme = SchemeKind::ftcs;
  std::optional<double> ratio;                // key r
  std::optional<RefinementPath> path;         // key path
  std::vector<double> dts;                    // key dt
  std::vector<long long> grid_ns;             // key grid_N
  std::string probe = "sine:1";
  double horizon = 1.0;                       // key T
  std::vector<int> bits;                      // roundoff
  double tolerance = 1e-3;                    // convergence, relative to ||u||
  double threshold = 10.0;                    // stability bound L
  std::vector<double> ts{0.0};                // consistency times
  std::uint64_t seed = 0;

  // ubp_demo
  std::size_t k_min = 0;
  std::size_t k_max = 20;
  std::vector<ubp::FiniteSequence> probes;

  /// The refinement path: `path` when given, otherwise constant ratio r.
  RefinementPath refinement_path() const;
  /// dt values of the sweep: `dt` directly, or one per grid_N along the path.
  std::vector<double> sweep_dts() const;
};

/// Parses every section; errors carry "<source>:<line>:" prefixes.
std::vector<ExperimentConfig> parse_config(std::istream& in, const std::string& source = "<config>");
std::vector<ExperimentConfig> load_config(const std::string& path);

/// "1,1,1" (dense prefix) or "5:0.5, 100:-0.25" (sparse index:value pairs).
ubp::FiniteSequence parse_sequence(const std::string& text);

}  // namespace laxlab
