#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "laxlab/config.hpp"
#include "laxlab/driver.hpp"
#include "laxlab/errors.hpp"

using namespace laxlab;
namespace fs = std::filesystem;

namespace {

std::vector<ExperimentConfig> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.cfg");
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(cells);
  }
  return rows;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("parses a full section") {
  const auto cfgs = parse(R"(
# comment
[conv]
kind   = convergence
scheme = ftcs
r      = 0.5
grid_N = 64, 128
probe  = sine:1 + sine:3
T      = 0.5

[demo]
kind   = ubp_demo
k_min  = 0
k_max  = 5
probes = 1,1,1; 5:0.5, 100:-0.25
)");
  REQUIRE(cfgs.size() == 2);
  CHECK(cfgs[0].name == "conv");
  CHECK(cfgs[0].kind == ExperimentKind::convergence);
  CHECK(*cfgs[0].ratio == 0.5);
  CHECK(cfgs[0].horizon == 0.5);
  const auto dts = cfgs[0].sweep_dts();
  REQUIRE(dts.size() == 2);
  CHECK(dts[0] == doctest::Approx(0.5 * std::pow(kTwoPi<double> / 64.0, 2)).epsilon(1e-14));
  CHECK(cfgs[1].probes.size() == 2);
  CHECK(cfgs[1].probes[1][100] == -0.25);
  CHECK(cfgs[1].probes[1].support_bound() == 101);
}

TEST_CASE("strict parsing names the offending key and line") {
  const std::string err = error_of("[a]\nkind = stability\nshceme = ftcs\nr = 0.5\ndt = 0.01\n");
  CHECK(err.find("shceme") != std::string::npos);
  CHECK(err.find("test.cfg:3:") == 0);

  CHECK(error_of("[a]\nkind = stability\nscheme = ftcs\nr = 0.5\nr = 0.4\ndt = 0.01\n").find("repeated") !=
        std::string::npos);
  CHECK(error_of("[a]\nkind = stability\nscheme = ftcs\nr = 0.5\ndt = 0.01\nbits = 12\n").find("not used") !=
        std::string::npos);
  CHECK(error_of("kind = stability\n").find("before any") != std::string::npos);
  CHECK(error_of("[a]\nkind = stability\nscheme = ftcs\ndt = 0.01\n").find("'r' or 'path'") != std::string::npos);
  CHECK(error_of("[a]\nkind = stability\nscheme = ftcs\nr = 0.5\ndt = 2\n").find("exceeds T") !=
        std::string::npos);
  CHECK(error_of("[a]\nkind = roundoff\nscheme = ftcs\nr = 0.5\ndt = 0.01\n").find("bits") != std::string::npos);
  CHECK(error_of("[a]\nkind = stability\nscheme = lax\nr = 0.5\ndt = 0.01\n") != "");
  CHECK(error_of("[a]\nkind = convergence\nscheme = ftcs\nr = 0.5\ndt = 0.01\nprobe = sinus:1\n").find("sinus") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/laxlab.cfg"), ConfigError);
}

TEST_CASE("refinement path syntax") {
  const auto cfgs = parse("[p]\nkind = stability\nscheme = ftcs\npath = power 1.5 0.5\ndt = 0.01\n");
  CHECK(cfgs[0].refinement_path().dx_for(0.01) == doctest::Approx(0.15).epsilon(1e-14));
  const auto table = parse("[p]\nkind = stability\nscheme = backward_euler\npath = table 0.1:0.5 0.05:0.25\n"
                           "dt = 0.1, 0.05\n");
  CHECK(table[0].refinement_path().dx_for(0.05) == 0.25);
  CHECK(error_of("[p]\nkind = stability\nscheme = ftcs\npath = power 1.5\ndt = 0.01\n").find("power") !=
        std::string::npos);
}

TEST_CASE("sequence syntax") {
  CHECK(parse_sequence("1,1,1") == ubp::FiniteSequence{1.0, 1.0, 1.0});
  CHECK(parse_sequence("5:0.5, 100:-0.25") == ubp::FiniteSequence::from_entries({{5, 0.5}, {100, -0.25}}));
  CHECK_THROWS_AS(parse_sequence("1, 5:0.5"), ConfigError);
}

TEST_CASE("stability run writes bound columns") {
  TempDir dir("laxlab_test_stability");
  const auto cfgs = parse("[half]\nkind = stability\nscheme = ftcs\nr = 0.5\ndt = 0.0078125\nT = 1\n");
  RunOptions opt;
  opt.out_dir = dir.path;
  opt.timestamp = "20000101T000000Z";
  const RunResult res = run(cfgs, opt);
  REQUIRE(res.csv_files.size() == 1);
  CHECK(res.csv_files[0].filename() == "stability_ftcs_20000101T000000Z_half.csv");
  const auto rows = csv_rows(slurp(res.csv_files[0]));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][4] == "bound_L");
  CHECK(std::stod(rows[1][4]) == 1.0);
  CHECK(std::stod(rows[1][5]) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rows[1][3] == "128");
  CHECK(fs::exists(res.summary_file));
}

TEST_CASE("ubp demo run writes one row per k and reruns are byte-identical") {
  TempDir dir("laxlab_test_ubp");
  const std::string text = "[demo]\nkind = ubp_demo\nk_min = 0\nk_max = 20\nprobes = 1,1,1\n";
  RunOptions opt;
  opt.out_dir = dir.path / "a";
  const RunResult first = run(parse(text), opt);
  const auto rows = csv_rows(slurp(first.csv_files[0]));
  CHECK(rows.size() == 22);
  CHECK(rows[0] == std::vector<std::string>{"k", "op_norm", "probe_id", "probe_bound"});
  CHECK(rows[21] == std::vector<std::string>{"20", "20", "0", "2"});

  opt.out_dir = dir.path / "b";
  opt.jobs = 3;
  const RunResult second = run(parse(text), opt);
  CHECK(slurp(first.csv_files[0]) == slurp(second.csv_files[0]));
  CHECK(slurp(first.summary_file) == slurp(second.summary_file));
}

TEST_CASE("sweeps are deterministic across job counts") {
  TempDir dir("laxlab_test_jobs");
  const std::string text =
      "[c]\nkind = convergence\nscheme = ftcs\nr = 0.4\ngrid_N = 16, 32, 64\nprobe = sine:1 + random\nT = 0.2\n"
      "[ro]\nkind = roundoff\nscheme = ftcs\nr = 0.5\ndt = 0.02, 0.01, 0.005, 0.0025\nbits = 10\nT = 0.2\n";
  RunOptions opt;
  opt.timestamp = "t";
  opt.out_dir = dir.path / "one";
  const RunResult a = run(parse(text), opt);
  opt.out_dir = dir.path / "four";
  opt.jobs = 4;
  const RunResult b = run(parse(text), opt);
  REQUIRE(a.csv_files.size() == 2);
  for (std::size_t i = 0; i < a.csv_files.size(); ++i) CHECK(slurp(a.csv_files[i]) == slurp(b.csv_files[i]));
  CHECK(a.summary == b.summary);

  // An explicit seed replaces every section's seed.
  opt.out_dir = dir.path / "seeded";
  opt.seed = 11;
  const RunResult c = run(parse(text), opt);
  CHECK(slurp(a.csv_files[0]) != slurp(c.csv_files[0]));
}
