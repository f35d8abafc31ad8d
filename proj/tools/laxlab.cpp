#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "laxlab/config.hpp"
#include "laxlab/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"laxlab: stability, consistency and convergence experiments for finite-difference heat schemes"};
  std::string config_path;
  std::string out_dir = "laxlab_out";
  int jobs = 1;
  long long seed = -1;
  app.add_option("--config", config_path, "experiment file (key = value sections)")->required();
  app.add_option("--out", out_dir, "output directory (LAXLAB_OUT overrides)");
  app.add_option("--jobs", jobs, "worker threads for sweep cells")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed for random probes, overriding the config")->check(CLI::NonNegativeNumber);
  CLI11_PARSE(app, argc, argv);

  if (const char* env = std::getenv("LAXLAB_OUT"); env && *env) out_dir = env;

  try {
    const auto experiments = laxlab::load_config(config_path);
    laxlab::RunOptions options;
    options.out_dir = out_dir;
    options.jobs = jobs;
    if (seed >= 0) options.seed = static_cast<std::uint64_t>(seed);
    const auto result = laxlab::run(experiments, options);
    std::cout << result.summary;
    for (const auto& f : result.csv_files) std::cout << "wrote " << f.string() << '\n';
    std::cout << "wrote " << result.summary_file.string() << '\n';
  } catch (const laxlab::ConfigError& e) {
    std::cerr << "laxlab: config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "laxlab: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
