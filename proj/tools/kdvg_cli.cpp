#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "kdvg/error.hpp"
#include "kdvg/experiments.hpp"
#include "kdvg/parallel.hpp"

namespace ke = kdvg::exp;

int main(int argc, char** argv) {
  CLI::App app{"Gevrey-radius experiments for periodic KdV"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ke::artifact_version());

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  int threads = 1;
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "RNG seed (overrides the config)");
  app.add_option("--out", out_dir, "output directory (overrides the config)");
  app.add_option("--threads", threads, "worker threads; results do not depend on it")
      ->check(CLI::PositiveNumber);

  for (const auto& name : ke::experiment_names()) app.add_subcommand(name, "run " + name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const std::string experiment = app.get_subcommands().front()->get_name();
  ke::ExperimentConfig cfg;
  try {
    cfg = config_path.empty() ? ke::default_config(experiment) : ke::parse_config(config_path, experiment);
    if (cfg.experiment != experiment)
      throw kdvg::ConfigError("config names experiment '" + cfg.experiment + "' but subcommand is '" +
                              experiment + "'");
    if (seed) cfg.seed = *seed;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    ke::validate(cfg);
  } catch (const kdvg::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }

  kdvg::set_num_threads(threads);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const ke::ExperimentResult res = ke::run_experiment(cfg);
    ke::RunManifest m;
    m.config_json = ke::config_json(cfg);
    m.version = ke::artifact_version();
    m.seed = cfg.seed;
    m.threads = threads;
    m.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ke::emit_outputs({res}, m, cfg.output_dir);

    for (const auto& [k, v] : res.metrics) std::cout << k << " = " << ke::fmt_num(v) << "\n";
    for (const auto& [k, ok] : res.checks) std::cout << (ok ? "PASS " : "FAIL ") << k << "\n";
    for (const auto& n : res.notes) std::cout << "note: " << n << "\n";
    std::cout << "outputs in " << cfg.output_dir << "\n";
    return res.passed() ? 0 : 1;
  } catch (const kdvg::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
