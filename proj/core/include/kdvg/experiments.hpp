#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kdvg/kdv_solver.hpp"

namespace kdvg::exp {

struct ExperimentConfig {
  std::string experiment = "simulate";
  int n = 128;
  double length = 12.566370614359172;  // 4 pi
  SolverConfig solver;
  std::vector<double> sigma_list;
  double epsilon0 = 0.1;
  double delta = 0.1;
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  double tail_fraction = 0.25;
  double noise_floor = -1.0;

  // initial data
  std::string initial = "gevrey";  // gevrey | soliton
  double sigma0 = 1.2;
  double amplitude = 1.0;
  double kappa = 0.5;
  double x0 = 0.0;

  // scaling-check
  std::vector<int> lambdas{2, 4};
  // derivative-check: grid sizes of the E2, E3, E4 levels, FD base step, evaluation time
  std::vector<int> level_n{128, 64, 32};
  double dt_fd = 2e-3;
  double t_fd = 0.05;
  // verify-identities: tuples in the bound suite
  int bound_samples = 10000;
};

// Experiment-specific defaults; unknown experiment names throw ConfigError.
ExperimentConfig default_config(const std::string& experiment);
// JSON text -> validated config. Unknown or duplicate keys and schema violations throw ConfigError.
// "experiment" may be omitted when fallback_experiment names one.
ExperimentConfig parse_config_text(const std::string& text, const std::string& fallback_experiment = "");
ExperimentConfig parse_config(const std::string& path, const std::string& fallback_experiment = "");
void validate(const ExperimentConfig& cfg);
// Canonical JSON of every field, the reproducibility snapshot.
std::string config_json(const ExperimentConfig& cfg);

const std::vector<std::string>& experiment_names();

// One CSV: cells are preformatted (numbers via fmt_num).
struct Series {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct ExperimentResult {
  std::string experiment;
  std::vector<Series> series;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::pair<std::string, bool>> checks;
  std::vector<std::string> notes;
  // wall-clock per stage; reported in the manifest only, so CSV and summary stay reproducible
  std::vector<std::pair<std::string, double>> timings;
  // structured check reports, written to reports.json
  std::vector<std::string> reports_json;

  bool passed() const;
};

std::string fmt_num(double v);

ExperimentResult run_simulate(const ExperimentConfig& cfg);
ExperimentResult run_energies(const ExperimentConfig& cfg);
ExperimentResult run_conservation_sweep(const ExperimentConfig& cfg);
ExperimentResult run_radius_decay(const ExperimentConfig& cfg);
ExperimentResult run_scaling_check(const ExperimentConfig& cfg);
ExperimentResult run_derivative_check(const ExperimentConfig& cfg);
ExperimentResult run_verify_identities(const ExperimentConfig& cfg);
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Initial field per cfg.initial on the (n, length) grid.
SpectralField initial_field(const ExperimentConfig& cfg);

struct RunManifest {
  std::string config_json;
  std::string version;
  std::uint64_t seed = 0;
  int threads = 1;
  double wall_clock_s = 0.0;
};

std::string artifact_version();

// Writes manifest.json, one CSV per series and summary.json under output_dir.
void emit_outputs(const std::vector<ExperimentResult>& results, const RunManifest& manifest,
                  const std::string& output_dir);
// RFC 4180 rendering, CRLF line ends.
std::string to_csv(const Series& s);

}  // namespace kdvg::exp
