#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kdvg/error.hpp"
#include "kdvg/experiments.hpp"
#include "kdvg/gevrey_ops.hpp"

namespace kdvg::exp {

using json = nlohmann::json;

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "verify-identities", "simulate",      "energies",        "conservation-sweep",
      "radius-decay",      "scaling-check", "derivative-check"};
  return names;
}

ExperimentConfig default_config(const std::string& experiment) {
  ExperimentConfig c;
  c.experiment = experiment;
  if (experiment == "simulate") {
    c.n = 256;
    c.length = 64.0;
    c.solver = {1e-3, 1.0, 0.1};
    c.sigma0 = 0.5;
    c.amplitude = 0.1;
  } else if (experiment == "energies") {
    c.n = 64;
    c.length = kTwoPi;
    c.solver = {1e-3, 0.1, 0.05};
    c.sigma_list = {0.2};
    c.sigma0 = 1.5;
  } else if (experiment == "conservation-sweep") {
    c.n = 128;
    c.length = 2 * kTwoPi;
    c.solver = {1e-3, 0.1, 0.1};
    c.sigma_list = {0.05, 0.1, 0.2, 0.4};
    c.sigma0 = 1.2;
  } else if (experiment == "radius-decay") {
    c.n = 256;
    c.length = 64.0;
    c.solver = {5e-3, 10.0, 0.5};
    c.sigma0 = 0.5;
    c.amplitude = 0.1;
  } else if (experiment == "scaling-check") {
    c.n = 128;
    c.length = 2 * kTwoPi;
    c.solver = {1e-3, 0.1, 0.1};
    c.sigma_list = {0.5};
  } else if (experiment == "derivative-check") {
    c.n = 32;
    c.length = kTwoPi;
    c.solver = {2.5e-4, 0.05, 0.05};
    c.sigma_list = {0.2};
    c.sigma0 = 1.5;
  } else if (experiment == "verify-identities") {
    c.n = 32;
    c.length = kTwoPi;
  } else {
    throw ConfigError("field 'experiment': unknown experiment '" + experiment + "'");
  }
  return c;
}

namespace {

// Rejects repeated keys inside any object; the default parser keeps the last one silently.
json parse_strict(const std::string& text) {
  std::vector<std::set<std::string>> seen;
  json::parser_callback_t cb = [&seen](int, json::parse_event_t ev, json& parsed) {
    switch (ev) {
      case json::parse_event_t::object_start:
        seen.emplace_back();
        break;
      case json::parse_event_t::object_end:
        seen.pop_back();
        break;
      case json::parse_event_t::key: {
        const auto key = parsed.get<std::string>();
        if (!seen.back().insert(key).second) throw ConfigError("duplicate key '" + key + "'");
        break;
      }
      default:
        break;
    }
    return true;
  };
  try {
    return json::parse(text, cb);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
}

double get_number(const json& j, const char* key) {
  if (!j.is_number()) throw ConfigError(std::string("field '") + key + "': expected a number");
  return j.get<double>();
}

int get_int(const json& j, const char* key) {
  if (!j.is_number_integer()) throw ConfigError(std::string("field '") + key + "': expected an integer");
  return j.get<int>();
}

std::vector<double> get_numbers(const json& j, const char* key) {
  if (!j.is_array()) throw ConfigError(std::string("field '") + key + "': expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(get_number(v, key));
  return out;
}

std::vector<int> get_ints(const json& j, const char* key) {
  if (!j.is_array()) throw ConfigError(std::string("field '") + key + "': expected an array of integers");
  std::vector<int> out;
  for (const auto& v : j) out.push_back(get_int(v, key));
  return out;
}

std::string get_string(const json& j, const char* key) {
  if (!j.is_string()) throw ConfigError(std::string("field '") + key + "': expected a string");
  return j.get<std::string>();
}

void fail(const std::string& field, const std::string& what) {
  throw ConfigError("field '" + field + "': " + what);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& fallback_experiment) {
  const json j = parse_strict(text);
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  std::string name = fallback_experiment;
  if (j.contains("experiment")) name = get_string(j["experiment"], "experiment");
  if (name.empty()) fail("experiment", "missing");
  ExperimentConfig c = default_config(name);

  if (j.contains("sigma") && j.contains("sigma_list")) fail("sigma", "give either sigma or sigma_list");
  for (const auto& [key, v] : j.items()) {
    if (key == "experiment") continue;
    else if (key == "n") c.n = get_int(v, "n");
    else if (key == "L") c.length = get_number(v, "L");
    else if (key == "dt") c.solver.dt = get_number(v, "dt");
    else if (key == "t_end") c.solver.t_end = get_number(v, "t_end");
    else if (key == "checkpoint_every") c.solver.checkpoint_every = get_number(v, "checkpoint_every");
    else if (key == "c_cfl") c.solver.c_cfl = get_number(v, "c_cfl");
    else if (key == "sigma") c.sigma_list = {get_number(v, "sigma")};
    else if (key == "sigma_list") c.sigma_list = get_numbers(v, "sigma_list");
    else if (key == "epsilon0") c.epsilon0 = get_number(v, "epsilon0");
    else if (key == "delta") c.delta = get_number(v, "delta");
    else if (key == "seed") {
      if (!v.is_number_unsigned()) fail("seed", "expected a nonnegative integer");
      c.seed = v.get<std::uint64_t>();
    }
    else if (key == "output_dir") c.output_dir = get_string(v, "output_dir");
    else if (key == "tail_fraction") c.tail_fraction = get_number(v, "tail_fraction");
    else if (key == "noise_floor") c.noise_floor = get_number(v, "noise_floor");
    else if (key == "initial") c.initial = get_string(v, "initial");
    else if (key == "sigma0") c.sigma0 = get_number(v, "sigma0");
    else if (key == "amplitude") c.amplitude = get_number(v, "amplitude");
    else if (key == "kappa") c.kappa = get_number(v, "kappa");
    else if (key == "x0") c.x0 = get_number(v, "x0");
    else if (key == "lambdas") c.lambdas = get_ints(v, "lambdas");
    else if (key == "level_n") c.level_n = get_ints(v, "level_n");
    else if (key == "dt_fd") c.dt_fd = get_number(v, "dt_fd");
    else if (key == "t_fd") c.t_fd = get_number(v, "t_fd");
    else if (key == "bound_samples") c.bound_samples = get_int(v, "bound_samples");
    else fail(key, "unknown key");
  }
  if (name == "conservation-sweep" && !j.contains("t_end")) c.solver.t_end = c.delta;
  validate(c);
  return c;
}

ExperimentConfig parse_config(const std::string& path, const std::string& fallback_experiment) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), fallback_experiment);
}

void validate(const ExperimentConfig& c) {
  default_config(c.experiment);  // name check
  Grid g;
  try {
    g = make_grid(c.n, c.length);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("field 'n'/'L': ") + e.what());
  }
  if (!(c.solver.dt > 0.0)) fail("dt", "must be positive");
  if (!(c.solver.t_end >= 0.0)) fail("t_end", "must be nonnegative");
  if (!(c.solver.checkpoint_every > 0.0)) fail("checkpoint_every", "must be positive");
  if (!(c.solver.c_cfl > 0.0)) fail("c_cfl", "must be positive");
  if (!(c.epsilon0 >= 0.0 && c.epsilon0 < 1.0)) fail("epsilon0", "must lie in [0, 1)");
  if (!(c.tail_fraction > 0.0 && c.tail_fraction <= 0.5)) fail("tail_fraction", "must lie in (0, 0.5]");
  if (c.initial != "gevrey" && c.initial != "soliton") fail("initial", "must be 'gevrey' or 'soliton'");
  if (!(c.sigma0 > 0.0)) fail("sigma0", "must be positive");
  if (!(c.kappa > 0.0)) fail("kappa", "must be positive");
  if (!std::isfinite(c.amplitude)) fail("amplitude", "must be finite");

  std::vector<Grid> grids{g};
  if (c.experiment == "derivative-check") {
    if (c.level_n.size() != 3) fail("level_n", "needs three grid sizes (E2, E3, E4 levels)");
    grids.clear();
    for (int n : c.level_n) {
      try {
        grids.push_back(make_grid(n, c.length));
      } catch (const std::exception& e) {
        fail("level_n", e.what());
      }
    }
    if (!(c.dt_fd > 0.0)) fail("dt_fd", "must be positive");
    if (!(c.t_fd >= 0.0)) fail("t_fd", "must be nonnegative");
  }
  for (double s : c.sigma_list) {
    if (!(s >= 0.0)) fail("sigma_list", "sigma must be nonnegative");
    for (const Grid& gg : grids) {
      if (s * gg.xi_max() > kPrecisionBudget) {
        std::ostringstream os;
        os << "sigma*xi_max = " << s * gg.xi_max() << " exceeds the precision budget "
           << kPrecisionBudget;
        fail("sigma_list", os.str());
      }
    }
  }
  if (c.experiment == "conservation-sweep") {
    int positive = 0;
    for (double s : c.sigma_list) positive += s > 0.0;
    if (positive < 4) fail("sigma_list", "the sweep needs at least four positive sigma values");
    if (!(c.delta > 0.0)) fail("delta", "must be positive");
    const double r = c.delta / c.solver.dt;
    if (std::abs(r - std::round(r)) > 1e-9 * r) fail("delta", "must be a multiple of dt");
  }
  if (c.experiment == "energies" && c.sigma_list.empty()) fail("sigma_list", "required");
  if (c.experiment == "derivative-check" && c.sigma_list.empty()) fail("sigma_list", "required");
  if (c.experiment == "scaling-check") {
    if (c.sigma_list.empty()) fail("sigma_list", "required");
    for (int l : c.lambdas)
      if (l < 1) fail("lambdas", "must be integers >= 1");
  }
  if (c.experiment == "verify-identities" && c.bound_samples < 0) fail("bound_samples", "must be >= 0");
}

std::string config_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["experiment"] = c.experiment;
  j["n"] = c.n;
  j["L"] = c.length;
  j["dt"] = c.solver.dt;
  j["t_end"] = c.solver.t_end;
  j["checkpoint_every"] = c.solver.checkpoint_every;
  j["c_cfl"] = c.solver.c_cfl;
  j["sigma_list"] = c.sigma_list;
  j["epsilon0"] = c.epsilon0;
  j["delta"] = c.delta;
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  j["tail_fraction"] = c.tail_fraction;
  j["noise_floor"] = c.noise_floor;
  j["initial"] = c.initial;
  j["sigma0"] = c.sigma0;
  j["amplitude"] = c.amplitude;
  j["kappa"] = c.kappa;
  j["x0"] = c.x0;
  j["lambdas"] = c.lambdas;
  j["level_n"] = c.level_n;
  j["dt_fd"] = c.dt_fd;
  j["t_fd"] = c.t_fd;
  j["bound_samples"] = c.bound_samples;
  return j.dump(2);
}

}  // namespace kdvg::exp
