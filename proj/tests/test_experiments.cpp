#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kdvg/error.hpp"
#include "kdvg/experiments.hpp"
#include "kdvg/parallel.hpp"

using namespace kdvg;
using namespace kdvg::exp;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("kdvg_test_" + name);
  fs::remove_all(p);
  return p;
}

double metric(const ExperimentResult& r, const std::string& key) {
  for (const auto& [k, v] : r.metrics)
    if (k == key) return v;
  FAIL("missing metric " << key);
  return 0.0;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("config parsing") {
  const auto c = parse_config_text(R"({"experiment": "energies", "n": 64, "L": 6.283185307179586, "sigma": 0.3})");
  CHECK(c.experiment == "energies");
  CHECK(c.n == 64);
  CHECK(c.sigma_list == std::vector<double>{0.3});
  CHECK(c.solver.dt == default_config("energies").solver.dt);
  CHECK(c.seed == 1);

  // n = 64 on 2 pi: xi_max = 21, so sigma = 30/21 gives 30 > 25
  CHECK_THROWS_AS(parse_config_text(R"({"experiment": "energies", "n": 64, "L": 6.283185307179586, "sigma": 1.4285714285714286})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"experiment": "energies", "n": 64, "n": 32})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"experiment": "energies", "nn": 64})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"experiment": "nope"})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"n": 64})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"experiment": "simulate", "n": 100})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("{\"experiment\": "), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"experiment": "conservation-sweep", "sigma_list": [0.1, 0.2]})"),
                  ConfigError);
  CHECK(parse_config_text(R"({"n": 32})", "simulate").experiment == "simulate");
  // nested objects are checked for duplicates too
  CHECK_THROWS_AS(parse_config_text(R"({"experiment": "simulate", "x": {"a": 1, "a": 2}})"), ConfigError);

  for (const auto& name : experiment_names()) CHECK_NOTHROW(validate(default_config(name)));
  const auto round = parse_config_text(config_json(default_config("derivative-check")));
  CHECK(config_json(round) == config_json(default_config("derivative-check")));
}

TEST_CASE("csv rendering") {
  Series s{"s", {"a", "b,c"}, {{"1", "say \"hi\""}, {"x\ny", "2"}}};
  CHECK(to_csv(s) == "a,\"b,c\"\r\n1,\"say \"\"hi\"\"\"\r\n\"x\ny\",2\r\n");
  s.rows.push_back({"only one"});
  CHECK_THROWS_AS(to_csv(s), IntegrityError);
  CHECK(fmt_num(0.1) == "0.10000000000000001");
  CHECK(fmt_num(0.0) == "0");
}

TEST_CASE("empty results give the manifest only") {
  const auto dir = scratch("empty");
  RunManifest m{config_json(default_config("simulate")), artifact_version(), 1, 1, 0.0};
  emit_outputs({}, m, dir.string());
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path().filename().string());
  CHECK(files == std::vector<std::string>{"manifest.json"});
  fs::remove_all(dir);
}

TEST_CASE("outputs do not depend on the thread count") {
  auto cfg = default_config("energies");
  cfg.n = 32;
  cfg.solver = {1e-3, 0.02, 0.01};
  auto run = [&](int threads) {
    set_num_threads(threads);
    const auto dir = scratch("threads" + std::to_string(threads));
    const auto res = run_experiment(cfg);
    emit_outputs({res}, {config_json(cfg), artifact_version(), cfg.seed, threads, 0.0}, dir.string());
    return std::pair{slurp(dir / "energies.csv"), slurp(dir / "summary.json")};
  };
  const int saved = num_threads();
  const auto a = run(1), b = run(4);
  set_num_threads(saved);
  CHECK(!a.first.empty());
  CHECK(a.first == b.first);
  CHECK(a.second == b.second);
  fs::remove_all(scratch("threads1"));
  fs::remove_all(scratch("threads4"));
}

TEST_CASE("zero data in the sweep") {
  auto cfg = default_config("conservation-sweep");
  cfg.n = 32;
  cfg.length = kTwoPi;
  cfg.epsilon0 = 0.0;
  cfg.solver.t_end = cfg.delta;
  const auto r = run_conservation_sweep(cfg);
  CHECK(r.passed());
  REQUIRE(r.series.size() == 1);
  CHECK(r.series[0].rows.size() == 5);  // sigma = 0 row plus four
  for (const auto& row : r.series[0].rows) {
    CHECK(row[3] == "0");
    CHECK(row[6] == "0");
  }
}

TEST_CASE("radius decay at t = 0") {
  auto cfg = default_config("radius-decay");
  cfg.solver.t_end = 0.0;
  const auto r = run_radius_decay(cfg);
  REQUIRE(r.series.size() == 2);
  REQUIRE(r.series[0].rows.size() == 1);
  CHECK(metric(r, "sigma_hat_initial") == doctest::Approx(cfg.sigma0).epsilon(1e-10));
  CHECK(r.series[1].rows.size() == 1);
}

TEST_CASE("scaling with lambda = 1") {
  auto cfg = default_config("scaling-check");
  cfg.n = 32;
  cfg.length = kTwoPi;
  cfg.lambdas = {1};
  cfg.solver = {1e-3, 0.01, 0.01};
  const auto r = run_scaling_check(cfg);
  CHECK(metric(r, "max_norm_identity_rel_err") == 0.0);
  CHECK(metric(r, "max_dynamic_rel_err") == 0.0);
  CHECK(r.passed());
}

}
