#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "kdvg/error.hpp"
#include "kdvg/experiments.hpp"

namespace kdvg::exp {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string artifact_version() { return KDVG_VERSION; }

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool ExperimentResult::passed() const {
  for (const auto& [name, ok] : checks)
    if (!ok) return false;
  return true;
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + p.string() + "' for writing");
  out << content;
  out.close();
  if (!out) throw std::runtime_error("write failed for '" + p.string() + "'");
}

ojson metrics_json(const ExperimentResult& r) {
  ojson j;
  j["experiment"] = r.experiment;
  j["passed"] = r.passed();
  j["metrics"] = ojson::object();
  for (const auto& [k, v] : r.metrics) j["metrics"][k] = v;
  j["checks"] = ojson::object();
  for (const auto& [k, v] : r.checks) j["checks"][k] = v;
  j["notes"] = r.notes;
  return j;
}

}  // namespace

std::string to_csv(const Series& s) {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_cell(cells[i]);
    }
    out += "\r\n";
  };
  line(s.columns);
  for (const auto& row : s.rows) {
    if (row.size() != s.columns.size())
      throw IntegrityError("to_csv: row width differs from header in series '" + s.name + "'");
    line(row);
  }
  return out;
}

void emit_outputs(const std::vector<ExperimentResult>& results, const RunManifest& manifest,
                  const std::string& output_dir) {
  const fs::path dir(output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + output_dir + "': " + ec.message());

  ojson m;
  m["artifact_version"] = manifest.version;
  m["seed"] = manifest.seed;
  m["threads"] = manifest.threads;
  m["wall_clock_s"] = manifest.wall_clock_s;
  m["config"] = manifest.config_json.empty() ? ojson::object() : ojson::parse(manifest.config_json);
  m["experiments"] = ojson::array();
  for (const auto& r : results) {
    ojson e = metrics_json(r);
    e["series"] = ojson::array();
    for (const auto& s : r.series) e["series"].push_back(s.name + ".csv");
    e["timings_s"] = ojson::object();
    for (const auto& [k, v] : r.timings) e["timings_s"][k] = v;
    // per-check wall clock lives here; reports.json keeps only reproducible fields
    for (const auto& rep : r.reports_json) {
      const ojson j = ojson::parse(rep);
      if (j.contains("elapsed_s")) e["timings_s"]["check_" + j.value("check_name", std::string())] = j["elapsed_s"];
    }
    m["experiments"].push_back(e);
  }
  write_file(dir / "manifest.json", m.dump(2) + "\n");
  if (results.empty()) return;

  ojson summary = ojson::array();
  for (const auto& r : results) {
    for (const auto& s : r.series) write_file(dir / (s.name + ".csv"), to_csv(s));
    summary.push_back(metrics_json(r));
  }
  write_file(dir / "summary.json", summary.dump(2) + "\n");

  ojson reports = ojson::array();
  for (const auto& r : results)
    for (const auto& rep : r.reports_json) {
      ojson j = ojson::parse(rep);
      j.erase("elapsed_s");
      reports.push_back(std::move(j));
    }
  if (!reports.empty()) write_file(dir / "reports.json", reports.dump(2) + "\n");
}

}  // namespace kdvg::exp
