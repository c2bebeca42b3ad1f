#include "l0pen/report_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace l0pen {

using nlohmann::json;

namespace {

json to_array(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Vector from_array(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw Error(std::string("report: missing array '") + key + "'");
  }
  const auto values = j[key].get<std::vector<double>>();
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

template <typename T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(std::string("report: missing field '") + key + "'");
  return j[key].get<T>();
}

}  // namespace

std::string report_to_string(const SolveReport& r, const ReportMeta& meta) {
  json j;
  j["method"] = meta.method;
  j["family"] = meta.family;
  j["instance_hash"] = meta.instance_hash;
  j["config_hash"] = meta.config_hash;
  j["zero_tol"] = meta.zero_tol;
  j["stat_tol"] = meta.stat_tol;

  j["status"] = to_string(r.status);
  j["spo_value"] = r.spo_value;
  j["penalty_value"] = r.penalty_value;
  j["l0"] = r.l0;
  j["complementarity"] = r.complementarity;
  j["complementarity_sum"] = r.complementarity_sum;
  j["stationarity"] = r.stationarity;
  j["inner_iterations"] = r.inner_iterations;
  j["outer_iterations"] = r.outer_iterations;
  j["wall_time"] = r.wall_time;
  j["alpha_final"] = r.alpha_final;
  j["x"] = to_array(r.final_iterate.x);
  j["s"] = to_array(r.final_iterate.s);
  j["y"] = to_array(r.final_iterate.y);
  j["objective_trace"] = r.objective_trace;
  j["alpha_trace"] = r.alpha_trace;
  j["complementarity_trace"] = r.complementarity_trace;
  j["stationarity_trace"] = r.stationarity_trace;
  std::vector<std::string> inner_status;
  for (auto s : r.inner_status_trace) inner_status.emplace_back(to_string(s));
  j["inner_status_trace"] = inner_status;
  return j.dump(2);
}

std::pair<SolveReport, ReportMeta> report_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("report: malformed JSON: ") + e.what());
  }
  try {
    ReportMeta meta;
    meta.method = get<std::string>(j, "method");
    meta.family = get<std::string>(j, "family");
    meta.instance_hash = get<std::string>(j, "instance_hash");
    meta.config_hash = get<std::string>(j, "config_hash");
    meta.zero_tol = get<double>(j, "zero_tol");
    meta.stat_tol = get<double>(j, "stat_tol");

    SolveReport r;
    r.status = solve_status_from_string(get<std::string>(j, "status"));
    r.spo_value = get<double>(j, "spo_value");
    r.penalty_value = get<double>(j, "penalty_value");
    r.l0 = get<Index>(j, "l0");
    r.complementarity = get<double>(j, "complementarity");
    r.complementarity_sum = get<double>(j, "complementarity_sum");
    r.stationarity = get<double>(j, "stationarity");
    r.inner_iterations = get<long>(j, "inner_iterations");
    r.outer_iterations = get<int>(j, "outer_iterations");
    r.wall_time = get<double>(j, "wall_time");
    r.alpha_final = get<double>(j, "alpha_final");
    r.final_iterate = {from_array(j, "x"), from_array(j, "s"), from_array(j, "y")};
    r.objective_trace = get<std::vector<double>>(j, "objective_trace");
    r.alpha_trace = get<std::vector<double>>(j, "alpha_trace");
    r.complementarity_trace = get<std::vector<double>>(j, "complementarity_trace");
    r.stationarity_trace = get<std::vector<double>>(j, "stationarity_trace");
    for (const auto& s : get<std::vector<std::string>>(j, "inner_status_trace")) {
      r.inner_status_trace.push_back(solve_status_from_string(s));
    }
    return {std::move(r), std::move(meta)};
  } catch (const json::exception& e) {
    throw Error(std::string("report: ") + e.what());
  }
}

void save_report(const std::filesystem::path& path, const SolveReport& report,
                 const ReportMeta& meta) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << report_to_string(report, meta) << '\n';
}

std::pair<SolveReport, ReportMeta> load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return report_from_string(buffer.str());
}

}  // namespace l0pen
