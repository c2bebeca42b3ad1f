#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "l0pen/instance_io.hpp"
#include "l0pen/penalty_family.hpp"

namespace l0pen::cli {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) out += (out.empty() ? "" : ", ") + item;
  return out;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError("config: unknown key '" + path + key + "'");
  }
}

const json& object_at(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_object()) throw ConfigError("config: '" + key + "' must be an object");
  return v;
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& path) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config: '" + path + key + "' has the wrong type");
  }
}

void read_spg(const json& j, SpgOptions& o) {
  reject_unknown(j, {"beta", "sigma_min", "sigma_max", "memory", "max_iter", "stat_tol",
                     "no_progress_window", "backtrack_factor"},
                 "spg.");
  read(j, "beta", o.beta, "spg.");
  read(j, "sigma_min", o.sigma_min, "spg.");
  read(j, "sigma_max", o.sigma_max, "spg.");
  read(j, "memory", o.memory, "spg.");
  read(j, "max_iter", o.max_iter, "spg.");
  read(j, "stat_tol", o.stat_tol, "spg.");
  read(j, "no_progress_window", o.no_progress_window, "spg.");
  read(j, "backtrack_factor", o.backtrack_factor, "spg.");
}

void read_prox(const json& j, ProxGradOptions& o, const std::string& path) {
  reject_unknown(j, {"sufficient_decrease", "sigma_min", "sigma_max", "memory", "max_iter",
                     "stat_tol"},
                 path);
  read(j, "sufficient_decrease", o.sufficient_decrease, path);
  read(j, "sigma_min", o.sigma_min, path);
  read(j, "sigma_max", o.sigma_max, path);
  read(j, "memory", o.memory, path);
  read(j, "max_iter", o.max_iter, path);
  read(j, "stat_tol", o.stat_tol, path);
}

void read_outer(const json& j, OuterOptions& o) {
  reject_unknown(j, {"alpha0", "alpha_growth", "comp_tol", "max_outer", "measure", "zero_tol"},
                 "outer.");
  read(j, "alpha0", o.alpha0, "outer.");
  read(j, "alpha_growth", o.alpha_growth, "outer.");
  read(j, "comp_tol", o.comp_tol, "outer.");
  read(j, "max_outer", o.max_outer, "outer.");
  read(j, "zero_tol", o.zero_tol, "outer.");
  if (j.contains("measure")) {
    std::string measure;
    read(j, "measure", measure, "outer.");
    if (measure == "max") {
      o.measure = ComplementarityMeasure::kMax;
    } else if (measure == "sum") {
      o.measure = ComplementarityMeasure::kSum;
    } else {
      throw ConfigError("config: outer.measure must be \"max\" or \"sum\"");
    }
  }
}

const std::set<std::string> kSolverKeys{"profile", "family", "inner", "spg", "prox", "outer",
                                        "baseline"};

SolverConfig solver_from_json(const json& j, const std::string& fallback_profile) {
  std::string profile = fallback_profile;
  read(j, "profile", profile, "");
  SolverConfig c = profile.empty() ? SolverConfig{} : profile_config(profile);

  read(j, "family", c.family, "");
  if (j.contains("inner")) {
    std::string inner;
    read(j, "inner", inner, "");
    if (inner == "spg") {
      c.penalty.inner = InnerSolver::kSpg;
    } else if (inner == "prox") {
      c.penalty.inner = InnerSolver::kProxGrad;
    } else {
      throw ConfigError("config: inner must be \"spg\" or \"prox\", got \"" + inner + "\"");
    }
  }
  if (j.contains("spg")) read_spg(object_at(j, "spg"), c.penalty.spg);
  if (j.contains("prox")) read_prox(object_at(j, "prox"), c.penalty.prox, "prox.");
  if (j.contains("outer")) read_outer(object_at(j, "outer"), c.penalty.outer);
  if (j.contains("baseline")) read_prox(object_at(j, "baseline"), c.baseline, "baseline.");

  try {
    (void)family_from_name(c.family, 1.0);
    c.penalty.spg.validate();
    c.penalty.prox.validate();
    c.penalty.outer.validate();
    c.baseline.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
}

const char* measure_name(ComplementarityMeasure m) {
  return m == ComplementarityMeasure::kMax ? "max" : "sum";
}

json prox_json(const ProxGradOptions& o) {
  return {{"sufficient_decrease", o.sufficient_decrease}, {"sigma_min", o.sigma_min},
          {"sigma_max", o.sigma_max},                     {"memory", o.memory},
          {"max_iter", o.max_iter},                       {"stat_tol", o.stat_tol}};
}

}  // namespace

SolverConfig profile_config(const std::string& name) {
  SolverConfig c;
  c.profile = name;
  if (name == "portfolio-paper") {
    c.penalty.inner = InnerSolver::kSpg;
    c.penalty.spg.stat_tol = 1e-4;
    c.penalty.spg.max_iter = 1000;
    c.penalty.prox.stat_tol = 1e-4;
    c.penalty.prox.max_iter = 1000;
    c.penalty.outer.alpha0 = 1.0;
    c.penalty.outer.alpha_growth = 2.0;
    c.penalty.outer.comp_tol = 1e-3;
    c.penalty.outer.measure = ComplementarityMeasure::kMax;
    c.baseline.max_iter = 1000;
    c.baseline.stat_tol = 1e-4;
  } else if (name == "dictionary-paper") {
    c.penalty.inner = InnerSolver::kProxGrad;
    c.penalty.spg.stat_tol = 1e-5;
    c.penalty.spg.max_iter = 10000;
    c.penalty.prox.stat_tol = 1e-5;
    c.penalty.prox.max_iter = 10000;
    c.penalty.outer.alpha0 = 1.0;
    c.penalty.outer.alpha_growth = 1.5;
    c.penalty.outer.comp_tol = 1e-3;
    c.penalty.outer.measure = ComplementarityMeasure::kSum;
    c.baseline.max_iter = 100000;
    c.baseline.stat_tol = 1e-6;
  } else {
    throw ConfigError("unknown profile '" + name + "' (valid: " + join(profile_names()) + ")");
  }
  return c;
}

std::vector<std::string> profile_names() { return {"portfolio-paper", "dictionary-paper"}; }

std::string default_profile(const std::string& kind) {
  return kind == "dictionary" ? "dictionary-paper" : "portfolio-paper";
}

SolverConfig parse_solver_config(const std::string& text, const std::string& fallback_profile) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  reject_unknown(j, kSolverKeys, "");
  return solver_from_json(j, fallback_profile);
}

SolverConfig load_solver_config(const std::filesystem::path& path,
                                const std::string& fallback_profile) {
  return parse_solver_config(read_text_file(path), fallback_profile);
}

BenchConfig parse_bench_config(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  std::set<std::string> allowed = kSolverKeys;
  allowed.insert({"problem", "dims", "seeds", "methods", "rho", "beta", "threads", "output_dir"});
  reject_unknown(j, allowed, "");

  BenchConfig b;
  read(j, "problem", b.problem, "");
  if (b.problem != "portfolio" && b.problem != "dictionary") {
    throw ConfigError("config: problem must be \"portfolio\" or \"dictionary\"");
  }
  b.solver = solver_from_json(j, default_profile(b.problem));

  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].empty()) {
    throw ConfigError("config: 'dims' must be a nonempty array");
  }
  for (const auto& d : j["dims"]) {
    Shape s;
    if (b.problem == "portfolio") {
      if (!d.is_number_integer() || d.get<long long>() < 2) {
        throw ConfigError("config: portfolio dims are integers n >= 2");
      }
      s.n = d.get<Index>();
    } else {
      if (!d.is_object()) throw ConfigError("config: dictionary dims are objects {n, l, m}");
      reject_unknown(d, {"n", "l", "m"}, "dims[].");
      for (const char* key : {"n", "l", "m"}) {
        if (!d.contains(key) || !d[key].is_number_integer() || d[key].get<long long>() < 1) {
          throw ConfigError(std::string("config: dims[].") + key + " must be a positive integer");
        }
      }
      s.n = d["n"].get<Index>();
      s.l = d["l"].get<Index>();
      s.m = d["m"].get<Index>();
    }
    b.dims.push_back(s);
  }

  if (!j.contains("seeds") || !j["seeds"].is_array() || j["seeds"].empty()) {
    throw ConfigError("config: 'seeds' must be a nonempty array");
  }
  for (const auto& s : j["seeds"]) {
    if (!s.is_number_unsigned()) throw ConfigError("config: seeds are nonnegative integers");
    b.seeds.push_back(s.get<std::uint64_t>());
  }

  b.methods = all_methods();
  read(j, "methods", b.methods, "");
  if (b.methods.empty()) throw ConfigError("config: 'methods' must not be empty");
  for (const auto& m : b.methods) {
    if (std::find(all_methods().begin(), all_methods().end(), m) == all_methods().end()) {
      throw ConfigError("config: unknown method '" + m + "' (valid: " + join(all_methods()) + ")");
    }
  }

  read(j, "rho", b.rho, "");
  read(j, "beta", b.beta, "");
  if (!(b.rho > 0.0)) throw ConfigError("config: rho must be positive");
  read(j, "threads", b.threads, "");
  if (b.threads == 0) throw ConfigError("config: threads must be positive");
  std::string out = b.output_dir.string();
  read(j, "output_dir", out, "");
  b.output_dir = out;
  return b;
}

BenchConfig load_bench_config(const std::filesystem::path& path) {
  return parse_bench_config(read_text_file(path));
}

std::string config_to_string(const SolverConfig& c) {
  const auto& p = c.penalty;
  json j;
  j["profile"] = c.profile;
  j["family"] = c.family;
  j["inner"] = p.inner == InnerSolver::kSpg ? "spg" : "prox";
  j["spg"] = {{"beta", p.spg.beta},
              {"sigma_min", p.spg.sigma_min},
              {"sigma_max", p.spg.sigma_max},
              {"memory", p.spg.memory},
              {"max_iter", p.spg.max_iter},
              {"stat_tol", p.spg.stat_tol},
              {"no_progress_window", p.spg.no_progress_window},
              {"backtrack_factor", p.spg.backtrack_factor}};
  j["prox"] = prox_json(p.prox);
  j["outer"] = {{"alpha0", p.outer.alpha0},       {"alpha_growth", p.outer.alpha_growth},
                {"comp_tol", p.outer.comp_tol},   {"max_outer", p.outer.max_outer},
                {"measure", measure_name(p.outer.measure)}, {"zero_tol", p.outer.zero_tol}};
  j["baseline"] = prox_json(c.baseline);
  return j.dump();
}

std::string config_hash(const SolverConfig& config) {
  return fnv1a_hex(config_to_string(config));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace l0pen::cli
