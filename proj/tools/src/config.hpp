#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "l0pen/solvers.hpp"

namespace l0pen::cli {

/// Configuration or usage problem; maps to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct SolverConfig {
  std::string profile;  // name of the profile the values started from, may be empty
  std::string family = "quadratic";
  ExactPenaltyOptions penalty;
  ProxGradOptions baseline;  // thresholding methods
};

/// Paper protocols: "portfolio-paper" and "dictionary-paper".
SolverConfig profile_config(const std::string& name);
std::vector<std::string> profile_names();
/// "portfolio-paper" or "dictionary-paper" by instance kind.
std::string default_profile(const std::string& kind);

struct Shape {
  Index n = 0;
  Index l = 0;  // dictionary only
  Index m = 0;  // dictionary only
};

struct BenchConfig {
  std::string problem = "portfolio";
  std::vector<Shape> dims;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> methods;
  double rho = 1.0;
  double beta = 1.0;
  unsigned threads = 1;
  std::filesystem::path output_dir = "bench_out";
  SolverConfig solver;
};

inline const std::vector<std::string>& all_methods() {
  static const std::vector<std::string> methods{"pen-spg", "pen-prox", "l0-prox", "l1-prox"};
  return methods;
}

/// Parses a solver config from JSON text. The "profile" key selects the base
/// values, which the remaining keys override. Unknown keys are errors.
SolverConfig parse_solver_config(const std::string& text, const std::string& fallback_profile);
SolverConfig load_solver_config(const std::filesystem::path& path,
                                const std::string& fallback_profile);

/// Bench config: the solver keys plus problem, dims, seeds, methods, rho,
/// beta, threads and output_dir.
BenchConfig parse_bench_config(const std::string& text);
BenchConfig load_bench_config(const std::filesystem::path& path);

/// Canonical JSON of the resolved options.
std::string config_to_string(const SolverConfig& config);
std::string config_hash(const SolverConfig& config);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace l0pen::cli
