#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace l0pen::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFlagged = 1;  // solver status or certificate not ok
inline constexpr int kExitUsage = 2;    // usage, config or IO error

struct GenArgs {
  std::string kind;  // "portfolio" | "dictionary"
  long n = 0;
  long l = 0;
  long m = 0;
  std::uint64_t seed = 0;
  double rho = 1.0;
  double beta = 1.0;
  std::filesystem::path out;
  bool force = false;
};

struct SolveArgs {
  std::filesystem::path instance;
  std::optional<std::filesystem::path> config;
  std::optional<std::string> profile;
  std::optional<std::string> family;
  std::optional<std::string> inner;  // "spg" | "prox"
  std::optional<std::filesystem::path> report;
};

struct VerifyArgs {
  std::filesystem::path instance;
  std::filesystem::path report;
  bool oracle = false;
  unsigned threads = 1;
  std::optional<double> max_gap;
};

struct BenchArgs {
  std::filesystem::path config;
  std::optional<std::filesystem::path> output_dir;
  std::optional<unsigned> threads;
};

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err);
int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);

/// Default report path: the instance path with extension ".report.json".
std::filesystem::path default_report_path(const std::filesystem::path& instance);

/// Parses `args` (without the program name) and dispatches.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace l0pen::cli
