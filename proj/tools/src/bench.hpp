#pragma once

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "config.hpp"
#include "l0pen/instance_io.hpp"
#include "l0pen/random.hpp"

namespace l0pen::cli {

/// Runs one method ("pen-spg", "pen-prox", "l0-prox", "l1-prox") on an
/// instance from its default start.
SolveReport run_method(const std::string& method, const InstanceFile& instance,
                       const SolverConfig& config);

/// One row of results.csv.
struct CellResult {
  std::string instance_id;
  std::string method;
  double spo_value = std::numeric_limits<double>::quiet_NaN();
  Index l0 = 0;
  double comp = std::numeric_limits<double>::quiet_NaN();
  double stat = std::numeric_limits<double>::quiet_NaN();
  double wall_ms = 0.0;
  std::string status;  // SolveStatus name, or "error"

  /// The cell produced a usable point (everything except "error" and
  /// "unsupported").
  bool usable() const;
};

inline constexpr const char* kResultsHeader =
    "instance_id,method,spo_value,l0,comp,stat,wall_ms,status";

/// Dolan-More profile: fraction of instances with ratio <= tau per method.
/// Rows are at every distinct finite ratio (ascending) plus tau = inf.
struct Profile {
  std::vector<std::string> methods;
  std::vector<double> taus;                    // last entry is +inf
  std::vector<std::vector<double>> fractions;  // [tau][method]
};

/// ratios[instance][method]; +inf marks a failed cell.
Profile performance_profile(const std::vector<std::vector<double>>& ratios,
                            const std::vector<std::string>& methods);

/// Value ratios use the shifted metric (value - best + 1e-12); time ratios
/// use wall_ms with a 1e-3 ms floor. Cells are grouped by instance in the
/// order given.
Profile value_profile(const std::vector<CellResult>& cells, const std::vector<std::string>& methods);
Profile time_profile(const std::vector<CellResult>& cells, const std::vector<std::string>& methods);

void write_result_row(std::ostream& out, const CellResult& cell);
void write_profile_csv(std::ostream& out, const Profile& profile);

struct BenchOutcome {
  std::vector<CellResult> cells;
  Profile value;
  Profile time;
};

/// Generates every (dim, seed) instance, runs every method on it in a worker
/// pool and writes results.csv, profile_value.csv and profile_time.csv into
/// config.output_dir. Failed cells are recorded, not fatal.
BenchOutcome run_bench(const BenchConfig& config, std::ostream& log);

}  // namespace l0pen::cli
