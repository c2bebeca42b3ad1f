#pragma once

#include <filesystem>
#include <string>

#include "l0pen/core.hpp"

namespace l0pen {

/// Provenance stored next to a SolveReport.
struct ReportMeta {
  std::string method;         // e.g. "pen-spg"
  std::string family;         // penalty family name
  std::string instance_hash;
  std::string config_hash;
  double zero_tol = kDefaultZeroTol;
  double stat_tol = 1e-4;     // inner tolerance used by the solve
};

std::string report_to_string(const SolveReport& report, const ReportMeta& meta);
/// Inverse of report_to_string (iterates, scalars, traces). Throws Error on
/// malformed input.
std::pair<SolveReport, ReportMeta> report_from_string(const std::string& text);

void save_report(const std::filesystem::path& path, const SolveReport& report,
                 const ReportMeta& meta);
std::pair<SolveReport, ReportMeta> load_report(const std::filesystem::path& path);

}  // namespace l0pen
