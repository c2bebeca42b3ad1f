#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>

#include "l0pen/problems.hpp"

namespace l0pen {

inline constexpr int kInstanceFormatVersion = 1;

struct RngInfo {
  std::string name;
  std::uint64_t seed = 0;

  bool operator==(const RngInfo&) const = default;
};

/// Contents of an instance file.
///
/// JSON layout:
///   { "format_version": 1,
///     "kind": "portfolio" | "dictionary",
///     "shapes": {"n": ...} | {"n": ..., "l": ..., "m": ...},
///     "rho": ..., "beta": ... (portfolio only),
///     "matrices": {"Q", "mu"} | {"Z", optional "C0", "D0"},
///     "rng": {"name": ..., "seed": ...} (optional) }
/// Matrices are flat row-major arrays written with round-trip precision.
struct InstanceFile {
  std::variant<PortfolioInstance, DictionaryInstance> problem;
  /// Dictionary starting point (C0, D0); empty for portfolio files.
  std::optional<std::pair<Matrix, Matrix>> start;
  std::optional<RngInfo> rng;

  bool is_portfolio() const { return std::holds_alternative<PortfolioInstance>(problem); }
  const PortfolioInstance& portfolio() const { return std::get<PortfolioInstance>(problem); }
  const DictionaryInstance& dictionary() const { return std::get<DictionaryInstance>(problem); }
  std::string kind() const { return is_portfolio() ? "portfolio" : "dictionary"; }
};

/// Parse or schema error. `where` names the offending field or the
/// "line L, column C" position of a syntax error.
class InstanceFormatError : public Error {
 public:
  InstanceFormatError(std::string where, const std::string& message)
      : Error(where + ": " + message), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

std::string instance_to_string(const InstanceFile& file);
InstanceFile instance_from_string(const std::string& text);

void save_instance(const std::filesystem::path& path, const InstanceFile& file);
InstanceFile load_instance(const std::filesystem::path& path);

/// FNV-1a 64-bit hash of the canonical serialization, as 16 hex digits.
std::string instance_hash(const InstanceFile& file);
std::string fnv1a_hex(const std::string& bytes);

/// Problem and default starting point for a loaded instance: the dense
/// (rho = 0) portfolio, or the stored (C0, D0) for dictionaries, else C = 0
/// with constant unit-norm D rows.
SpoProblem make_problem(const InstanceFile& file);
Vector default_start(const InstanceFile& file);

}  // namespace l0pen
