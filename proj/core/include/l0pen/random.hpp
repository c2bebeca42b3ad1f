#pragma once

#include <cstdint>
#include <random>

#include "l0pen/types.hpp"

namespace l0pen {

/// Reproducible normal variates for instance generation.
///
/// Engine: std::mt19937_64 seeded with the instance seed (the engine's output
/// sequence is fixed by the C++ standard). Uniforms are (u >> 11 + 0.5) * 2^-53,
/// which lies in (0, 1). Normals come from the Box-Muller transform in pairs
/// (r cos(2 pi u2), r sin(2 pi u2)) with r = sqrt(-2 log u1), cosine first.
/// std::normal_distribution is not used because its algorithm is
/// implementation-defined.
class Rng {
 public:
  static constexpr const char* kName = "mt19937_64+box-muller";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double normal();

  /// Fills row by row.
  Matrix normal_matrix(Index rows, Index cols);
  Vector normal_vector(Index n);

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace l0pen
