#pragma once

#include <cstdint>
#include <utility>

#include "l0pen/core.hpp"

namespace l0pen {

/// min 0.5 x^T Q x - beta mu^T x + rho ||x||_0  s.t.  e^T x = 1.
struct PortfolioInstance {
  Matrix Q;
  Vector mu;
  double beta = 1.0;
  double rho = 1.0;

  Index dim() const { return mu.size(); }
  /// Q symmetric (1e-10) and positive semidefinite (min eigenvalue >= -1e-8).
  void validate() const;
};

/// min 0.5 ||D^T C - Z||_F^2 + rho ||C||_0  s.t.  ||row_i(D)||_2 <= 1,
/// with D (l x n), C (l x m), Z (n x m).
struct DictionaryInstance {
  Matrix Z;
  Index l = 0;
  Index n = 0;
  Index m = 0;
  double rho = 1.0;

  void validate() const;
};

/// Variables x, sparse block = all of x; X = {e^T x = 1} with the joint
/// (x, s) projection onto {e^T x = 1, |x| <= s}.
SpoProblem portfolio_problem(const PortfolioInstance& instance);

/// Equal-weight feasible start e / n.
Vector portfolio_start(Index n);

/// Minimizer of the smooth part over e^T x = 1 (the rho = 0 solution), from
/// the KKT system [Q e; e^T 0]. Minimum-norm solution when Q is singular.
Vector portfolio_dense_start(const PortfolioInstance& instance);

/// Variables x = [vec(C); vec(D)] (column-major); only C is sparse, D rows
/// are projected onto the unit ball.
SpoProblem dictionary_problem(const DictionaryInstance& instance);

Vector dictionary_pack(const Matrix& C, const Matrix& D);
std::pair<Matrix, Matrix> dictionary_unpack(const DictionaryInstance& instance, const Vector& x);

/// Q = A^T A / n + 1e-3 I and mu with entries from Rng(seed): A (row-major)
/// first, then mu.
PortfolioInstance gen_portfolio(Index n, std::uint64_t seed, double rho = 1.0, double beta = 1.0);

struct GeneratedDictionary {
  DictionaryInstance instance;
  Matrix C0;  // l x m, standard normal
  Matrix D0;  // l x n, standard normal then row-projected
};

/// Draw order from Rng(seed): C0, D0, ground-truth dictionary, ground-truth
/// codes (10% density), noise. Z = D_true^T C_true + 1e-2 * noise.
GeneratedDictionary gen_dictionary(Index n, Index l, Index m, std::uint64_t seed,
                                   double rho = 1.0);

}  // namespace l0pen
