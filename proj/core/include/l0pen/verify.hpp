#pragma once

#include <vector>

#include "l0pen/core.hpp"
#include "l0pen/problems.hpp"
#include "l0pen/residuals.hpp"

namespace l0pen {

class InfeasiblePoint : public Error {
 public:
  using Error::Error;
};

/// Projected-gradient residual of min f over X with x_i fixed to zero on the
/// zero set {i in S : |x_i| <= zero_tol}:  ||P(x - grad f(x)) - x||_inf.
/// Throws InfeasiblePoint if the feasibility residual of x exceeds feas_tol.
double tnlp_stationarity(const SpoProblem& problem, const Vector& x,
                         double zero_tol = kDefaultZeroTol, double feas_tol = 1e-6);

struct StationarityCertificate {
  double comp_residual = 0.0;   // max |x_i| y_i
  double pg_residual = 0.0;     // Pen(alpha) projected-gradient residual
  double tnlp_residual = 0.0;   // +inf when x is infeasible
  double y_block_residual = 0.0;  // max over y_i > zero_tol of |p'(y_i) + alpha |x_i||
  double feasibility = 0.0;
  bool feasible = true;
  std::vector<Index> zero_support;  // I_0(x) within the sparse block

  /// All residuals at or below `tol` and x feasible.
  bool passed(double tol) const;
};

StationarityCertificate certificate(const SpoProblem& problem, const PenaltyFamily& family,
                                    const PenaltyIterate& it, double alpha,
                                    double zero_tol = kDefaultZeroTol, double feas_tol = 1e-6);

StationarityCertificate certificate(const SpoProblem& problem, const PenaltyFamily& family,
                                    const SolveReport& report, double alpha,
                                    double zero_tol = kDefaultZeroTol, double feas_tol = 1e-6);

struct YRecovery {
  double on_zero_set = 0.0;  // max |y_i - s_rho| over I_0(x)
  double off_zero_set = 0.0; // max y_i elsewhere
};

YRecovery y_recovery_error(const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& y,
                           const PenaltyFamily& family, double zero_tol = kDefaultZeroTol);

struct OracleResult {
  Vector x;
  double value = 0.0;
  std::vector<Index> support;
  long supports_tried = 0;
  long singular_supports = 0;
};

inline constexpr Index kOracleMaxDim = 16;

/// Global minimum of the sparse portfolio problem by enumerating every
/// nonempty support and solving the equality-constrained QP on it through
/// its KKT system. Ties go to the smaller support, then to the
/// lexicographically smallest one. Requires n <= 16.
OracleResult spo_bruteforce(const PortfolioInstance& instance, double rho, unsigned threads = 1);

}  // namespace l0pen
