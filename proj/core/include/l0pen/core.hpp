#pragma once

#include <functional>
#include <string>
#include <vector>

#include "l0pen/geometry.hpp"
#include "l0pen/penalty_family.hpp"
#include "l0pen/types.hpp"

namespace l0pen {

using ObjectiveFn = std::function<double(const Vector&)>;
using GradientFn = std::function<Vector(const Vector&)>;

/// Projects (x, s) jointly onto {x in X, |x_i| <= s_i for i < sparse_dim}.
/// `s` has length sparse_dim.
using EpigraphProjectorFn = std::function<void(Vector& x, Vector& s)>;

/// Projects x onto X intersected with {x_i = 0 : i < sparse_dim, !keep[i]}.
using RestrictedProjectorFn = std::function<Vector(const Vector& x, const std::vector<bool>& keep)>;

/// min f(x) + rho * ||x_{0:k}||_0  s.t.  x in X.
///
/// The l0 term acts on the leading `sparse_dim` coordinates; the remaining
/// coordinates (if any) carry no sparsity term. The constraint set X is
/// only available through projections.
struct SpoProblem {
  std::string name;
  Index dim = 0;
  Index sparse_dim = 0;
  double rho = 1.0;
  ObjectiveFn objective;
  GradientFn gradient;
  Projector feasible;
  EpigraphProjectorFn epigraph;
  RestrictedProjectorFn restricted;
  /// True when X = R^k x X_rest, so the sparse block can be handled by a
  /// coordinatewise prox without touching the constraint.
  bool sparse_block_free = false;

  /// Throws if fields are missing or inconsistent.
  void validate() const;
};

/// Builds a problem whose constraint leaves the sparse block free and acts on
/// the remaining coordinates through `rest` (a projector on the full vector
/// that must be the identity on the sparse block).
SpoProblem make_separable_problem(std::string name, Index dim, Index sparse_dim, double rho,
                                  ObjectiveFn objective, GradientFn gradient, Projector rest);

/// Unconstrained problem: X = R^n, l0 term on every coordinate.
SpoProblem make_unconstrained_problem(std::string name, Index dim, double rho,
                                      ObjectiveFn objective, GradientFn gradient);

/// Iterate of the penalized problem. x has length dim; s and y have length
/// sparse_dim and pair with the leading block of x.
struct PenaltyIterate {
  Vector x;
  Vector s;
  Vector y;
};

enum class SolveStatus {
  kConverged,          // stationarity / complementarity tolerance met
  kMaxIterations,      // inner iteration cap reached
  kNoProgress,         // inner objective stalled over the progress window
  kMaxOuter,           // outer loop exhausted with complementarity above tolerance
  kLineSearchFailure,  // step length underflow
  kUnsupported,        // method not applicable to the problem structure
};

const char* to_string(SolveStatus status);
SolveStatus solve_status_from_string(const std::string& text);

struct SolveReport {
  PenaltyIterate final_iterate;
  double spo_value = 0.0;
  double penalty_value = 0.0;
  double complementarity = 0.0;       // max_i |x_i| y_i
  double complementarity_sum = 0.0;   // sum_i |x_i| y_i
  double stationarity = 0.0;
  long inner_iterations = 0;
  int outer_iterations = 0;
  double wall_time = 0.0;  // seconds
  double alpha_final = 0.0;
  Index l0 = 0;
  SolveStatus status = SolveStatus::kConverged;

  std::vector<double> objective_trace;
  // One entry per outer iteration (empty for single inner solves).
  std::vector<double> alpha_trace;
  std::vector<double> complementarity_trace;
  std::vector<double> stationarity_trace;
  std::vector<SolveStatus> inner_status_trace;
};

/// #{i : |x_i| > zero_tol}.
Index l0_norm(const Eigen::Ref<const Vector>& x, double zero_tol = kDefaultZeroTol);

/// f(x) + rho * ||x_{0:k}||_0.
double spo_objective(const SpoProblem& problem, const Vector& x,
                     double zero_tol = kDefaultZeroTol);

/// f(x) + p(y) + alpha * |x_{0:k}|^T y.
double penalty_objective(const SpoProblem& problem, const PenaltyFamily& family,
                         const PenaltyIterate& it, double alpha);

/// y_i = s_rho where |x_i| <= zero_tol, else 0.
Vector y_star_from_x(const Eigen::Ref<const Vector>& x, const PenaltyFamily& family,
                     double zero_tol = kDefaultZeroTol);

/// Iterate (x, |x_S|, y_star(x_S)) for the sparse block S of `problem`.
PenaltyIterate iterate_from_x(const SpoProblem& problem, const PenaltyFamily& family,
                              const Vector& x, double zero_tol = kDefaultZeroTol);

struct GradientCheck {
  double max_relative_error = 0.0;
  bool passed = false;
};

/// Central finite-difference check of problem.gradient at x. Relative error
/// per coordinate is |fd - g| / max(1, |g|, |fd|).
GradientCheck check_gradient(const ObjectiveFn& f, const GradientFn& grad, const Vector& x,
                             double tolerance = 1e-5);

}  // namespace l0pen
