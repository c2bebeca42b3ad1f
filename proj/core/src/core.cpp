#include "l0pen/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace l0pen {

void SpoProblem::validate() const {
  require(dim > 0, "problem '" + name + "': dim must be positive");
  require(sparse_dim >= 0 && sparse_dim <= dim, "problem '" + name + "': bad sparse_dim");
  require(rho > 0.0, "problem '" + name + "': rho must be positive");
  require(static_cast<bool>(objective) && static_cast<bool>(gradient),
          "problem '" + name + "': objective and gradient are required");
  require(static_cast<bool>(feasible.project) && static_cast<bool>(feasible.residual),
          "problem '" + name + "': feasible projector is required");
  require(static_cast<bool>(epigraph), "problem '" + name + "': epigraph projector is required");
  require(static_cast<bool>(restricted),
          "problem '" + name + "': restricted projector is required");
}

SpoProblem make_separable_problem(std::string name, Index dim, Index sparse_dim, double rho,
                                  ObjectiveFn objective, GradientFn gradient, Projector rest) {
  SpoProblem p;
  p.name = std::move(name);
  p.dim = dim;
  p.sparse_dim = sparse_dim;
  p.rho = rho;
  p.objective = std::move(objective);
  p.gradient = std::move(gradient);
  p.sparse_block_free = true;
  p.feasible = rest;
  p.epigraph = [rest, sparse_dim](Vector& x, Vector& s) {
    project_abs_epigraph(x.head(sparse_dim), s);
    if (x.size() > sparse_dim) x = rest.project(x);
  };
  p.restricted = [rest, sparse_dim](const Vector& x, const std::vector<bool>& keep) {
    Vector z = x;
    for (Index i = 0; i < sparse_dim; ++i) {
      if (!keep[static_cast<std::size_t>(i)]) z[i] = 0.0;
    }
    return z.size() > sparse_dim ? rest.project(z) : z;
  };
  p.validate();
  return p;
}

SpoProblem make_unconstrained_problem(std::string name, Index dim, double rho,
                                      ObjectiveFn objective, GradientFn gradient) {
  return make_separable_problem(std::move(name), dim, dim, rho, std::move(objective),
                                std::move(gradient), free_projector(dim));
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kConverged: return "ok";
    case SolveStatus::kMaxIterations: return "max_iter";
    case SolveStatus::kNoProgress: return "no_progress";
    case SolveStatus::kMaxOuter: return "max_outer";
    case SolveStatus::kLineSearchFailure: return "line_search_failure";
    case SolveStatus::kUnsupported: return "unsupported";
  }
  return "unknown";
}

SolveStatus solve_status_from_string(const std::string& text) {
  constexpr std::array all = {SolveStatus::kConverged,         SolveStatus::kMaxIterations,
                              SolveStatus::kNoProgress,        SolveStatus::kMaxOuter,
                              SolveStatus::kLineSearchFailure, SolveStatus::kUnsupported};
  for (auto s : all) {
    if (text == to_string(s)) return s;
  }
  throw InvalidArgument("unknown solve status '" + text + "'");
}

Index l0_norm(const Eigen::Ref<const Vector>& x, double zero_tol) {
  require(zero_tol >= 0.0, "l0_norm: zero_tol must be nonnegative");
  return (x.array().abs() > zero_tol).count();
}

double spo_objective(const SpoProblem& problem, const Vector& x, double zero_tol) {
  require_dim(x.size(), problem.dim, "spo_objective");
  return problem.objective(x) +
         problem.rho * static_cast<double>(l0_norm(x.head(problem.sparse_dim), zero_tol));
}

double penalty_objective(const SpoProblem& problem, const PenaltyFamily& family,
                         const PenaltyIterate& it, double alpha) {
  require_dim(it.x.size(), problem.dim, "penalty_objective x");
  require_dim(it.y.size(), problem.sparse_dim, "penalty_objective y");
  if (it.y.size() > 0 && it.y.minCoeff() < 0.0) {
    throw InvalidArgument("penalty_objective: y must be nonnegative");
  }
  const auto xs = it.x.head(problem.sparse_dim);
  return problem.objective(it.x) + family.total(it.y) + alpha * xs.cwiseAbs().dot(it.y);
}

Vector y_star_from_x(const Eigen::Ref<const Vector>& x, const PenaltyFamily& family,
                     double zero_tol) {
  Vector y(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    y[i] = std::abs(x[i]) <= zero_tol ? family.minimizer() : 0.0;
  }
  return y;
}

PenaltyIterate iterate_from_x(const SpoProblem& problem, const PenaltyFamily& family,
                              const Vector& x, double zero_tol) {
  require_dim(x.size(), problem.dim, "iterate_from_x");
  const auto xs = x.head(problem.sparse_dim);
  return {x, xs.cwiseAbs(), y_star_from_x(xs, family, zero_tol)};
}

GradientCheck check_gradient(const ObjectiveFn& f, const GradientFn& grad, const Vector& x,
                             double tolerance) {
  const Vector g = grad(x);
  require_dim(g.size(), x.size(), "check_gradient");
  GradientCheck check;
  Vector probe = x;
  for (Index i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(x[i]));
    probe[i] = x[i] + h;
    const double up = f(probe);
    probe[i] = x[i] - h;
    const double down = f(probe);
    probe[i] = x[i];
    const double fd = (up - down) / (2.0 * h);
    const double err = std::abs(fd - g[i]) / std::max({1.0, std::abs(g[i]), std::abs(fd)});
    check.max_relative_error = std::max(check.max_relative_error, err);
  }
  check.passed = check.max_relative_error <= tolerance;
  return check;
}

}  // namespace l0pen
