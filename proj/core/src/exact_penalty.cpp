#include <chrono>
#include <cmath>
#include <utility>

#include "l0pen/residuals.hpp"
#include "l0pen/solvers.hpp"

namespace l0pen {

void OuterOptions::validate() const {
  require(alpha0 > 0.0, "outer: alpha0 must be positive");
  require(alpha_growth > 1.0, "outer: alpha_growth must exceed 1");
  require(comp_tol > 0.0, "outer: comp_tol must be positive");
  require(max_outer >= 1, "outer: max_outer must be positive");
  require(zero_tol >= 0.0, "outer: zero_tol must be nonnegative");
}

PenalizedProblem::PenalizedProblem(const SpoProblem& problem, const PenaltyFamily& family,
                                   double alpha)
    : problem_(&problem), family_(&family), alpha_(alpha) {
  require(alpha > 0.0, "penalized problem: alpha must be positive");
}

Vector PenalizedProblem::pack(const PenaltyIterate& it) const {
  const Index n = dim();
  const Index k = sparse_dim();
  require_dim(it.x.size(), n, "pack x");
  require_dim(it.s.size(), k, "pack s");
  require_dim(it.y.size(), k, "pack y");
  Vector z(n + 2 * k);
  z << it.x, it.s, it.y;
  return z;
}

PenaltyIterate PenalizedProblem::unpack(const Vector& z) const {
  const Index n = dim();
  const Index k = sparse_dim();
  require_dim(z.size(), n + 2 * k, "unpack");
  return {z.head(n), z.segment(n, k), z.tail(k)};
}

double PenalizedProblem::epigraph_value(const Vector& z) const {
  const Index n = dim();
  const Index k = sparse_dim();
  const auto s = z.segment(n, k);
  const auto y = z.tail(k);
  return problem_->objective(z.head(n)) + family_->total(y) + alpha_ * s.dot(y);
}

Vector PenalizedProblem::epigraph_gradient(const Vector& z) const {
  const Index n = dim();
  const Index k = sparse_dim();
  const auto s = z.segment(n, k);
  const auto y = z.tail(k);
  Vector g(z.size());
  g.head(n) = problem_->gradient(z.head(n));
  g.segment(n, k) = alpha_ * y;
  g.tail(k) = family_->gradient(y) + alpha_ * s;
  return g;
}

Vector PenalizedProblem::project(const Vector& z) const {
  const Index n = dim();
  const Index k = sparse_dim();
  Vector x = z.head(n);
  Vector s = z.segment(n, k);
  problem_->epigraph(x, s);
  Vector out(z.size());
  out << x, s, z.tail(k).cwiseMax(0.0);
  return out;
}

void PenalizedProblem::overwrite_s(Vector& z) const {
  const Index n = dim();
  const Index k = sparse_dim();
  z.segment(n, k) = z.head(k).cwiseAbs();
}

SmoothProblem PenalizedProblem::smooth_form() const {
  return {[this](const Vector& z) { return epigraph_value(z); },
          [this](const Vector& z) { return epigraph_gradient(z); },
          [this](const Vector& z) { return project(z); },
          [this](Vector& z) { overwrite_s(z); }};
}

CompositeProblem PenalizedProblem::composite_form() const {
  if (!problem_->sparse_block_free) {
    throw InvalidArgument("problem '" + problem_->name +
                          "' constrains its sparse block; the prox form does not apply");
  }
  const Index n = dim();
  const Index k = sparse_dim();
  CompositeProblem c;
  c.smooth_value = [this, n, k](const Vector& w) {
    return problem_->objective(w.head(n)) + family_->total(w.tail(k));
  };
  c.smooth_gradient = [this, n, k](const Vector& w) {
    Vector g(w.size());
    g.head(n) = problem_->gradient(w.head(n));
    g.tail(k) = family_->gradient(w.tail(k));
    return g;
  };
  c.nonsmooth_value = [this, n, k](const Vector& w) {
    return alpha_ * w.head(k).cwiseAbs().dot(w.tail(k));
  };
  c.prox = [this, n, k](const Vector& w, double gamma) {
    Vector out(w.size());
    for (Index i = 0; i < k; ++i) {
      const auto p = prox_sp(w[i], w[n + i], alpha_, gamma);
      out[i] = p.x;
      out[n + i] = p.y;
    }
    if (n > k) {
      Vector x = w.head(n);
      x.head(k) = out.head(k);
      out.head(n) = problem_->feasible.project(x);
    }
    return out;
  };
  return c;
}

double PenalizedProblem::pg_residual(const PenaltyIterate& it) const {
  const Vector z = pack(it);
  return (project(z - epigraph_gradient(z)) - z).lpNorm<Eigen::Infinity>();
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void fill_summary(const SpoProblem& problem, const PenaltyFamily& family, double alpha,
                  double zero_tol, SolveReport& report) {
  const auto& it = report.final_iterate;
  const auto xs = it.x.head(problem.sparse_dim);
  report.spo_value = spo_objective(problem, it.x, zero_tol);
  report.l0 = l0_norm(xs, zero_tol);
  report.penalty_value = penalty_objective(problem, family, it, alpha);
  report.complementarity = complementarity(xs, it.y);
  report.complementarity_sum = complementarity_sum(xs, it.y);
  report.alpha_final = alpha;
}

PenaltyIterate with_exact_s(const SpoProblem& problem, Vector x, Vector y) {
  Vector s = x.head(problem.sparse_dim).cwiseAbs();
  return {std::move(x), std::move(s), std::move(y)};
}

}  // namespace

SolveReport spg_solve(const SpoProblem& problem, const PenaltyFamily& family, double alpha,
                      const PenaltyIterate& start, const SpgOptions& options, SpgTrace* trace,
                      double zero_tol) {
  const auto t0 = Clock::now();
  const PenalizedProblem pen(problem, family, alpha);
  const InnerResult inner = spg_minimize(pen.smooth_form(), pen.pack(start), options, trace);

  SolveReport report;
  report.final_iterate = pen.unpack(inner.z);
  report.stationarity = inner.stationarity;
  report.inner_iterations = inner.iterations;
  report.status = inner.status;
  report.objective_trace = inner.objective_trace;
  fill_summary(problem, family, alpha, zero_tol, report);
  report.wall_time = seconds_since(t0);
  return report;
}

SolveReport proxgrad_solve(const SpoProblem& problem, const PenaltyFamily& family, double alpha,
                           const PenaltyIterate& start, const ProxGradOptions& options,
                           ProxGradTrace* trace, double zero_tol) {
  const auto t0 = Clock::now();
  const PenalizedProblem pen(problem, family, alpha);
  const Index n = problem.dim;
  const Index k = problem.sparse_dim;
  require_dim(start.x.size(), n, "proxgrad_solve x");
  require_dim(start.y.size(), k, "proxgrad_solve y");

  Vector w0(n + k);
  w0 << start.x, start.y.cwiseMax(0.0);
  const InnerResult inner = proxgrad_minimize(pen.composite_form(), std::move(w0), options, trace);

  SolveReport report;
  report.final_iterate = with_exact_s(problem, inner.z.head(n), inner.z.tail(k));
  report.stationarity = inner.stationarity;
  report.inner_iterations = inner.iterations;
  report.status = inner.status;
  report.objective_trace = inner.objective_trace;
  fill_summary(problem, family, alpha, zero_tol, report);
  report.wall_time = seconds_since(t0);
  return report;
}

SolveReport exact_penalty_solve(const SpoProblem& problem, const PenaltyFamily& family,
                                const Vector& x0, const ExactPenaltyOptions& options,
                                std::vector<SpgTrace>* traces, bool keep_iterates) {
  const auto t0 = Clock::now();
  problem.validate();
  options.outer.validate();
  require_dim(x0.size(), problem.dim, "exact_penalty_solve x0");
  require(std::abs(family.rho() - problem.rho) <= 1e-12 * std::max(1.0, problem.rho),
          "exact_penalty_solve: family rho differs from problem rho");
  if (const auto axioms = check_axioms(family, 200); !axioms) {
    throw InvalidArgument("penalty family '" + family.name() +
                          "' fails its axioms: " + axioms.failures.front());
  }

  const auto& outer = options.outer;
  PenaltyIterate it = iterate_from_x(problem, family, x0, outer.zero_tol);

  SolveReport report;
  if (options.inner == InnerSolver::kProxGrad && !problem.sparse_block_free) {
    report.final_iterate = it;
    report.status = SolveStatus::kUnsupported;
    fill_summary(problem, family, outer.alpha0, outer.zero_tol, report);
    report.wall_time = seconds_since(t0);
    return report;
  }

  double alpha = outer.alpha0;
  report.status = SolveStatus::kMaxOuter;
  for (int k = 0; k < outer.max_outer; ++k) {
    SolveReport inner;
    if (options.inner == InnerSolver::kSpg) {
      SpgTrace* trace = nullptr;
      if (traces) {
        traces->emplace_back();
        traces->back().keep_iterates = keep_iterates;
        trace = &traces->back();
      }
      inner = spg_solve(problem, family, alpha, it, options.spg, trace, outer.zero_tol);
    } else {
      inner = proxgrad_solve(problem, family, alpha, it, options.prox, nullptr, outer.zero_tol);
    }
    it = std::move(inner.final_iterate);

    const auto xs = it.x.head(problem.sparse_dim);
    const double comp = outer.measure == ComplementarityMeasure::kMax
                            ? complementarity(xs, it.y)
                            : complementarity_sum(xs, it.y);
    report.inner_iterations += inner.inner_iterations;
    report.outer_iterations = k + 1;
    report.stationarity = inner.stationarity;
    report.alpha_trace.push_back(alpha);
    report.complementarity_trace.push_back(comp);
    report.stationarity_trace.push_back(inner.stationarity);
    report.inner_status_trace.push_back(inner.status);
    report.objective_trace.push_back(inner.penalty_value);

    if (comp <= outer.comp_tol) {
      // Complementarity reached, but the point is only as stationary as the
      // last inner solve made it.
      report.status = inner.status;
      break;
    }
    if (k + 1 < outer.max_outer) alpha *= outer.alpha_growth;
  }

  report.final_iterate = std::move(it);
  fill_summary(problem, family, alpha, outer.zero_tol, report);
  report.wall_time = seconds_since(t0);
  return report;
}

}  // namespace l0pen
