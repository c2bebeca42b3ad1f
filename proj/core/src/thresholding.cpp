#include <chrono>
#include <cmath>

#include "l0pen/residuals.hpp"
#include "l0pen/solvers.hpp"

namespace l0pen {

Vector hard_threshold_prox(const Eigen::Ref<const Vector>& z, double tau) {
  require(tau > 0.0, "hard_threshold_prox: tau must be positive");
  const double threshold = 2.0 * tau;
  Vector out(z.size());
  for (Index i = 0; i < z.size(); ++i) out[i] = z[i] * z[i] >= threshold ? z[i] : 0.0;
  return out;
}

Vector soft_threshold_prox(const Eigen::Ref<const Vector>& z, double tau) {
  require(tau > 0.0, "soft_threshold_prox: tau must be positive");
  Vector out(z.size());
  for (Index i = 0; i < z.size(); ++i) {
    const double shrunk = std::abs(z[i]) - tau;
    out[i] = shrunk > 0.0 ? std::copysign(shrunk, z[i]) : 0.0;
  }
  return out;
}

SolveReport threshold_solve(const SpoProblem& problem, Thresholding kind, const Vector& x0,
                            const ProxGradOptions& options, double zero_tol) {
  const auto t0 = std::chrono::steady_clock::now();
  problem.validate();
  require_dim(x0.size(), problem.dim, "threshold_solve x0");

  SolveReport report;
  report.status = SolveStatus::kUnsupported;
  report.final_iterate = {x0, x0.head(problem.sparse_dim).cwiseAbs(),
                          Vector::Zero(problem.sparse_dim)};

  if (problem.sparse_block_free) {
    const Index n = problem.dim;
    const Index k = problem.sparse_dim;
    const double rho = problem.rho;

    CompositeProblem c;
    c.smooth_value = problem.objective;
    c.smooth_gradient = problem.gradient;
    if (kind == Thresholding::kHard) {
      c.nonsmooth_value = [rho, k, zero_tol](const Vector& x) {
        return rho * static_cast<double>(l0_norm(x.head(k), zero_tol));
      };
    } else {
      c.nonsmooth_value = [rho, k](const Vector& x) { return rho * x.head(k).lpNorm<1>(); };
    }
    c.prox = [&problem, kind, rho, n, k](const Vector& z, double gamma) {
      Vector x = z;
      x.head(k) = kind == Thresholding::kHard ? hard_threshold_prox(z.head(k), gamma * rho)
                                              : soft_threshold_prox(z.head(k), gamma * rho);
      return n > k ? problem.feasible.project(x) : x;
    };

    const InnerResult inner = proxgrad_minimize(c, x0, options);
    const Vector& x = inner.z;
    const auto xs = x.head(k);
    // Thresholding has no auxiliary variable; y stays zero.
    report.final_iterate = {x, xs.cwiseAbs(), Vector::Zero(k)};
    report.stationarity = inner.stationarity;
    report.inner_iterations = inner.iterations;
    report.status = inner.status;
    report.objective_trace = inner.objective_trace;
  }

  const auto& it = report.final_iterate;
  report.spo_value = spo_objective(problem, it.x, zero_tol);
  report.l0 = l0_norm(it.x.head(problem.sparse_dim), zero_tol);
  report.penalty_value = report.spo_value;
  report.complementarity = complementarity(it.x.head(problem.sparse_dim), it.y);
  report.complementarity_sum = complementarity_sum(it.x.head(problem.sparse_dim), it.y);
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace l0pen
