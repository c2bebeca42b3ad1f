#include <algorithm>
#include <deque>
#include <limits>
#include <utility>

#include "l0pen/solvers.hpp"

namespace l0pen {

void ProxGradOptions::validate() const {
  require(sufficient_decrease > 0.0, "proxgrad: sufficient_decrease must be positive");
  require(sigma_min > 0.0 && sigma_min < sigma_max, "proxgrad: need 0 < sigma_min < sigma_max");
  require(memory >= 1, "proxgrad: memory must be at least 1");
  require(max_iter >= 1, "proxgrad: max_iter must be positive");
  require(stat_tol > 0.0, "proxgrad: stat_tol must be positive");
}

InnerResult proxgrad_minimize(const CompositeProblem& problem, Vector z0,
                              const ProxGradOptions& options, ProxGradTrace* trace) {
  options.validate();
  constexpr double kMinGamma = 1e-16;

  InnerResult result;
  Vector z = std::move(z0);
  double phi = problem.smooth_value(z) + problem.nonsmooth_value(z);
  Vector g = problem.smooth_gradient(z);

  std::deque<double> window{phi};
  result.objective_trace.push_back(phi);
  if (trace) trace->values.push_back(phi);

  Vector z_prev;
  Vector g_prev;
  result.status = SolveStatus::kMaxIterations;
  result.stationarity = std::numeric_limits<double>::infinity();

  long k = 0;
  for (; k < options.max_iter; ++k) {
    const double sigma = k == 0 ? 1.0
                                : spectral_step(z - z_prev, g - g_prev, options.sigma_min,
                                                options.sigma_max);
    double gamma = 1.0 / sigma;
    const double reference = *std::max_element(window.begin(), window.end());

    Vector candidate;
    double phi_candidate = 0.0;
    double step_sq = 0.0;
    int backtracks = 0;
    for (;;) {
      candidate = problem.prox(z - gamma * g, gamma);
      step_sq = (candidate - z).squaredNorm();
      phi_candidate = problem.smooth_value(candidate) + problem.nonsmooth_value(candidate);
      if (phi_candidate <= reference - options.sufficient_decrease * step_sq / gamma) break;
      gamma *= 0.5;
      ++backtracks;
      if (gamma < kMinGamma) {
        result.status = SolveStatus::kLineSearchFailure;
        break;
      }
    }
    if (result.status == SolveStatus::kLineSearchFailure) break;

    result.stationarity = (candidate - z).lpNorm<Eigen::Infinity>() / gamma;
    if (trace) {
      trace->steps.push_back({k, gamma, reference, phi_candidate, step_sq, backtracks});
      trace->values.push_back(phi_candidate);
    }

    z_prev = std::move(z);
    g_prev = std::move(g);
    z = std::move(candidate);
    phi = phi_candidate;
    g = problem.smooth_gradient(z);
    window.push_back(phi);
    if (static_cast<int>(window.size()) > options.memory) window.pop_front();
    result.objective_trace.push_back(phi);

    if (result.stationarity <= options.stat_tol) {
      result.status = SolveStatus::kConverged;
      ++k;
      break;
    }
  }

  result.iterations = k;
  result.value = phi;
  result.z = std::move(z);
  return result;
}

}  // namespace l0pen
