#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <utility>

#include "l0pen/solvers.hpp"

namespace l0pen {

void SpgOptions::validate() const {
  require(beta > 0.0 && beta < 1.0, "SPG: beta must lie in (0, 1)");
  require(sigma_min > 0.0 && sigma_min < sigma_max, "SPG: need 0 < sigma_min < sigma_max");
  require(memory >= 1, "SPG: memory must be at least 1");
  require(max_iter >= 1, "SPG: max_iter must be positive");
  require(stat_tol > 0.0, "SPG: stat_tol must be positive");
  require(no_progress_window >= 0, "SPG: no_progress_window must be nonnegative");
  require(backtrack_factor >= 0.1 && backtrack_factor <= 0.5,
          "SPG: backtrack_factor must lie in [0.1, 0.5]");
}

double spectral_step(const Vector& v, const Vector& w, double sigma_min, double sigma_max) {
  if (v.size() == 0) return 1.0;
  require_dim(w.size(), v.size(), "spectral_step");
  const double vv = v.squaredNorm();
  if (vv == 0.0) return 1.0;
  return std::max(sigma_min, std::min(v.dot(w) / vv, sigma_max));
}

namespace {

constexpr double kMinStep = 1e-16;

double max_of(const std::deque<double>& window) {
  return *std::max_element(window.begin(), window.end());
}

}  // namespace

InnerResult spg_minimize(const SmoothProblem& problem, Vector z0, const SpgOptions& options,
                         SpgTrace* trace) {
  options.validate();
  InnerResult result;

  Vector z = problem.project(z0);
  if (problem.restore) problem.restore(z);
  double f = problem.value(z);
  Vector g = problem.gradient(z);

  std::deque<double> window{f};
  result.objective_trace.push_back(f);
  if (trace) {
    trace->values.push_back(f);
    if (trace->keep_iterates) trace->iterates.push_back(z);
  }

  int stalled = 0;
  Vector z_prev;
  Vector g_prev;
  result.status = SolveStatus::kMaxIterations;

  long k = 0;
  for (; k < options.max_iter; ++k) {
    const double sigma = k == 0 ? 1.0
                                : spectral_step(z - z_prev, g - g_prev, options.sigma_min,
                                                options.sigma_max);
    const Vector d = problem.project(z - g / sigma) - z;
    const double residual =
        sigma == 1.0 ? d.lpNorm<Eigen::Infinity>()
                     : (problem.project(z - g) - z).lpNorm<Eigen::Infinity>();
    result.stationarity = residual;
    if (residual <= options.stat_tol) {
      result.status = SolveStatus::kConverged;
      break;
    }

    const double gd = g.dot(d);
    const double reference = max_of(window);
    double t = 1.0;
    int backtracks = 0;
    Vector trial = z + d;
    double f_trial = problem.value(trial);
    while (!(f_trial <= reference + t * options.beta * gd)) {
      t *= options.backtrack_factor;
      ++backtracks;
      if (t < kMinStep) {
        result.status = SolveStatus::kLineSearchFailure;
        break;
      }
      trial = z + t * d;
      f_trial = problem.value(trial);
    }
    if (result.status == SolveStatus::kLineSearchFailure) break;

    SpgStep step;
    step.k = k;
    step.sigma = sigma;
    step.reference = reference;
    step.value = f;
    step.directional_derivative = gd;
    step.step = t;
    step.trial_value = f_trial;
    step.direction_norm = d.lpNorm<Eigen::Infinity>();
    step.backtracks = backtracks;
    if (trace && trace->keep_iterates) trace->trials.push_back(trial);

    z_prev = std::move(z);
    g_prev = std::move(g);
    z = std::move(trial);
    if (problem.restore) {
      problem.restore(z);
      f = problem.value(z);
    } else {
      f = f_trial;
    }
    g = problem.gradient(z);
    step.accepted_value = f;

    window.push_back(f);
    if (static_cast<int>(window.size()) > options.memory) window.pop_front();
    result.objective_trace.push_back(f);
    if (trace) {
      trace->steps.push_back(step);
      trace->values.push_back(f);
      if (trace->keep_iterates) trace->iterates.push_back(z);
    }

    // Stalled: the attained value stopped changing. Nonmonotone increases
    // count as movement.
    const double change = f - step.value;
    if (std::abs(change) > 1e-12 * std::max(1.0, std::abs(step.value))) {
      stalled = 0;
    } else if (options.no_progress_window > 0 && ++stalled >= options.no_progress_window) {
      result.status = SolveStatus::kNoProgress;
      ++k;
      break;
    }
  }

  if (result.status == SolveStatus::kMaxIterations || result.status == SolveStatus::kNoProgress) {
    result.stationarity = (problem.project(z - g) - z).lpNorm<Eigen::Infinity>();
    if (result.stationarity <= options.stat_tol) result.status = SolveStatus::kConverged;
  }
  result.iterations = k;
  result.value = f;
  result.z = std::move(z);
  return result;
}

}  // namespace l0pen
