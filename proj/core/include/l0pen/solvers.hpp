#pragma once

#include <functional>
#include <vector>

#include "l0pen/core.hpp"

namespace l0pen {

// ---------------------------------------------------------------------------
// Options

struct SpgOptions {
  double beta = 1e-4;             // Armijo parameter, in (0, 1)
  double sigma_min = 1e-10;       // spectral step safeguards
  double sigma_max = 1e10;
  int memory = 10;                // nonmonotone window M
  long max_iter = 1000;
  double stat_tol = 1e-4;         // on ||P(z - grad F(z)) - z||_inf
  int no_progress_window = 10;    // 0 disables the stall test
  double backtrack_factor = 0.5;  // t_new = factor * t, factor in [0.1, 0.5]

  void validate() const;
};

struct ProxGradOptions {
  double sufficient_decrease = 1e-4;  // c in phi(z+) <= ref - c ||z+ - z||^2 / gamma
  double sigma_min = 1e-10;           // step gamma is clamped to [1/sigma_max, 1/sigma_min]
  double sigma_max = 1e10;
  int memory = 10;
  long max_iter = 10000;
  double stat_tol = 1e-5;             // on ||z+ - z||_inf / gamma

  void validate() const;
};

enum class ComplementarityMeasure {
  kMax,  // max_i |x_i| y_i
  kSum,  // sum_i |x_i| y_i, i.e. <|C|, Y>_F for matrix variables
};

struct OuterOptions {
  double alpha0 = 1.0;
  double alpha_growth = 2.0;
  double comp_tol = 1e-3;
  int max_outer = 50;
  ComplementarityMeasure measure = ComplementarityMeasure::kMax;
  double zero_tol = kDefaultZeroTol;

  void validate() const;
};

enum class InnerSolver { kSpg, kProxGrad };

struct ExactPenaltyOptions {
  InnerSolver inner = InnerSolver::kSpg;
  SpgOptions spg;
  ProxGradOptions prox;
  OuterOptions outer;
};

// ---------------------------------------------------------------------------
// Generic inner engines

/// Spectral (Barzilai-Borwein) step: 1 when v is empty (first iteration) or
/// v^T v = 0, otherwise v^T w / v^T v clamped to [sigma_min, sigma_max].
double spectral_step(const Vector& v, const Vector& w, double sigma_min, double sigma_max);

/// Smooth objective over a closed convex set, for SPG.
struct SmoothProblem {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  std::function<Vector(const Vector&)> project;
  /// Optional in-place update applied after each accepted step. It must keep
  /// the point feasible and must not increase `value`.
  std::function<void(Vector&)> restore;
};

struct SpgStep {
  long k = 0;
  double sigma = 1.0;
  double reference = 0.0;               // F_ref
  double value = 0.0;                   // F(z^k)
  double directional_derivative = 0.0;  // grad F(z^k)^T d^k
  double step = 0.0;                    // accepted t_k
  double trial_value = 0.0;             // F(z^k + t_k d^k)
  double accepted_value = 0.0;          // F(z^{k+1}) after restore
  double direction_norm = 0.0;          // ||d^k||_inf
  int backtracks = 0;
};

struct SpgTrace {
  bool keep_iterates = false;
  std::vector<SpgStep> steps;
  std::vector<double> values;     // F(z^k), k = 0..K
  std::vector<Vector> iterates;   // z^k (after restore), if keep_iterates
  std::vector<Vector> trials;     // z^k + t_k d^k before restore, if keep_iterates
};

struct InnerResult {
  Vector z;
  double value = 0.0;
  double stationarity = 0.0;
  long iterations = 0;
  SolveStatus status = SolveStatus::kConverged;
  std::vector<double> objective_trace;
};

/// Nonmonotone spectral projected gradient.
InnerResult spg_minimize(const SmoothProblem& problem, Vector z0, const SpgOptions& options,
                         SpgTrace* trace = nullptr);

/// f1 smooth plus f2 with an exact prox.
struct CompositeProblem {
  std::function<double(const Vector&)> smooth_value;
  std::function<Vector(const Vector&)> smooth_gradient;
  std::function<double(const Vector&)> nonsmooth_value;
  /// prox(z, gamma) = argmin_w f2(w) + ||w - z||^2 / (2 gamma)
  std::function<Vector(const Vector&, double)> prox;
};

struct ProxGradStep {
  long k = 0;
  double gamma = 1.0;
  double reference = 0.0;     // max of the last M composite values
  double value = 0.0;         // composite value at the accepted point
  double step_sq_norm = 0.0;  // ||z^{k+1} - z^k||^2
  int backtracks = 0;
};

struct ProxGradTrace {
  std::vector<ProxGradStep> steps;
  std::vector<double> values;  // composite values, k = 0..K
};

/// Nonmonotone proximal gradient with Barzilai-Borwein step reset.
InnerResult proxgrad_minimize(const CompositeProblem& problem, Vector z0,
                              const ProxGradOptions& options, ProxGradTrace* trace = nullptr);

// ---------------------------------------------------------------------------
// Penalized problem Pen(alpha)

/// Pen(alpha) for a given problem, family and alpha, in two equivalent forms:
/// the epigraph form F(x, s, y) = f(x) + p(y) + alpha s^T y over
/// {x in X, |x_S| <= s, y >= 0} stacked as z = [x; s; y], and the composite
/// form f(x) + p(y) + alpha |x_S|^T y over w = [x; y].
class PenalizedProblem {
 public:
  PenalizedProblem(const SpoProblem& problem, const PenaltyFamily& family, double alpha);

  Index dim() const { return problem_->dim; }
  Index sparse_dim() const { return problem_->sparse_dim; }
  double alpha() const { return alpha_; }

  Vector pack(const PenaltyIterate& it) const;
  PenaltyIterate unpack(const Vector& z) const;

  double epigraph_value(const Vector& z) const;
  Vector epigraph_gradient(const Vector& z) const;
  /// Projection onto the epigraph-form feasible set.
  Vector project(const Vector& z) const;
  /// s <- |x_S|.
  void overwrite_s(Vector& z) const;

  SmoothProblem smooth_form() const;
  /// Requires problem.sparse_block_free.
  CompositeProblem composite_form() const;

  /// ||P(z - grad F(z)) - z||_inf for the epigraph form.
  double pg_residual(const PenaltyIterate& it) const;

 private:
  const SpoProblem* problem_;
  const PenaltyFamily* family_;
  double alpha_;
};

/// One SPG solve of Pen(alpha) from `start` (projected onto the feasible set
/// first). s = |x_S| holds after every iteration.
SolveReport spg_solve(const SpoProblem& problem, const PenaltyFamily& family, double alpha,
                      const PenaltyIterate& start, const SpgOptions& options,
                      SpgTrace* trace = nullptr, double zero_tol = kDefaultZeroTol);

/// One proximal gradient solve of Pen(alpha) from `start`.
SolveReport proxgrad_solve(const SpoProblem& problem, const PenaltyFamily& family, double alpha,
                           const PenaltyIterate& start, const ProxGradOptions& options,
                           ProxGradTrace* trace = nullptr, double zero_tol = kDefaultZeroTol);

/// Outer loop: solve Pen(alpha_k) for alpha_k = alpha0 * growth^k with warm
/// starts until the complementarity measure drops to comp_tol. The initial
/// iterate is (x0, |x0_S|, y_star(x0_S)). When `traces` is given, one SPG
/// trace per outer iteration is appended (SPG inner solver only).
/// Status is kConverged only when complementarity reached comp_tol and the
/// last inner solve met its stationarity tolerance; otherwise the inner
/// status (or kMaxOuter) is reported.
SolveReport exact_penalty_solve(const SpoProblem& problem, const PenaltyFamily& family,
                                const Vector& x0, const ExactPenaltyOptions& options,
                                std::vector<SpgTrace>* traces = nullptr,
                                bool keep_iterates = false);

// ---------------------------------------------------------------------------
// Thresholding baselines

/// l0 prox with parameter tau = gamma * rho: keeps z_i iff z_i^2 >= 2 tau.
Vector hard_threshold_prox(const Eigen::Ref<const Vector>& z, double tau);

/// l1 prox: sign(z_i) max(|z_i| - tau, 0).
Vector soft_threshold_prox(const Eigen::Ref<const Vector>& z, double tau);

enum class Thresholding { kHard, kSoft };

/// Proximal gradient on f(x) + rho ||x_S||_0 (hard) or f(x) + rho ||x_S||_1
/// (soft). Requires problem.sparse_block_free. The report's spo_value is
/// always measured with the l0 term.
SolveReport threshold_solve(const SpoProblem& problem, Thresholding kind, const Vector& x0,
                            const ProxGradOptions& options, double zero_tol = kDefaultZeroTol);

}  // namespace l0pen
