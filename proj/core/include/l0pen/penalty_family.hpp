#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "l0pen/types.hpp"

namespace l0pen {

/// A separable penalty p(y) = sum_i p_i(y_i) used in place of rho * ||x||_0.
///
/// Each coordinate function is convex with a unique minimizer s > 0 and is
/// scaled so that p_i(0) - p_i(s) = rho. All coordinates share one p_i.
class PenaltyFamily {
 public:
  using ScalarFn = std::function<double(double)>;

  /// `minimizer` must be the argmin of `value`; the minimum value is
  /// computed from it. No axiom checking happens here, see check_axioms().
  PenaltyFamily(std::string name, double rho, ScalarFn value, ScalarFn derivative,
                double minimizer);

  const std::string& name() const { return name_; }
  double rho() const { return rho_; }
  /// s_rho, the unique minimizer of a coordinate function.
  double minimizer() const { return minimizer_; }
  /// m_rho = p_i(s_rho).
  double min_value() const { return min_value_; }

  double value(double t) const { return value_(t); }
  double derivative(double t) const { return derivative_(t); }

  /// p(y) = sum_i p_i(y_i).
  double total(const Eigen::Ref<const Vector>& y) const;
  /// Componentwise derivative.
  Vector gradient(const Eigen::Ref<const Vector>& y) const;
  /// M_rho = n * m_rho.
  double min_total(Index n) const { return static_cast<double>(n) * min_value_; }

 private:
  std::string name_;
  double rho_;
  ScalarFn value_;
  ScalarFn derivative_;
  double minimizer_;
  double min_value_;
};

/// p(t) = rho * t * (t - 2); minimizer 1, minimum -rho.
PenaltyFamily make_quadratic(double rho);

/// p(t) = 0.5 * (t - sqrt(2 rho))^2; minimizer sqrt(2 rho), minimum 0.
PenaltyFamily make_shifted_quadratic(double rho);

/// Huber smoothing of c * |t - 1| with half-width `delta` in (0, 1).
///
/// p(t) = c |t - 1|                              for |t - 1| >= delta
///      = c ((t - 1)^2 / (2 delta) + delta / 2)  for |t - 1| <  delta
///
/// with c = rho / (1 - delta / 2) so that p(0) - p(1) = rho exactly.
PenaltyFamily make_huber(double rho, double delta = 0.5);

/// Parses "quadratic", "shifted" or "huber" / "huber(<delta>)".
PenaltyFamily family_from_name(std::string_view spec, double rho);

/// Names accepted by family_from_name(), for error messages.
std::vector<std::string> family_names();

struct AxiomReport {
  bool passed = true;
  double scaling_residual = 0.0;   // |p(0) - p(s) - rho|
  double max_fd_error = 0.0;       // worst relative derivative error
  std::vector<std::string> failures;

  explicit operator bool() const { return passed; }
};

/// Numerically checks convexity with a unique positive minimizer, the
/// rho-scaling, and derivative consistency on `grid` points spanning
/// [-2 s, 4 s]. Requires grid >= 100.
AxiomReport check_axioms(const PenaltyFamily& family, int grid = 1000);

}  // namespace l0pen
