#include "l0pen/penalty_family.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

namespace l0pen {

PenaltyFamily::PenaltyFamily(std::string name, double rho, ScalarFn value, ScalarFn derivative,
                             double minimizer)
    : name_(std::move(name)),
      rho_(rho),
      value_(std::move(value)),
      derivative_(std::move(derivative)),
      minimizer_(minimizer),
      min_value_(value_(minimizer)) {
  require(rho > 0.0, "penalty family: rho must be positive");
  require(minimizer > 0.0, "penalty family: minimizer must be positive");
}

double PenaltyFamily::total(const Eigen::Ref<const Vector>& y) const {
  double sum = 0.0;
  for (Index i = 0; i < y.size(); ++i) sum += value_(y[i]);
  return sum;
}

Vector PenaltyFamily::gradient(const Eigen::Ref<const Vector>& y) const {
  Vector g(y.size());
  for (Index i = 0; i < y.size(); ++i) g[i] = derivative_(y[i]);
  return g;
}

PenaltyFamily make_quadratic(double rho) {
  require(rho > 0.0, "quadratic family: rho must be positive");
  return PenaltyFamily(
      "quadratic", rho, [rho](double t) { return rho * t * (t - 2.0); },
      [rho](double t) { return 2.0 * rho * (t - 1.0); }, 1.0);
}

PenaltyFamily make_shifted_quadratic(double rho) {
  require(rho > 0.0, "shifted family: rho must be positive");
  const double shift = std::sqrt(2.0 * rho);
  return PenaltyFamily(
      "shifted", rho,
      [shift](double t) {
        const double d = t - shift;
        return 0.5 * d * d;
      },
      [shift](double t) { return t - shift; }, shift);
}

PenaltyFamily make_huber(double rho, double delta) {
  require(rho > 0.0, "huber family: rho must be positive");
  // The kink region must exclude t = 0 so that p(0) sits on the linear part.
  require(delta > 0.0 && delta < 1.0, "huber family: delta must lie in (0, 1)");
  const double scale = rho / (1.0 - 0.5 * delta);
  std::ostringstream name;
  name << "huber(" << delta << ")";
  return PenaltyFamily(
      name.str(), rho,
      [scale, delta](double t) {
        const double r = std::abs(t - 1.0);
        if (r >= delta) return scale * r;
        return scale * (r * r / (2.0 * delta) + 0.5 * delta);
      },
      [scale, delta](double t) {
        const double r = t - 1.0;
        if (r >= delta) return scale;
        if (r <= -delta) return -scale;
        return scale * r / delta;
      },
      1.0);
}

std::vector<std::string> family_names() { return {"quadratic", "shifted", "huber(<delta>)"}; }

PenaltyFamily family_from_name(std::string_view spec, double rho) {
  if (spec == "quadratic") return make_quadratic(rho);
  if (spec == "shifted") return make_shifted_quadratic(rho);
  if (spec == "huber") return make_huber(rho);
  if (spec.starts_with("huber(") && spec.ends_with(")")) {
    const std::string_view inner = spec.substr(6, spec.size() - 7);
    double delta = 0.0;
    const auto [ptr, ec] = std::from_chars(inner.data(), inner.data() + inner.size(), delta);
    if (ec == std::errc() && ptr == inner.data() + inner.size()) return make_huber(rho, delta);
  }
  std::string valid;
  for (const auto& n : family_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw InvalidArgument("unknown penalty family '" + std::string(spec) + "'; valid: " + valid);
}

AxiomReport check_axioms(const PenaltyFamily& family, int grid) {
  require(grid >= 100, "check_axioms: grid must have at least 100 points");
  AxiomReport report;
  std::set<std::string> seen;
  auto fail = [&report, &seen](std::string message) {
    report.passed = false;
    // Grid failures repeat; keep the first occurrence of each kind.
    const std::string kind = message.substr(0, message.find(" at t="));
    if (seen.insert(kind).second) report.failures.push_back(std::move(message));
  };

  const double s = family.minimizer();
  const double rho = family.rho();
  if (!(s > 0.0)) fail("minimizer is not positive");

  report.scaling_residual = std::abs(family.value(0.0) - family.value(s) - rho);
  if (report.scaling_residual > 1e-10) {
    fail("p(0) - p(s) differs from rho by " + std::to_string(report.scaling_residual));
  }
  if (!(family.derivative(0.0) < 0.0)) fail("derivative at 0 is not negative");
  if (std::abs(family.derivative(s)) > 1e-10 * std::max(1.0, rho)) {
    fail("derivative does not vanish at the minimizer");
  }

  const double lo = -2.0 * s;
  const double hi = 4.0 * s;
  const double at_min = family.value(s);
  const double sign_band = 1e-9 * std::max(1.0, s);
  double previous_derivative = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid; ++j) {
    const double t = lo + (hi - lo) * static_cast<double>(j) / (grid - 1);
    const double d = family.derivative(t);

    if (t < s - sign_band && !(d < 0.0)) fail("derivative not negative left of minimizer at t=" + std::to_string(t));
    if (t > s + sign_band && !(d > 0.0)) fail("derivative not positive right of minimizer at t=" + std::to_string(t));
    if (std::abs(t - s) > sign_band && !(family.value(t) > at_min)) {
      fail("minimum is not unique at t=" + std::to_string(t));
    }
    if (d < previous_derivative - 1e-12 * std::max(1.0, std::abs(d))) {
      fail("derivative decreases at t=" + std::to_string(t) + " (not convex)");
    }
    previous_derivative = d;

    const double h = 1e-7 * std::max(1.0, std::abs(t));
    const double fd = (family.value(t + h) - family.value(t - h)) / (2.0 * h);
    const double err = std::abs(fd - d) / std::max(1.0, std::abs(d));
    report.max_fd_error = std::max(report.max_fd_error, err);
  }
  if (report.max_fd_error > 1e-6) {
    fail("derivative disagrees with finite differences (rel. error " +
         std::to_string(report.max_fd_error) + ")");
  }
  return report;
}

}  // namespace l0pen
