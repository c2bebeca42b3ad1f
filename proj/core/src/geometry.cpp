#include "l0pen/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace l0pen {

Vector project_nonneg(const Eigen::Ref<const Vector>& w) { return w.cwiseMax(0.0); }

Vector project_box(const Eigen::Ref<const Vector>& z, const Eigen::Ref<const Vector>& lo,
                   const Eigen::Ref<const Vector>& hi) {
  require_dim(lo.size(), z.size(), "project_box lower bound");
  require_dim(hi.size(), z.size(), "project_box upper bound");
  for (Index i = 0; i < z.size(); ++i) {
    if (lo[i] > hi[i]) {
      throw InvalidArgument("project_box: lo[" + std::to_string(i) + "] > hi[" +
                            std::to_string(i) + "]");
    }
  }
  return z.cwiseMax(lo).cwiseMin(hi);
}

EpigraphPoint project_abs_epigraph(double u, double v) {
  const double au = std::abs(u);
  if (au <= v) return {u, v};
  if (au <= -v) return {0.0, 0.0};
  if (u > 0.0) {
    const double m = 0.5 * (u + v);
    return {m, m};
  }
  return {0.5 * (u - v), 0.5 * (v - u)};
}

void project_abs_epigraph(Eigen::Ref<Vector> x, Eigen::Ref<Vector> s) {
  require_dim(s.size(), x.size(), "project_abs_epigraph");
  for (Index i = 0; i < x.size(); ++i) {
    const auto p = project_abs_epigraph(x[i], s[i]);
    x[i] = p.x;
    s[i] = p.s;
  }
}

double portfolio_root_function(const Vector& a, const Vector& b, double u) {
  double t = -2.0;
  for (Index i = 0; i < a.size(); ++i) {
    t += std::max(0.0, a[i] + b[i] - u) - std::max(0.0, b[i] - a[i] + u);
  }
  return t;
}

RootBracket portfolio_root_bracket(const Vector& a, const Vector& b) {
  require(a.size() >= 1, "portfolio_root: empty input");
  require_dim(b.size(), a.size(), "portfolio_root");
  const Vector sum = a + b;
  const Vector diff = a - b;
  const double upper = std::max(sum.maxCoeff(), diff.maxCoeff());
  // min - 2/n alone gives t(lower) = 0 exactly when all a_i + b_i agree, which
  // rounding can push below zero; the extra 1 makes t(lower) >= n.
  const double lower =
      std::min(sum.minCoeff(), diff.minCoeff()) - 2.0 / static_cast<double>(a.size()) - 1.0;
  return {lower, upper};
}

double portfolio_root(const Vector& a, const Vector& b) {
  constexpr int kMaxIterations = 200;
  constexpr double kWidthTol = 1e-12;

  auto [lo, hi] = portfolio_root_bracket(a, b);
  double t_lo = portfolio_root_function(a, b, lo);
  double t_hi = portfolio_root_function(a, b, hi);
  if (!(t_lo >= 0.0 && t_hi <= 0.0)) {
    throw Error("portfolio_root: bracket does not enclose a root (non-finite input?)");
  }
  if (t_lo == 0.0) return lo;
  if (t_hi == 0.0) return hi;

  for (int it = 0; it < kMaxIterations; ++it) {
    const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
    if (hi - lo <= kWidthTol * scale) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double t_mid = portfolio_root_function(a, b, mid);
    if (t_mid > 0.0) {
      lo = mid;
      t_lo = t_mid;
    } else if (t_mid < 0.0) {
      hi = mid;
      t_hi = t_mid;
    } else {
      return mid;
    }
  }

  // t is piecewise linear; on the final bracket one secant step is exact
  // unless a breakpoint remains inside.
  const double mid = 0.5 * (lo + hi);
  const double secant = std::clamp(lo + t_lo * (hi - lo) / (t_lo - t_hi), lo, hi);
  return std::abs(portfolio_root_function(a, b, secant)) <=
                 std::abs(portfolio_root_function(a, b, mid))
             ? secant
             : mid;
}

PortfolioProjection project_portfolio(const Vector& a, const Vector& b) {
  require_dim(b.size(), a.size(), "project_portfolio");
  const double mu = portfolio_root(a, b);
  const Vector plus = (a + b).array() - mu;    // a + b - mu e
  const Vector minus = (b - a).array() + mu;   // b - a + mu e
  const Vector p = plus.cwiseMax(0.0);
  const Vector m = minus.cwiseMax(0.0);
  return {0.5 * (p - m), 0.5 * (m + p), mu};
}

ProxPair prox_sp(double u, double v, double alpha, double gamma) {
  require(alpha > 0.0 && gamma > 0.0, "prox_sp: alpha and gamma must be positive");
  const double sign = u < 0.0 ? -1.0 : 1.0;
  const double ua = std::abs(u);

  if (v < 0.0) return {sign * ua, 0.0};

  const double ga = gamma * alpha;
  if (ga < 1.0 && ua >= ga * v && ua <= v / ga) {
    const double denom = 1.0 - ga * ga;
    return {sign * (ua - ga * v) / denom, (v - ga * ua) / denom};
  }
  // Boundary solutions; at v == |u| both candidates tie and (0, v) is taken.
  if (v >= ua) return {0.0, v};
  return {sign * ua, 0.0};
}

void project_row_norm_ball_inplace(Eigen::Ref<Matrix> D) {
  for (Index r = 0; r < D.rows(); ++r) {
    const double norm = D.row(r).norm();
    if (norm > 1.0) D.row(r) /= norm;
  }
}

Matrix project_row_norm_ball(const Matrix& D) {
  Matrix out = D;
  project_row_norm_ball_inplace(out);
  return out;
}

Projector free_projector(Index n) {
  return {[n](const Vector& z) {
            require_dim(z.size(), n, "free projector");
            return z;
          },
          [](const Vector&) { return 0.0; }};
}

Projector nonneg_projector(Index n) {
  return {[n](const Vector& z) {
            require_dim(z.size(), n, "nonnegative projector");
            return project_nonneg(z);
          },
          [](const Vector& z) { return z.size() == 0 ? 0.0 : std::max(0.0, -z.minCoeff()); }};
}

Projector box_projector(Vector lo, Vector hi) {
  require_dim(hi.size(), lo.size(), "box_projector");
  for (Index i = 0; i < lo.size(); ++i) require(lo[i] <= hi[i], "box_projector: lo > hi");
  auto residual = [lo, hi](const Vector& z) {
    double r = 0.0;
    for (Index i = 0; i < z.size(); ++i) r = std::max({r, lo[i] - z[i], z[i] - hi[i]});
    return r;
  };
  return {[lo = std::move(lo), hi = std::move(hi)](const Vector& z) {
            return project_box(z, lo, hi);
          },
          residual};
}

Projector budget_projector(Index n) {
  return {[n](const Vector& z) {
            require_dim(z.size(), n, "budget projector");
            return Vector((z.array() - (z.sum() - 1.0) / static_cast<double>(n)).matrix());
          },
          [](const Vector& z) { return std::abs(z.sum() - 1.0); }};
}

}  // namespace l0pen
