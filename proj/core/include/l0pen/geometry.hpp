#pragma once

#include <functional>

#include "l0pen/types.hpp"

namespace l0pen {

/// Euclidean projection onto a fixed closed set together with a
/// feasibility measure (zero iff the point is feasible up to rounding).
struct Projector {
  std::function<Vector(const Vector&)> project;
  std::function<double(const Vector&)> residual;
};

Vector project_nonneg(const Eigen::Ref<const Vector>& w);

/// Componentwise clamp; throws if lo_i > hi_i for some i.
Vector project_box(const Eigen::Ref<const Vector>& z, const Eigen::Ref<const Vector>& lo,
                   const Eigen::Ref<const Vector>& hi);

struct EpigraphPoint {
  double x;
  double s;
};

/// Projection of (u, v) onto epi|.| = {(x, s) : |x| <= s}.
EpigraphPoint project_abs_epigraph(double u, double v);

/// In-place coordinatewise projection of (x_i, s_i) onto epi|.|.
void project_abs_epigraph(Eigen::Ref<Vector> x, Eigen::Ref<Vector> s);

/// t(u) = sum_i max{0, a_i + b_i - u} - max{0, b_i - a_i + u} - 2.
/// Continuous and nonincreasing in u.
double portfolio_root_function(const Vector& a, const Vector& b, double u);

struct RootBracket {
  double lower;  // t(lower) >= 0
  double upper;  // t(upper) <= 0
};

/// Closed-form bracket: upper = max(max(a+b), max(a-b)),
/// lower = min(min(a+b), min(a-b)) - 2/n - 1.
RootBracket portfolio_root_bracket(const Vector& a, const Vector& b);

/// Root mu of t by bisection on the closed-form bracket. Returns the
/// midpoint of the root interval when t is flat at zero.
double portfolio_root(const Vector& a, const Vector& b);

struct PortfolioProjection {
  Vector x;
  Vector s;
  double mu;  // multiplier of the budget constraint e^T x = 1
};

/// Projection of (a, b) onto {(x, s) : e^T x = 1, |x| <= s}.
PortfolioProjection project_portfolio(const Vector& a, const Vector& b);

struct ProxPair {
  double x;
  double y;
};

/// argmin over y >= 0 of alpha |x| y + ((x - u)^2 + (y - v)^2) / (2 gamma).
ProxPair prox_sp(double u, double v, double alpha, double gamma);

/// Scales every row of D onto the unit Euclidean ball.
Matrix project_row_norm_ball(const Matrix& D);
void project_row_norm_ball_inplace(Eigen::Ref<Matrix> D);

Projector free_projector(Index n);
Projector nonneg_projector(Index n);
Projector box_projector(Vector lo, Vector hi);
/// Projector onto the affine budget set {x : e^T x = 1}.
Projector budget_projector(Index n);

}  // namespace l0pen
