#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "l0pen/geometry.hpp"
#include "oracles.hpp"

using namespace l0pen;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

// <z - P(z), w - P(z)> <= tol for feasible w.
void expect_variational_inequality(const Projector& p, const Vector& z,
                                   const std::vector<Vector>& feasible) {
  const Vector pz = p.project(z);
  for (const auto& w : feasible) {
    EXPECT_LE((z - pz).dot(w - pz), 1e-8 * (1.0 + z.squaredNorm()));
  }
}

}  // namespace

TEST(ProjectNonneg, Examples) {
  EXPECT_EQ(project_nonneg(vec({1, -2, 0})), vec({1, 0, 0}));
  EXPECT_EQ(project_nonneg(vec({0.5, 3})), vec({0.5, 3}));
  EXPECT_EQ(project_nonneg(vec({-5})), vec({0}));
}

TEST(ProjectBox, Examples) {
  EXPECT_EQ(project_box(vec({2, -1}), Vector::Zero(2), Vector::Ones(2)), vec({1, 0}));
  EXPECT_EQ(project_box(vec({0.3, 0.7}), Vector::Zero(2), Vector::Ones(2)), vec({0.3, 0.7}));
  EXPECT_EQ(project_box(vec({5, -5}), vec({0.2, 0.2}), vec({0.2, 0.2})), vec({0.2, 0.2}));
  EXPECT_THROW(project_box(vec({0}), vec({1}), vec({0})), InvalidArgument);
}

TEST(AbsEpigraph, FourCases) {
  auto check = [](double u, double v, double x, double s) {
    const auto p = project_abs_epigraph(u, v);
    EXPECT_DOUBLE_EQ(p.x, x) << u << "," << v;
    EXPECT_DOUBLE_EQ(p.s, s) << u << "," << v;
  };
  check(2, 3, 2, 3);
  check(0, -1, 0, 0);
  check(2, 0, 1, 1);
  check(-3, 1, -2, 2);
}

TEST(AbsEpigraph, RandomPointsAreProjections) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-5, 5);
  int cases[4] = {0, 0, 0, 0};
  for (int rep = 0; rep < 10000; ++rep) {
    const double a = u(gen), b = u(gen);
    const auto p = project_abs_epigraph(a, b);
    EXPECT_LE(std::abs(p.x), p.s + 1e-15);
    const auto q = project_abs_epigraph(p.x, p.s);
    EXPECT_LE(std::abs(q.x - p.x) + std::abs(q.s - p.s), 1e-12);
    // Compare with the feasible points of a few random directions.
    for (int k = 0; k < 5; ++k) {
      const double s = std::abs(u(gen)) + 1e-3;
      const double x = s * (2.0 * std::abs(u(gen)) / 5.0 - 1.0);
      EXPECT_LE((a - p.x) * (x - p.x) + (b - p.s) * (s - p.s), 1e-8 * (1 + a * a + b * b));
    }
    if (std::abs(a) <= b) ++cases[0];
    else if (std::abs(a) <= -b) ++cases[1];
    else if (a > std::abs(b)) ++cases[2];
    else ++cases[3];
  }
  for (int c : cases) EXPECT_GT(c, 100);
}

TEST(AbsEpigraph, VectorOverloadMatchesScalar) {
  Vector x = vec({2, 0, 2, -3});
  Vector s = vec({3, -1, 0, 1});
  project_abs_epigraph(x, s);
  EXPECT_EQ(x, vec({2, 0, 1, -2}));
  EXPECT_EQ(s, vec({3, 0, 1, 2}));
}

TEST(PortfolioRoot, SingleCoordinate) {
  const Vector a = vec({1}), b = vec({0});
  const double mu = portfolio_root(a, b);
  EXPECT_NEAR(mu, -1.0, 1e-10);
  const double ref =
      oracle::bisect([&](double u) { return std::max(0.0, 1.0 - u) - std::max(0.0, u - 1.0) - 2.0; },
                     -10.0, 10.0);
  EXPECT_NEAR(mu, ref, 1e-10);
  EXPECT_NEAR(portfolio_root_function(a, b, mu), 0.0, 1e-10);
}

TEST(PortfolioRoot, BracketSignsAndMonotone) {
  std::mt19937_64 gen(2);
  std::normal_distribution<double> nd(0, 3);
  for (int rep = 0; rep < 200; ++rep) {
    const Index n = 1 + rep % 17;
    Vector a(n), b(n);
    for (Index i = 0; i < n; ++i) {
      a[i] = nd(gen);
      b[i] = nd(gen);
    }
    const auto br = portfolio_root_bracket(a, b);
    EXPECT_GE(portfolio_root_function(a, b, br.lower), 0.0);
    EXPECT_LE(portfolio_root_function(a, b, br.upper), 0.0);
    double prev = INFINITY;
    for (int k = 0; k <= 100; ++k) {
      const double u = br.lower - 1.0 + (br.upper - br.lower + 2.0) * k / 100.0;
      const double t = portfolio_root_function(a, b, u);
      EXPECT_LE(t, prev + 1e-12);
      prev = t;
    }
    const double mu = portfolio_root(a, b);
    EXPECT_NEAR(portfolio_root_function(a, b, mu), 0.0, 1e-10);
  }
}

TEST(ProjectPortfolio, FeasibleInputIsFixed) {
  const Vector a = vec({0.5, -0.2, 0.7}), b = vec({0.6, 0.2, 1.0});
  const auto p = project_portfolio(a, b);
  EXPECT_LE((p.x - a).lpNorm<Eigen::Infinity>(), 1e-12);
  EXPECT_LE((p.s - b).lpNorm<Eigen::Infinity>(), 1e-12);
}

TEST(ProjectPortfolio, ZeroInputIsSymmetric) {
  const auto p = project_portfolio(Vector::Zero(2), Vector::Zero(2));
  const auto [qx, qs] = oracle::portfolio_projection_qp(Vector::Zero(2), Vector::Zero(2));
  EXPECT_LE((p.x - vec({0.5, 0.5})).lpNorm<Eigen::Infinity>(), 1e-10);
  EXPECT_LE((p.s - vec({0.5, 0.5})).lpNorm<Eigen::Infinity>(), 1e-10);
  EXPECT_LE((p.x - qx).lpNorm<Eigen::Infinity>(), 1e-8);
  EXPECT_LE((p.s - qs).lpNorm<Eigen::Infinity>(), 1e-8);
}

TEST(ProjectPortfolio, MatchesQpOracleAndKkt) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd(0, 1);
  for (Index n : {2, 5, 20}) {
    for (int rep = 0; rep < 20; ++rep) {
      Vector a(n), b(n);
      for (Index i = 0; i < n; ++i) {
        a[i] = 2.0 * nd(gen);
        b[i] = 2.0 * nd(gen);
      }
      const auto p = project_portfolio(a, b);
      EXPECT_NEAR(p.x.sum(), 1.0, 1e-8);
      EXPECT_LE((p.x.cwiseAbs() - p.s).maxCoeff(), 1e-10);
      EXPECT_LE(oracle::portfolio_kkt_residual(a, b, p.x, p.s, p.mu), 1e-6);
      const auto [qx, qs] = oracle::portfolio_projection_qp(a, b);
      EXPECT_LE((p.x - qx).lpNorm<Eigen::Infinity>(), 1e-6);
      EXPECT_LE((p.s - qs).lpNorm<Eigen::Infinity>(), 1e-6);
    }
  }
}

TEST(ProjectPortfolio, Idempotent) {
  std::mt19937_64 gen(4);
  std::normal_distribution<double> nd(0, 1);
  Vector a(6), b(6);
  for (Index i = 0; i < 6; ++i) {
    a[i] = nd(gen);
    b[i] = nd(gen);
  }
  const auto p = project_portfolio(a, b);
  const auto q = project_portfolio(p.x, p.s);
  EXPECT_LE((q.x - p.x).lpNorm<Eigen::Infinity>(), 1e-10);
  EXPECT_LE((q.s - p.s).lpNorm<Eigen::Infinity>(), 1e-10);
}

TEST(ProxSp, NegativeVKeepsU) {
  for (double alpha : {0.5, 2.0}) {
    for (double gamma : {0.1, 3.0}) {
      const auto p = prox_sp(3, -1, alpha, gamma);
      EXPECT_DOUBLE_EQ(p.x, 3);
      EXPECT_DOUBLE_EQ(p.y, 0);
    }
  }
}

TEST(ProxSp, InteriorCase) {
  const auto p = prox_sp(1, 1, 1, 0.5);
  EXPECT_NEAR(p.x, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(p.y, 2.0 / 3.0, 1e-15);
  const double grid = oracle::prox_sp_grid_min(1, 1, 1, 0.5);
  EXPECT_LE(oracle::prox_sp_objective(p.x, p.y, 1, 1, 1, 0.5), grid + 1e-3);
}

TEST(ProxSp, BandEdgeRestoresSign) {
  const auto p = prox_sp(-2, 1, 1, 0.5);
  EXPECT_NEAR(p.x, -2.0, 1e-15);
  EXPECT_NEAR(p.y, 0.0, 1e-15);
  const double grid = oracle::prox_sp_grid_min(-2, 1, 1, 0.5);
  EXPECT_LE(oracle::prox_sp_objective(p.x, p.y, -2, 1, 1, 0.5), grid + 1e-3);
}

TEST(ProxSp, LargeStepGoesToBoundary) {
  const auto p = prox_sp(1, 2, 1, 1);
  EXPECT_DOUBLE_EQ(p.x, 0);
  EXPECT_DOUBLE_EQ(p.y, 2);
  const auto q = prox_sp(3, 2, 2, 1);
  EXPECT_DOUBLE_EQ(q.x, 3);
  EXPECT_DOUBLE_EQ(q.y, 0);
}

TEST(ProxSp, TieGoesToZeroXWithEqualObjective) {
  const double alpha = 2.0, gamma = 1.0;
  const auto p = prox_sp(1.5, 1.5, alpha, gamma);
  EXPECT_DOUBLE_EQ(p.x, 0);
  EXPECT_DOUBLE_EQ(p.y, 1.5);
  EXPECT_DOUBLE_EQ(oracle::prox_sp_objective(0, 1.5, 1.5, 1.5, alpha, gamma),
                   oracle::prox_sp_objective(1.5, 0, 1.5, 1.5, alpha, gamma));
}

TEST(ProxSp, RandomAgainstGrid) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-3, 3);
  const double params[] = {0.5, 1.0, 2.0};
  for (int rep = 0; rep < 60; ++rep) {
    const double a = u(gen), b = u(gen);
    const double alpha = params[rep % 3], gamma = params[(rep / 3) % 3];
    const auto p = prox_sp(a, b, alpha, gamma);
    EXPECT_GE(p.y, 0.0);
    EXPECT_GE(p.x * (a < 0 ? -1.0 : 1.0), 0.0);
    const double grid = oracle::prox_sp_grid_min(a, b, alpha, gamma, 801);
    EXPECT_LE(oracle::prox_sp_objective(p.x, p.y, a, b, alpha, gamma), grid + 1e-3);
    // A pair with both entries nonzero only comes from the interior formula.
    if (p.x != 0.0 && p.y != 0.0) {
      EXPECT_LT(gamma * alpha, 1.0);
    }
  }
}

TEST(RowNormBall, Examples) {
  Matrix D(3, 2);
  D << 0.3, 0.4, 3, 4, 0, 0;
  const Matrix P = project_row_norm_ball(D);
  EXPECT_EQ(P.row(0), D.row(0));
  EXPECT_NEAR(P(1, 0), 0.6, 1e-15);
  EXPECT_NEAR(P(1, 1), 0.8, 1e-15);
  EXPECT_EQ(P.row(2), D.row(2));
  Matrix Q = D;
  project_row_norm_ball_inplace(Q);
  EXPECT_EQ(Q, P);
  EXPECT_EQ(project_row_norm_ball(P), P);
}

TEST(Projectors, IdempotentAndVariationalInequality) {
  std::mt19937_64 gen(6);
  std::normal_distribution<double> nd(0, 2);
  const Index n = 5;
  auto random_vec = [&] {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = nd(gen);
    return v;
  };
  const Vector lo = Vector::Constant(n, -0.5), hi = Vector::Constant(n, 1.5);
  for (const Projector& p : {nonneg_projector(n), box_projector(lo, hi), budget_projector(n),
                             free_projector(n)}) {
    std::vector<Vector> feasible;
    for (int k = 0; k < 100; ++k) feasible.push_back(p.project(random_vec()));
    for (const auto& w : feasible) EXPECT_LE(p.residual(w), 1e-12);
    for (int rep = 0; rep < 20; ++rep) {
      const Vector z = random_vec();
      const Vector pz = p.project(z);
      EXPECT_LE((p.project(pz) - pz).lpNorm<Eigen::Infinity>(), 1e-10);
      expect_variational_inequality(p, z, feasible);
    }
  }
}

TEST(Projectors, Residuals) {
  EXPECT_DOUBLE_EQ(nonneg_projector(2).residual(vec({1, -2})), 2.0);
  EXPECT_DOUBLE_EQ(budget_projector(2).residual(vec({1, 1})), 1.0);
  EXPECT_DOUBLE_EQ(box_projector(vec({0}), vec({1})).residual(vec({3})), 2.0);
  EXPECT_DOUBLE_EQ(free_projector(2).residual(vec({1e9, -1e9})), 0.0);
}
