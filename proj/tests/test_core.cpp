#include <gtest/gtest.h>

#include <random>

#include "l0pen/core.hpp"
#include "l0pen/problems.hpp"
#include "l0pen/verify.hpp"
#include "oracles.hpp"

using namespace l0pen;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

SpoProblem zero_problem(Index n, double rho = 1.0) {
  return make_unconstrained_problem("zero", n, rho, [](const Vector&) { return 0.0; },
                                    [](const Vector& x) { return Vector::Zero(x.size()); });
}

SpoProblem half_norm_problem(Index n, double rho = 1.0) {
  return make_unconstrained_problem("half-norm", n, rho,
                                    [](const Vector& x) { return 0.5 * x.squaredNorm(); },
                                    [](const Vector& x) { return x; });
}

std::vector<PenaltyFamily> families(double rho) {
  return {make_quadratic(rho), make_shifted_quadratic(rho), make_huber(rho, 0.5)};
}

}  // namespace

TEST(L0Norm, Counts) {
  EXPECT_EQ(l0_norm(vec({0, 0, 0}), 0.0), 0);
  EXPECT_EQ(l0_norm(vec({1, -2, 0}), 0.0), 2);
  EXPECT_EQ(l0_norm(vec({1e-9, 0.5}), 1e-8), 1);
  EXPECT_EQ(l0_norm(Vector(0), 0.0), 0);
}

TEST(SpoObjective, Examples) {
  EXPECT_DOUBLE_EQ(spo_objective(zero_problem(3), vec({1, 0, 2})), 2.0);
  EXPECT_DOUBLE_EQ(spo_objective(half_norm_problem(2), vec({2, 0})), 3.0);
  EXPECT_THROW(spo_objective(zero_problem(3), vec({1, 0})), DimensionError);
}

TEST(SpoObjective, MatchesOracleAtItsArgmin) {
  const auto inst = gen_portfolio(10, 5);
  const auto best = spo_bruteforce(inst, inst.rho);
  EXPECT_NEAR(spo_objective(portfolio_problem(inst), best.x), best.value, 1e-9);
}

TEST(PenaltyObjective, QuadraticAtOnesIsMinusN) {
  const Index n = 4;
  const auto fam = make_quadratic(1.0);
  const PenaltyIterate it{Vector::Zero(n), Vector::Zero(n), Vector::Ones(n)};
  EXPECT_DOUBLE_EQ(penalty_objective(zero_problem(n), fam, it, 5.0),
                   n * oracle::quadratic_penalty(1.0, 1.0));
  EXPECT_DOUBLE_EQ(penalty_objective(zero_problem(n), fam, it, 5.0), -4.0);
}

TEST(PenaltyObjective, AllZeroIsSmoothPartAtZero) {
  const auto problem = make_unconstrained_problem(
      "shifted", 3, 1.0, [](const Vector& x) { return 0.5 * x.squaredNorm() + 7.0; },
      [](const Vector& x) { return x; });
  const PenaltyIterate it{Vector::Zero(3), Vector::Zero(3), Vector::Zero(3)};
  for (double alpha : {0.1, 1.0, 100.0}) {
    EXPECT_DOUBLE_EQ(penalty_objective(problem, make_quadratic(1.0), it, alpha), 7.0);
  }
}

TEST(PenaltyObjective, CouplingTerm) {
  const PenaltyIterate it{vec({1, 0}), vec({1, 0}), vec({1, 0})};
  const double expected = oracle::quadratic_penalty(1.0, 1.0) + oracle::quadratic_penalty(1.0, 0.0) +
                          2.0 * 1.0 * 1.0;
  EXPECT_DOUBLE_EQ(expected, 1.0);
  EXPECT_DOUBLE_EQ(penalty_objective(zero_problem(2), make_quadratic(1.0), it, 2.0), expected);
}

TEST(PenaltyObjective, Errors) {
  const auto fam = make_quadratic(1.0);
  EXPECT_THROW(penalty_objective(zero_problem(2), fam, {vec({1, 0}), vec({1, 0}), vec({1, -0.5})}, 1.0),
               InvalidArgument);
  EXPECT_THROW(penalty_objective(zero_problem(2), fam, {vec({1, 0}), vec({1, 0}), vec({1})}, 1.0),
               DimensionError);
}

TEST(YStar, Examples) {
  const auto fam = make_quadratic(1.0);
  EXPECT_EQ(y_star_from_x(vec({0, 3, 0}), fam), vec({1, 0, 1}));
  EXPECT_EQ(y_star_from_x(vec({1, -2}), fam), Vector::Zero(2));
  const auto shifted = make_shifted_quadratic(2.0);
  EXPECT_EQ(y_star_from_x(Vector::Zero(3), shifted), Vector::Constant(3, 2.0));
  EXPECT_EQ(y_star_from_x(vec({1e-9, 1}), fam, 1e-8), vec({1, 0}));
}

TEST(YStar, IsComplementary) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1, 1);
  const auto fam = make_huber(2.0);
  for (int rep = 0; rep < 100; ++rep) {
    Vector x(8);
    for (Index i = 0; i < 8; ++i) x[i] = u(gen) < 0 ? 0.0 : u(gen);
    const Vector y = y_star_from_x(x, fam);
    EXPECT_LE(complementarity(x, y), kDefaultZeroTol * y.maxCoeff());
  }
}

// Randomized reformulation identities for every family.
TEST(Reformulation, LowerBoundOnComplementaryPairs) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (double rho : {0.1, 1.0, 10.0}) {
    for (const auto& fam : families(rho)) {
      for (int rep = 0; rep < 500; ++rep) {
        const Index n = 6;
        Vector x(n), y(n);
        for (Index i = 0; i < n; ++i) {
          const bool zero = u(gen) < 0.5;
          x[i] = zero ? 0.0 : 4.0 * u(gen) - 2.0;
          y[i] = zero ? 3.0 * fam.minimizer() * u(gen) : 0.0;
        }
        EXPECT_LE(rho * static_cast<double>(l0_norm(x, 0.0)),
                  fam.total(y) - fam.min_total(n) + 1e-10);
      }
    }
  }
}

TEST(Reformulation, EqualityAtYStar) {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(0, 1);
  for (double rho : {0.1, 1.0, 10.0}) {
    for (const auto& fam : families(rho)) {
      for (int rep = 0; rep < 500; ++rep) {
        Vector x(7);
        for (Index i = 0; i < 7; ++i) x[i] = u(gen) < 0.4 ? 0.0 : u(gen) - 0.5;
        const Vector y = y_star_from_x(x, fam, 0.0);
        EXPECT_NEAR(rho * static_cast<double>(l0_norm(x, 0.0)), fam.total(y) - fam.min_total(7),
                    1e-10);
      }
    }
  }
}

TEST(Reformulation, PenaltyAtYStarIsSpoPlusConstant) {
  const auto problem = half_norm_problem(5, 2.0);
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> u(-1, 1);
  for (const auto& fam : families(2.0)) {
    for (int rep = 0; rep < 50; ++rep) {
      Vector x(5);
      for (Index i = 0; i < 5; ++i) x[i] = u(gen) < 0 ? 0.0 : u(gen);
      const PenaltyIterate it = iterate_from_x(problem, fam, x);
      for (double alpha : {0.5, 1.0, 1e3}) {
        EXPECT_NEAR(penalty_objective(problem, fam, it, alpha),
                    spo_objective(problem, x) + fam.min_total(5), 1e-10);
      }
    }
  }
}

TEST(IterateFromX, SetsAbsoluteValueAndYStar) {
  const auto fam = make_quadratic(1.0);
  const PenaltyIterate it = iterate_from_x(zero_problem(3), fam, vec({-2, 0, 1}));
  EXPECT_EQ(it.s, vec({2, 0, 1}));
  EXPECT_EQ(it.y, vec({0, 1, 0}));
}

TEST(CheckGradient, AcceptsCorrectAndRejectsWrong) {
  const Matrix A = Matrix::Random(4, 4);
  const ObjectiveFn f = [&](const Vector& x) { return 0.5 * x.dot(A * x) + std::sin(x[0]); };
  const GradientFn g = [&](const Vector& x) {
    Vector out = 0.5 * (A + A.transpose()) * x;
    out[0] += std::cos(x[0]);
    return out;
  };
  const Vector x = Vector::Random(4);
  EXPECT_TRUE(check_gradient(f, g, x).passed);
  const GradientFn wrong = [&](const Vector& y) { return Vector(A * y); };
  EXPECT_FALSE(check_gradient(f, wrong, x).passed);
}

TEST(SpoProblem, ValidateCatchesMissingPieces) {
  SpoProblem p = half_norm_problem(3);
  EXPECT_NO_THROW(p.validate());
  p.rho = 0.0;
  EXPECT_THROW(p.validate(), InvalidArgument);
  p = half_norm_problem(3);
  p.gradient = nullptr;
  EXPECT_THROW(p.validate(), InvalidArgument);
}

TEST(SolveStatus, NamesRoundTrip) {
  for (auto s : {SolveStatus::kConverged, SolveStatus::kMaxIterations, SolveStatus::kNoProgress,
                 SolveStatus::kMaxOuter, SolveStatus::kLineSearchFailure,
                 SolveStatus::kUnsupported}) {
    EXPECT_EQ(solve_status_from_string(to_string(s)), s);
  }
  EXPECT_STREQ(to_string(SolveStatus::kConverged), "ok");
  EXPECT_THROW(solve_status_from_string("fine"), InvalidArgument);
}
