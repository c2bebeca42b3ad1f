#include "l0pen/problems.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <memory>

#include "l0pen/geometry.hpp"
#include "l0pen/random.hpp"

namespace l0pen {

void PortfolioInstance::validate() const {
  const Index n = mu.size();
  require(n >= 1, "portfolio: empty instance");
  if (Q.rows() != n || Q.cols() != n) {
    throw DimensionError("portfolio: Q must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  require((Q - Q.transpose()).cwiseAbs().maxCoeff() <= 1e-10, "portfolio: Q is not symmetric");
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(Q, Eigen::EigenvaluesOnly);
  require(eig.eigenvalues().minCoeff() >= -1e-8, "portfolio: Q is not positive semidefinite");
  require(rho > 0.0, "portfolio: rho must be positive");
}

void DictionaryInstance::validate() const {
  require(l > 0 && n > 0 && m > 0, "dictionary: shapes must be positive");
  if (Z.rows() != n || Z.cols() != m) {
    throw DimensionError("dictionary: Z must be n x m = " + std::to_string(n) + "x" +
                         std::to_string(m));
  }
  require(rho > 0.0, "dictionary: rho must be positive");
}

SpoProblem portfolio_problem(const PortfolioInstance& instance) {
  instance.validate();
  auto data = std::make_shared<const PortfolioInstance>(instance);
  const Index n = instance.dim();

  SpoProblem p;
  p.name = "portfolio";
  p.dim = n;
  p.sparse_dim = n;
  p.rho = instance.rho;
  p.objective = [data](const Vector& x) {
    return 0.5 * x.dot(data->Q * x) - data->beta * data->mu.dot(x);
  };
  p.gradient = [data](const Vector& x) -> Vector { return data->Q * x - data->beta * data->mu; };
  p.feasible = budget_projector(n);
  p.epigraph = [](Vector& x, Vector& s) {
    auto proj = project_portfolio(x, s);
    x = std::move(proj.x);
    s = std::move(proj.s);
  };
  p.restricted = [n](const Vector& x, const std::vector<bool>& keep) {
    Index count = 0;
    double sum = 0.0;
    for (Index i = 0; i < n; ++i) {
      if (keep[static_cast<std::size_t>(i)]) {
        ++count;
        sum += x[i];
      }
    }
    if (count == 0) throw InvalidArgument("portfolio: empty support cannot satisfy e^T x = 1");
    const double shift = (sum - 1.0) / static_cast<double>(count);
    Vector z = Vector::Zero(n);
    for (Index i = 0; i < n; ++i) {
      if (keep[static_cast<std::size_t>(i)]) z[i] = x[i] - shift;
    }
    return z;
  };
  p.sparse_block_free = false;
  p.validate();
  return p;
}

Vector portfolio_start(Index n) {
  require(n >= 1, "portfolio_start: n must be positive");
  return Vector::Constant(n, 1.0 / static_cast<double>(n));
}

Vector portfolio_dense_start(const PortfolioInstance& instance) {
  instance.validate();
  const Index n = instance.dim();
  Matrix kkt = Matrix::Zero(n + 1, n + 1);
  kkt.topLeftCorner(n, n) = instance.Q;
  kkt.col(n).head(n).setOnes();
  kkt.row(n).head(n).setOnes();
  Vector rhs(n + 1);
  rhs.head(n) = instance.beta * instance.mu;
  rhs[n] = 1.0;
  Vector x = kkt.completeOrthogonalDecomposition().solve(rhs).head(n);
  // Guard the budget against rounding in ill-conditioned systems.
  x.array() -= (x.sum() - 1.0) / static_cast<double>(n);
  return x;
}

Vector dictionary_pack(const Matrix& C, const Matrix& D) {
  require(C.rows() == D.rows(), "dictionary_pack: C and D must have the same row count");
  Vector x(C.size() + D.size());
  x.head(C.size()) = C.reshaped();
  x.tail(D.size()) = D.reshaped();
  return x;
}

std::pair<Matrix, Matrix> dictionary_unpack(const DictionaryInstance& instance, const Vector& x) {
  const Index nc = instance.l * instance.m;
  const Index nd = instance.l * instance.n;
  require_dim(x.size(), nc + nd, "dictionary_unpack");
  return {x.head(nc).reshaped(instance.l, instance.m), x.tail(nd).reshaped(instance.l, instance.n)};
}

SpoProblem dictionary_problem(const DictionaryInstance& instance) {
  instance.validate();
  auto data = std::make_shared<const DictionaryInstance>(instance);
  const Index l = instance.l;
  const Index n = instance.n;
  const Index m = instance.m;
  const Index nc = l * m;
  const Index nd = l * n;

  auto residual = [data, l, n, m, nc](const Vector& x) -> Matrix {
    const Eigen::Map<const Matrix> C(x.data(), l, m);
    const Eigen::Map<const Matrix> D(x.data() + nc, l, n);
    return D.transpose() * C - data->Z;
  };

  ObjectiveFn objective = [residual](const Vector& x) {
    return 0.5 * residual(x).squaredNorm();
  };
  GradientFn gradient = [residual, l, n, m, nc, nd](const Vector& x) -> Vector {
    const Matrix R = residual(x);
    const Eigen::Map<const Matrix> C(x.data(), l, m);
    const Eigen::Map<const Matrix> D(x.data() + nc, l, n);
    Vector g(nc + nd);
    Eigen::Map<Matrix>(g.data(), l, m).noalias() = D * R;
    Eigen::Map<Matrix>(g.data() + nc, l, n).noalias() = C * R.transpose();
    return g;
  };
  Projector rows;
  rows.project = [l, n, nc, nd](const Vector& x) -> Vector {
    require_dim(x.size(), nc + nd, "dictionary projector");
    Vector z = x;
    project_row_norm_ball_inplace(Eigen::Map<Matrix>(z.data() + nc, l, n));
    return z;
  };
  rows.residual = [l, n, nc](const Vector& x) {
    const Eigen::Map<const Matrix> D(x.data() + nc, l, n);
    return std::max(0.0, D.rowwise().norm().maxCoeff() - 1.0);
  };

  return make_separable_problem("dictionary", nc + nd, nc, instance.rho, std::move(objective),
                                std::move(gradient), std::move(rows));
}

PortfolioInstance gen_portfolio(Index n, std::uint64_t seed, double rho, double beta) {
  require(n >= 2, "gen_portfolio: n must be at least 2");
  Rng rng(seed);
  const Matrix A = rng.normal_matrix(n, n);
  PortfolioInstance inst;
  Matrix Q = A.transpose() * A / static_cast<double>(n);
  Q.diagonal().array() += 1e-3;
  inst.Q = 0.5 * (Q + Q.transpose());
  inst.mu = rng.normal_vector(n);
  inst.beta = beta;
  inst.rho = rho;
  return inst;
}

GeneratedDictionary gen_dictionary(Index n, Index l, Index m, std::uint64_t seed, double rho) {
  require(n > 0 && l > 0 && m > 0, "gen_dictionary: shapes must be positive");
  constexpr double kDensity = 0.1;
  constexpr double kNoise = 1e-2;

  Rng rng(seed);
  GeneratedDictionary out;
  out.C0 = rng.normal_matrix(l, m);
  out.D0 = project_row_norm_ball(rng.normal_matrix(l, n));

  Matrix d_true = rng.normal_matrix(l, n);
  d_true.rowwise().normalize();
  Matrix c_true = Matrix::Zero(l, m);
  for (Index i = 0; i < l; ++i) {
    for (Index j = 0; j < m; ++j) {
      const double u = rng.uniform();
      const double value = rng.normal();
      if (u < kDensity) c_true(i, j) = value;
    }
  }
  const Matrix noise = rng.normal_matrix(n, m);

  out.instance.l = l;
  out.instance.n = n;
  out.instance.m = m;
  out.instance.rho = rho;
  out.instance.Z = d_true.transpose() * c_true + kNoise * noise;
  return out;
}

}  // namespace l0pen
