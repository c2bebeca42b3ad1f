#include "l0pen/verify.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <thread>

#include "l0pen/solvers.hpp"

namespace l0pen {

double complementarity(const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& y) {
  require_dim(y.size(), x.size(), "complementarity");
  if (x.size() == 0) return 0.0;
  return x.cwiseAbs().cwiseProduct(y).maxCoeff();
}

double complementarity_sum(const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& y) {
  require_dim(y.size(), x.size(), "complementarity_sum");
  return x.cwiseAbs().dot(y);
}

double tnlp_stationarity(const SpoProblem& problem, const Vector& x, double zero_tol,
                         double feas_tol) {
  require_dim(x.size(), problem.dim, "tnlp_stationarity");
  const double infeasibility = problem.feasible.residual(x);
  if (infeasibility > feas_tol) {
    throw InfeasiblePoint("tnlp_stationarity: point violates the constraint by " +
                          std::to_string(infeasibility));
  }
  std::vector<bool> keep(static_cast<std::size_t>(problem.sparse_dim));
  for (Index i = 0; i < problem.sparse_dim; ++i) {
    keep[static_cast<std::size_t>(i)] = std::abs(x[i]) > zero_tol;
  }
  const Vector projected = problem.restricted(x - problem.gradient(x), keep);
  return (projected - x).lpNorm<Eigen::Infinity>();
}

bool StationarityCertificate::passed(double tol) const {
  return feasible && comp_residual <= tol && pg_residual <= tol && tnlp_residual <= tol &&
         y_block_residual <= tol;
}

StationarityCertificate certificate(const SpoProblem& problem, const PenaltyFamily& family,
                                    const PenaltyIterate& it, double alpha, double zero_tol,
                                    double feas_tol) {
  const Index k = problem.sparse_dim;
  require_dim(it.x.size(), problem.dim, "certificate x");
  require_dim(it.y.size(), k, "certificate y");

  StationarityCertificate cert;
  const auto xs = it.x.head(k);
  cert.comp_residual = complementarity(xs, it.y);
  for (Index i = 0; i < k; ++i) {
    if (std::abs(xs[i]) <= zero_tol) cert.zero_support.push_back(i);
    if (it.y[i] > zero_tol) {
      cert.y_block_residual = std::max(
          cert.y_block_residual, std::abs(family.derivative(it.y[i]) + alpha * std::abs(xs[i])));
    }
  }

  cert.feasibility = problem.feasible.residual(it.x);
  if (it.y.size() > 0) cert.feasibility = std::max(cert.feasibility, -it.y.minCoeff());
  cert.feasible = cert.feasibility <= feas_tol;

  const PenalizedProblem pen(problem, family, alpha);
  PenaltyIterate exact{it.x, xs.cwiseAbs(), it.y};
  cert.pg_residual = pen.pg_residual(exact);

  if (cert.feasible) {
    cert.tnlp_residual = tnlp_stationarity(problem, it.x, zero_tol, feas_tol);
  } else {
    cert.tnlp_residual = std::numeric_limits<double>::infinity();
  }
  return cert;
}

StationarityCertificate certificate(const SpoProblem& problem, const PenaltyFamily& family,
                                    const SolveReport& report, double alpha, double zero_tol,
                                    double feas_tol) {
  return certificate(problem, family, report.final_iterate, alpha, zero_tol, feas_tol);
}

YRecovery y_recovery_error(const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& y,
                           const PenaltyFamily& family, double zero_tol) {
  require_dim(y.size(), x.size(), "y_recovery_error");
  YRecovery r;
  for (Index i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) <= zero_tol) {
      r.on_zero_set = std::max(r.on_zero_set, std::abs(y[i] - family.minimizer()));
    } else {
      r.off_zero_set = std::max(r.off_zero_set, y[i]);
    }
  }
  return r;
}

namespace {

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  std::uint32_t mask = 0;
  Vector x;
  long tried = 0;
  long singular = 0;
};

std::vector<Index> mask_indices(std::uint32_t mask, Index n) {
  std::vector<Index> idx;
  for (Index i = 0; i < n; ++i) {
    if (mask & (1u << i)) idx.push_back(i);
  }
  return idx;
}

// True if (value_a, mask_a) should replace the incumbent (value_b, mask_b).
// mask_b == 0 means there is no incumbent yet.
bool better(double value_a, std::uint32_t mask_a, double value_b, std::uint32_t mask_b, Index n) {
  if (mask_b == 0) return true;
  const double tol = 1e-12 * std::max(1.0, std::abs(value_b));
  if (value_a < value_b - tol) return true;
  if (value_a > value_b + tol) return false;
  const int size_a = std::popcount(mask_a);
  const int size_b = std::popcount(mask_b);
  if (size_a != size_b) return size_a < size_b;
  return mask_indices(mask_a, n) < mask_indices(mask_b, n);
}

void enumerate_range(const PortfolioInstance& inst, double rho, std::uint32_t first,
                     std::uint32_t last, Candidate& best) {
  const Index n = inst.dim();
  for (std::uint32_t mask = first; mask < last; ++mask) {
    const auto idx = mask_indices(mask, n);
    const Index k = static_cast<Index>(idx.size());
    Matrix kkt = Matrix::Zero(k + 1, k + 1);
    Vector rhs(k + 1);
    for (Index a = 0; a < k; ++a) {
      for (Index b = 0; b < k; ++b) kkt(a, b) = inst.Q(idx[a], idx[b]);
      kkt(a, k) = 1.0;
      kkt(k, a) = 1.0;
      rhs[a] = inst.beta * inst.mu[idx[a]];
    }
    rhs[k] = 1.0;
    ++best.tried;
    const Eigen::FullPivLU<Matrix> lu(kkt);
    if (!lu.isInvertible()) {
      ++best.singular;
      continue;
    }
    const Vector sol = lu.solve(rhs);
    Vector x = Vector::Zero(n);
    for (Index a = 0; a < k; ++a) x[idx[a]] = sol[a];
    const double value =
        0.5 * x.dot(inst.Q * x) - inst.beta * inst.mu.dot(x) + rho * static_cast<double>(k);
    if (better(value, mask, best.value, best.mask, n)) {
      best.value = value;
      best.mask = mask;
      best.x = std::move(x);
    }
  }
}

}  // namespace

OracleResult spo_bruteforce(const PortfolioInstance& instance, double rho, unsigned threads) {
  instance.validate();
  const Index n = instance.dim();
  if (n > kOracleMaxDim) {
    throw InvalidArgument("spo_bruteforce: support enumeration is limited to n <= " +
                          std::to_string(kOracleMaxDim) + " (got n = " + std::to_string(n) + ")");
  }
  require(rho >= 0.0, "spo_bruteforce: rho must be nonnegative");

  const std::uint32_t total = 1u << n;
  threads = std::max(1u, std::min<unsigned>(threads, total - 1));
  std::vector<Candidate> partial(threads);
  {
    std::vector<std::jthread> pool;
    const std::uint32_t chunk = (total - 1 + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint32_t first = 1 + t * chunk;
      const std::uint32_t last = std::min(total, first + chunk);
      if (first >= last) continue;
      pool.emplace_back([&, t, first, last] {
        enumerate_range(instance, rho, first, last, partial[t]);
      });
    }
  }

  Candidate best;
  long tried = 0;
  long singular = 0;
  for (auto& c : partial) {
    tried += c.tried;
    singular += c.singular;
    if (c.mask != 0 && better(c.value, c.mask, best.value, best.mask, n)) best = std::move(c);
  }
  if (best.mask == 0) throw Error("spo_bruteforce: every support produced a singular KKT system");

  OracleResult result;
  result.x = std::move(best.x);
  result.value = best.value;
  result.support = mask_indices(best.mask, n);
  result.supports_tried = tried;
  result.singular_supports = singular;
  return result;
}

}  // namespace l0pen
