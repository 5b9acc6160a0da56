#include "relaybf/dual_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relaybf/errors.hpp"

namespace relaybf {

std::string_view to_string(IterationStatus status) {
  switch (status) {
    case IterationStatus::kConverged: return "Converged";
    case IterationStatus::kMaxIterations: return "MaxIterations";
    case IterationStatus::kDiverged: return "Diverged";
  }
  return "Unknown";
}

namespace {

void check_beta(const ProblemInstance& inst, std::span<const double> beta) {
  if (beta.size() != static_cast<std::size_t>(inst.users())) {
    throw Error(ErrorKind::kDimensionMismatch, "beta has " + std::to_string(beta.size()) +
                                                   " entries, expected " +
                                                   std::to_string(inst.users()));
  }
}

double sup_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s = std::max(s, std::abs(v));
  return s;
}

double sup_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

}  // namespace

HermitianMatrix build_gamma(const ProblemInstance& inst, std::span<const double> beta) {
  check_beta(inst, beta);
  const Eigen::Index n = inst.relays();
  ComplexMatrix g = ComplexMatrix::Identity(n, n);
  for (int k = 0; k < inst.users(); ++k) {
    const ComplexVector& h = inst.channel(k);
    g.noalias() += (beta[k] * inst.sinr_target(k)) * (h * h.adjoint());
  }
  return HermitianMatrix(g);
}

std::vector<ComplexVector> recover_lambdas(const HermitianMatrix& gamma,
                                           std::span<const double> etas) {
  const Eigen::Index n = gamma.dim();
  if (etas.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorKind::kDimensionMismatch, "recover_lambdas: one eta per relay required");
  }
  std::vector<ComplexVector> lambdas;
  lambdas.reserve(etas.size());
  ComplexMatrix residual = gamma.dense();
  for (Eigen::Index m = 0; m < n; ++m) {
    const double eta = etas[m];
    const Eigen::Index tail = n - m - 1;
    const double pivot = residual(0, 0).real();
    if (!(pivot > 0.0)) {
      throw Error(ErrorKind::kNonPositivePivot,
                  "residual pivot at relay " + std::to_string(m) + " is " + std::to_string(pivot));
    }
    const double lead = std::sqrt(pivot / (eta - 1.0));
    ComplexVector lambda = ComplexVector::Zero(n);
    lambda(m) = lead;
    // Lambda(j, m) = R(j - m, 0) / eta = lambda_j * lead
    lambda.tail(tail) = residual.col(0).tail(tail) / (eta * lead);
    const ComplexVector t = lambda.tail(tail);
    residual = ComplexMatrix(residual.bottomRightCorner(tail, tail)) - eta * (t * t.adjoint());
    lambdas.push_back(std::move(lambda));
  }
  return lambdas;
}

std::vector<ComplexVector> recover_lambdas(const ProblemInstance& inst,
                                           std::span<const double> beta) {
  return recover_lambdas(build_gamma(inst, beta), inst.etas());
}

HermitianMatrix build_c(const ProblemInstance& inst, std::span<const double> beta,
                        std::span<const ComplexVector> lambdas, int k) {
  check_beta(inst, beta);
  const Eigen::Index n = inst.relays();
  ComplexMatrix c = ComplexMatrix::Identity(n, n);
  for (int j = 0; j < inst.users(); ++j) {
    if (j == k) continue;
    const ComplexVector& h = inst.channel(j);
    c.noalias() += (beta[j] * inst.sinr_target(j)) * (h * h.adjoint());
  }
  for (Eigen::Index m = 0; m < n; ++m) c(m, m) += std::norm(lambdas[m](m));
  return HermitianMatrix(c);
}

HermitianMatrix d_matrix(const ProblemInstance& inst, std::span<const double> beta,
                         std::span<const ComplexVector> lambdas) {
  const Eigen::Index n = inst.relays();
  ComplexMatrix d = build_gamma(inst, beta).dense();
  for (Eigen::Index m = 0; m < n; ++m) {
    const ComplexVector t = lambdas[m].tail(n - m);
    d.bottomRightCorner(n - m, n - m) -= inst.eta(static_cast<int>(m)) * (t * t.adjoint());
    d(m, m) += std::norm(lambdas[m](m));
  }
  return HermitianMatrix(d);
}

std::vector<double> beta_map(const ProblemInstance& inst, std::span<const double> beta) {
  const auto lambdas = recover_lambdas(inst, beta);
  std::vector<double> next(beta.size());
  for (int k = 0; k < inst.users(); ++k) {
    const HermitianMatrix c = build_c(inst, beta, lambdas, k);
    const ComplexVector& h = inst.channel(k);
    const double gain = h.dot(solve_hermitian_pd(c, h)).real();
    next[k] = 1.0 / gain;
  }
  return next;
}

DualResult solve_dual(const ProblemInstance& inst, const FixedPointConfig& config,
                      const TraceSink& trace, std::span<const double> initial) {
  DualIterationState state;
  if (initial.empty()) {
    state.beta.assign(static_cast<std::size_t>(inst.users()), 0.0);
  } else {
    check_beta(inst, initial);
    state.beta.assign(initial.begin(), initial.end());
  }

  // Absolute step at the midpoint of the iteration budget; used to tell slow
  // convergence from linear divergence when the cap is reached.
  double midpoint_step = 0.0;
  double last_step = 0.0;
  state.status = IterationStatus::kMaxIterations;
  for (int it = 1; it <= config.max_iters; ++it) {
    std::vector<double> next = beta_map(inst, state.beta);
    last_step = sup_distance(next, state.beta);
    const double scale = sup_norm(next);
    state.residual = scale > 0.0 ? last_step / scale : last_step;
    state.beta = std::move(next);
    state.iteration = it;
    if (trace) trace(it, state.beta, state.residual);
    if (it == config.max_iters / 2) midpoint_step = last_step;

    if (!std::all_of(state.beta.begin(), state.beta.end(),
                     [](double b) { return std::isfinite(b); }) ||
        sup_norm(state.beta) > config.divergence_bound) {
      state.status = IterationStatus::kDiverged;
      break;
    }
    if (state.residual <= config.tol) {
      state.status = IterationStatus::kConverged;
      break;
    }
  }
  if (state.status == IterationStatus::kMaxIterations && config.max_iters >= 2 &&
      last_step >= midpoint_step * (1.0 - 1e-6)) {
    state.status = IterationStatus::kDiverged;
  }

  DualResult result;
  result.solution.beta = state.beta;
  if (state.status != IterationStatus::kDiverged) {
    result.solution.lambdas = recover_lambdas(inst, state.beta);
  }
  result.state = std::move(state);
  return result;
}

}  // namespace relaybf
