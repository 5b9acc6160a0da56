#include "relaybf/primal_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relaybf/errors.hpp"

namespace relaybf {

namespace {

constexpr double kDegenerateFloor = 1e-12;

void check_primal_inputs(const ProblemInstance& inst, const DualSolution& dual,
                         std::span<const ComplexVector> directions, std::span<const double> powers) {
  check_dimensions(inst, dual);
  const auto users = static_cast<std::size_t>(inst.users());
  if (directions.size() != users || powers.size() != users) {
    throw Error(ErrorKind::kDimensionMismatch, "one direction and one power per user required");
  }
}

}  // namespace

std::vector<ComplexVector> beam_directions(const ProblemInstance& inst, const DualSolution& dual) {
  check_dimensions(inst, dual);
  std::vector<ComplexVector> out;
  out.reserve(static_cast<std::size_t>(inst.users()));
  for (int k = 0; k < inst.users(); ++k) {
    const ComplexVector& h = inst.channel(k);
    ComplexVector x = solve_hermitian_pd(build_c(inst, dual.beta, dual.lambdas, k), h);
    const double norm = x.norm();
    if (!(norm > kDegenerateFloor * h.norm())) {
      throw Error(ErrorKind::kNumericalFailure,
                  "C_k^{-1} h_k vanishes for user " + std::to_string(k));
    }
    x /= norm;
    const Complex gain = h.dot(x);
    if (std::abs(gain) > 0.0) x *= std::conj(gain) / std::abs(gain);
    out.push_back(std::move(x));
  }
  return out;
}

HermitianMatrix recover_q(const ProblemInstance& inst, const DualSolution& dual,
                          std::span<const ComplexVector> directions,
                          std::span<const double> powers) {
  check_primal_inputs(inst, dual, directions, powers);
  const Eigen::Index n = inst.relays();
  ComplexMatrix q = ComplexMatrix::Zero(n, n);
  for (Eigen::Index m = n - 1; m >= 0; --m) {
    const ComplexVector& lambda = dual.lambdas[m];
    const double lead = lambda(m).real();
    if (!(std::abs(lead) > kDegenerateFloor * (1.0 + lambda.cwiseAbs().maxCoeff()))) {
      throw Error(ErrorKind::kDegenerateMultiplier,
                  "lambda_" + std::to_string(m) + " has a vanishing leading entry");
    }
    const Eigen::Index tail = n - m - 1;
    const ComplexVector mu_t = lambda.tail(tail);
    const ComplexMatrix q_t = q.bottomRightCorner(tail, tail);
    const ComplexVector q_mu = q_t * mu_t;

    q.col(m).tail(tail) = -q_mu / lead;
    q.row(m).tail(tail) = q.col(m).tail(tail).adjoint();

    double load = 0.0;
    for (int k = 0; k < inst.users(); ++k) load += powers[k] * std::norm(directions[k](m));
    const Complex coupling = mu_t.dot(q_mu);
    if (std::abs(coupling.imag()) > 1e-9 * (1.0 + std::abs(coupling.real()))) {
      throw Error(ErrorKind::kNonHermitianResidual,
                  "diagonal of Q at relay " + std::to_string(m) + " is not real");
    }
    const double eta = inst.eta(static_cast<int>(m));
    q(m, m) = (load + eta * coupling.real() / (lead * lead)) / (eta - 1.0);
  }
  return HermitianMatrix(q);
}

std::vector<double> power_map(const ProblemInstance& inst, const DualSolution& dual,
                              std::span<const ComplexVector> directions,
                              std::span<const double> powers) {
  const HermitianMatrix q = recover_q(inst, dual, directions, powers);
  std::vector<double> next(powers.size());
  for (int k = 0; k < inst.users(); ++k) {
    const ComplexVector& h = inst.channel(k);
    const double own = std::norm(h.dot(directions[k]));
    if (!(own > kDegenerateFloor * h.squaredNorm())) {
      throw Error(ErrorKind::kOrthogonalBeam,
                  "beam of user " + std::to_string(k) + " is orthogonal to its channel");
    }
    double noise = inst.sigma2() + quadratic_form(q, h);
    for (int j = 0; j < inst.users(); ++j) {
      if (j != k) noise += powers[j] * std::norm(h.dot(directions[j]));
    }
    next[k] = inst.sinr_target(k) * noise / own;
  }
  return next;
}

PrimalResult solve_primal(const ProblemInstance& inst, const DualSolution& dual,
                          const FixedPointConfig& config, const TraceSink& trace) {
  PrimalResult result;
  result.solution.directions = beam_directions(inst, dual);
  std::vector<double> p(static_cast<std::size_t>(inst.users()), 0.0);
  for (int it = 1; it <= config.max_iters; ++it) {
    std::vector<double> next = power_map(inst, dual, result.solution.directions, p);
    double step = 0.0;
    double scale = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      step = std::max(step, std::abs(next[k] - p[k]));
      scale = std::max(scale, std::abs(next[k]));
    }
    p = std::move(next);
    result.iterations = it;
    result.residual = scale > 0.0 ? step / scale : step;
    if (trace) trace(it, p, result.residual);
    if (!std::all_of(p.begin(), p.end(), [](double v) { return std::isfinite(v); }) ||
        scale > config.divergence_bound) {
      result.status = IterationStatus::kDiverged;
      break;
    }
    if (result.residual <= config.tol) {
      result.status = IterationStatus::kConverged;
      break;
    }
  }
  result.solution.q = recover_q(inst, dual, result.solution.directions, p);
  result.solution.powers = std::move(p);
  return result;
}

}  // namespace relaybf
