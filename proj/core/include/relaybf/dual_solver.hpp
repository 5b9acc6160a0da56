#pragma once

// Dual side of the optimality system: the multipliers beta (one per SINR
// constraint) and the rank-one fronthaul multipliers Lambda_m, found by the
// fixed-point iteration beta <- I(beta).

#include <functional>
#include <span>
#include <vector>

#include "relaybf/numerics.hpp"
#include "relaybf/problem.hpp"

namespace relaybf {

struct FixedPointConfig {
  /// Stop when max|x' - x| <= tol * max|x'|.
  double tol = 1e-10;
  int max_iters = 10000;
  /// Any entry above this bound is treated as divergence.
  double divergence_bound = 1e12;
};

enum class IterationStatus { kConverged, kMaxIterations, kDiverged };

std::string_view to_string(IterationStatus status);

/// Called once per map evaluation with the iteration number (1-based), the
/// new iterate and its relative sup-norm change.
using TraceSink = std::function<void(int iteration, std::span<const double> x, double residual)>;

struct DualIterationState {
  std::vector<double> beta;
  int iteration = 0;
  double residual = 0.0;
  IterationStatus status = IterationStatus::kMaxIterations;
};

/// Gamma = I + sum_k beta_k gamma_k H_k.
HermitianMatrix build_gamma(const ProblemInstance& inst, std::span<const double> beta);

/// Solves D(beta, Lambda) = 0 for the rank-one zero-prefix multipliers by
/// peeling one relay at a time off the residual block (initially Gamma):
///   Lambda_m(m,m) = R(0,0) / (eta_m - 1),  Lambda_m(m,j) = R(0,j-m) / eta_m,
/// the rest by rank-one completion, then R <- R(1:,1:) - eta_m Lambda_m(m+1:,m+1:).
/// Throws Error(kNonPositivePivot) if a residual pivot is not positive.
std::vector<ComplexVector> recover_lambdas(const HermitianMatrix& gamma,
                                           std::span<const double> etas);
std::vector<ComplexVector> recover_lambdas(const ProblemInstance& inst,
                                           std::span<const double> beta);

/// C_k = I + sum_{j != k} beta_j gamma_j H_j + sum_m Lambda_m(m,m) E_m.
HermitianMatrix build_c(const ProblemInstance& inst, std::span<const double> beta,
                        std::span<const ComplexVector> lambdas, int k);

/// D = I - sum_m eta_m blkdiag(0, Lambda_m(m:,m:)) + sum_k beta_k gamma_k H_k
///       + sum_m E_m Lambda_m E_m.
HermitianMatrix d_matrix(const ProblemInstance& inst, std::span<const double> beta,
                         std::span<const ComplexVector> lambdas);

/// I(beta): recovers the multipliers for beta, then
/// I_k = 1 / (h_k^H C_k^{-1} h_k).
std::vector<double> beta_map(const ProblemInstance& inst, std::span<const double> beta);

struct DualResult {
  DualSolution solution;
  DualIterationState state;
};

/// Iterates beta <- I(beta) from `initial` (zero when empty) until the
/// relative change drops to config.tol. kDiverged means the instance is
/// infeasible: some beta_k crossed the divergence bound, or the iteration cap
/// was hit while the absolute step had stopped shrinking. Numerical errors
/// from the kernel propagate as exceptions.
DualResult solve_dual(const ProblemInstance& inst, const FixedPointConfig& config = {},
                      const TraceSink& trace = {}, std::span<const double> initial = {});

}  // namespace relaybf
