#pragma once

// Primal recovery from a converged dual point: beam directions in closed form,
// then powers and the quantisation covariance Q by a second fixed point.

#include <span>
#include <vector>

#include "relaybf/dual_solver.hpp"
#include "relaybf/problem.hpp"

namespace relaybf {

/// v_k = C_k^{-1} h_k / ||C_k^{-1} h_k||, rotated so that h_k^H v_k is real
/// and non-negative.
std::vector<ComplexVector> beam_directions(const ProblemInstance& inst, const DualSolution& dual);

/// Solves B_m lambda_m = 0 for Q, sweeping m from the last relay to the
/// first. Step m fills row and column m of Q on indices >= m given the block
/// already fixed below it:
///   Q(j, m) = -sum_{l>m} Q(j, l) mu_l / mu_m             for j > m,
///   (eta_m - 1) Q(m, m) = sum_k V_k(m, m) + eta_m mu_t^H Q_t mu_t / mu_m^2,
/// where mu = lambda_m and Q_t, mu_t are the parts after index m.
///
/// Throws Error(kDegenerateMultiplier) when lambda_m(m) vanishes (row m of Q
/// is then underdetermined) and Error(kNonHermitianResidual) if a diagonal
/// entry comes out complex.
HermitianMatrix recover_q(const ProblemInstance& inst, const DualSolution& dual,
                          std::span<const ComplexVector> directions,
                          std::span<const double> powers);

/// J(p): Q = recover_q(p), then
/// p'_k = gamma_k (sum_{j!=k} p_j |h_k^H v_j|^2 + h_k^H Q h_k + sigma2) / |h_k^H v_k|^2.
/// Throws Error(kOrthogonalBeam) if some |h_k^H v_k|^2 vanishes.
std::vector<double> power_map(const ProblemInstance& inst, const DualSolution& dual,
                              std::span<const ComplexVector> directions,
                              std::span<const double> powers);

struct PrimalResult {
  PrimalSolution solution;
  int iterations = 0;
  double residual = 0.0;
  IterationStatus status = IterationStatus::kMaxIterations;
};

/// Iterates p <- J(p) from p = 0 with the same stopping rule as the dual loop.
PrimalResult solve_primal(const ProblemInstance& inst, const DualSolution& dual,
                          const FixedPointConfig& config = {}, const TraceSink& trace = {});

}  // namespace relaybf
