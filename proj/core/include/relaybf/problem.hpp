#pragma once

#include <span>
#include <vector>

#include "relaybf/numerics.hpp"

namespace relaybf {

/// Converts a per-user rate target (bits/symbol) to the SINR target 2^r - 1.
double sinr_from_rate(double rate_bits);

/// Input of the joint beamforming and compression power-minimisation problem:
/// `relays()` single-antenna relays fed over finite-capacity fronthaul links
/// serve `users()` single-antenna users.
///
/// channel(k) is the vector h_k whose conjugate transpose multiplies the
/// transmitted signal, i.e. user k receives h_k^H x. The value is validated
/// on construction; an instance that exists satisfies every invariant.
class ProblemInstance {
 public:
  /// Throws Error(kInvalidInstance) if any invariant fails: at least one relay
  /// and one user, sigma2 > 0, every SINR target and capacity > 0, channels of
  /// length relays() and not identically zero.
  ProblemInstance(double sigma2, std::vector<ComplexVector> channels,
                  std::vector<double> sinr_targets, std::vector<double> capacities);

  int relays() const { return static_cast<int>(capacities_.size()); }
  int users() const { return static_cast<int>(channels_.size()); }
  double sigma2() const { return sigma2_; }

  const ComplexVector& channel(int k) const { return channels_[k]; }
  std::span<const ComplexVector> channels() const { return channels_; }
  double sinr_target(int k) const { return sinr_targets_[k]; }
  std::span<const double> sinr_targets() const { return sinr_targets_; }
  /// Fronthaul capacity C_m in bits/symbol.
  double capacity(int m) const { return capacities_[m]; }
  std::span<const double> capacities() const { return capacities_; }
  /// eta_m = 2^{C_m} > 1.
  double eta(int m) const { return etas_[m]; }
  std::span<const double> etas() const { return etas_; }

  /// H_k = h_k h_k^H.
  HermitianMatrix channel_gram(int k) const;

  friend bool operator==(const ProblemInstance&, const ProblemInstance&);

 private:
  double sigma2_;
  std::vector<ComplexVector> channels_;
  std::vector<double> sinr_targets_;
  std::vector<double> capacities_;
  std::vector<double> etas_;
};

/// Rank-one primal point: unit directions, powers and the quantisation noise
/// covariance Q. The beamformer of user k is sqrt(p_k) * directions[k].
struct PrimalSolution {
  std::vector<ComplexVector> directions;
  std::vector<double> powers;
  HermitianMatrix q;

  ComplexVector beamformer(int k) const;
  /// V_k = p_k v_k v_k^H.
  HermitianMatrix covariance(int k) const;
};

/// Dual point. lambdas[m] is zero before index m and real non-negative at m,
/// so Lambda_m = lambda_m lambda_m^H carries the rank-one zero-prefix shape.
struct DualSolution {
  std::vector<double> beta;
  std::vector<ComplexVector> lambdas;

  HermitianMatrix multiplier(int m) const;
};

/// Throws Error(kDimensionMismatch) when the primal point's shape does not
/// match the instance.
void check_dimensions(const ProblemInstance& inst, const PrimalSolution& sol);
void check_dimensions(const ProblemInstance& inst, const DualSolution& dual);

double sinr(const ProblemInstance& inst, const PrimalSolution& sol, int k);

/// a_k = V_k.H_k - gamma_k (sum_{j!=k} V_j.H_k + Q.H_k + sigma2); zero when
/// the SINR constraint of user k is tight.
double sinr_margin(const ProblemInstance& inst, const PrimalSolution& sol, int k);

/// Schur complement of the trailing block Q(m+1:, m+1:) in Q(m:, m:); for the
/// last relay it is Q(m, m). Throws Error(kSingularTrailingBlock) when the
/// trailing block is not positive definite or the complement is not positive.
double schur_complement(const HermitianMatrix& q, int m);

/// Compression rate of relay m in bits/symbol under multivariate compression.
double fronthaul_rate(const ProblemInstance& inst, const PrimalSolution& sol, int m);

/// B_m = eta_m blkdiag(0, Q(m:, m:)) - E_m (sum_k V_k + Q) E_m, the matrix
/// form of the fronthaul constraint of relay m.
HermitianMatrix fronthaul_matrix(const ProblemInstance& inst, const PrimalSolution& sol, int m);

/// Total transmit power sum_k p_k + trace(Q).
double objective(const PrimalSolution& sol);

/// Dual objective sum_k gamma_k sigma2 beta_k.
double dual_objective(const ProblemInstance& inst, const DualSolution& dual);

}  // namespace relaybf
