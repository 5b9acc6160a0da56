#pragma once

// Optimality certificate for a (primal, dual) pair: every condition of the
// KKT system of the relaxed problem, plus the duality gap. A pair that
// passes with a vanishing gap is globally optimal for the original problem,
// with rank-one beamformers.

#include <map>
#include <string>

#include "relaybf/problem.hpp"

namespace relaybf {

struct CertifierTolerances {
  /// Scaled residual of equality-type conditions.
  double equality = 1e-7;
  /// Scaled slack below zero for semidefiniteness conditions.
  double psd = 1e-8;
  /// |gap| / (1 + primal objective).
  double gap = 1e-6;
  /// The non-null eigenvalues of C_k - beta_k H_k must exceed this.
  double rank = 1e-7;
};

struct ConditionCheck {
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

namespace condition {
inline constexpr const char* kDZero = "d_zero";
inline constexpr const char* kLambdaStructure = "lambda_structure";
inline constexpr const char* kDualPsdAndRank = "dual_psd_and_rank";
inline constexpr const char* kBetaNonneg = "beta_nonneg";
inline constexpr const char* kPrimalSlackness = "primal_slackness";
inline constexpr const char* kRankOnePrimal = "rank_one_primal";
inline constexpr const char* kSinrEquality = "sinr_equality";
inline constexpr const char* kBmPsd = "bm_psd";
inline constexpr const char* kBmSlackness = "bm_slackness";
inline constexpr const char* kQPsd = "q_psd";
inline constexpr const char* kDualityGap = "duality_gap";
}  // namespace condition

struct Certificate {
  std::map<std::string, ConditionCheck> conditions;
  /// Signed primal minus dual objective.
  double duality_gap = 0.0;
  double objective_primal = 0.0;
  double objective_dual = 0.0;
  /// Smallest second eigenvalue of C_k - beta_k H_k over users (infinity when
  /// there is a single relay).
  double rank_margin = 0.0;
  CertifierTolerances tolerances;

  bool pass() const;
  /// Names of failing conditions, comma separated.
  std::string failures() const;
};

/// Signed objective(primal) - sum_k gamma_k sigma2 beta_k.
double gap(const ProblemInstance& inst, const PrimalSolution& primal, const DualSolution& dual);

/// Evaluates every condition; failures are verdicts, not exceptions.
/// Throws Error(kDimensionMismatch) only for inconsistent shapes.
Certificate certify(const ProblemInstance& inst, const PrimalSolution& primal,
                    const DualSolution& dual, const CertifierTolerances& tol = {});

std::string to_json(const Certificate& cert);

}  // namespace relaybf
