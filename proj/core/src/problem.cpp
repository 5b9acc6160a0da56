#include "relaybf/problem.hpp"

#include <cmath>
#include <string>

#include "relaybf/errors.hpp"

namespace relaybf {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::kInvalidInstance, what); }

void check_index(int i, int n, const char* what) {
  if (i < 0 || i >= n) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(what) + " index " + std::to_string(i) + " out of range");
  }
}

}  // namespace

double sinr_from_rate(double rate_bits) { return std::exp2(rate_bits) - 1.0; }

ProblemInstance::ProblemInstance(double sigma2, std::vector<ComplexVector> channels,
                                 std::vector<double> sinr_targets, std::vector<double> capacities)
    : sigma2_(sigma2),
      channels_(std::move(channels)),
      sinr_targets_(std::move(sinr_targets)),
      capacities_(std::move(capacities)) {
  if (capacities_.empty()) invalid("at least one relay is required");
  if (channels_.empty()) invalid("at least one user is required");
  if (!(sigma2_ > 0.0) || !std::isfinite(sigma2_)) invalid("sigma2 must be positive");
  if (sinr_targets_.size() != channels_.size()) {
    invalid("expected " + std::to_string(channels_.size()) + " SINR targets, got " +
            std::to_string(sinr_targets_.size()));
  }
  for (std::size_t k = 0; k < sinr_targets_.size(); ++k) {
    if (!(sinr_targets_[k] > 0.0) || !std::isfinite(sinr_targets_[k])) {
      invalid("SINR target " + std::to_string(k) + " must be positive");
    }
  }
  etas_.reserve(capacities_.size());
  for (std::size_t m = 0; m < capacities_.size(); ++m) {
    if (!(capacities_[m] > 0.0) || !std::isfinite(capacities_[m])) {
      invalid("capacity " + std::to_string(m) + " must be positive");
    }
    etas_.push_back(std::exp2(capacities_[m]));
  }
  const auto relays = static_cast<Eigen::Index>(capacities_.size());
  for (std::size_t k = 0; k < channels_.size(); ++k) {
    if (channels_[k].size() != relays) {
      invalid("channel " + std::to_string(k) + " has length " +
              std::to_string(channels_[k].size()) + ", expected " + std::to_string(relays));
    }
    if (!channels_[k].allFinite()) invalid("channel " + std::to_string(k) + " is not finite");
    if (channels_[k].squaredNorm() == 0.0) {
      invalid("channel " + std::to_string(k) + " is identically zero");
    }
  }
}

HermitianMatrix ProblemInstance::channel_gram(int k) const {
  return HermitianMatrix::outer(channels_[k]);
}

bool operator==(const ProblemInstance& a, const ProblemInstance& b) {
  if (a.sigma2_ != b.sigma2_ || a.sinr_targets_ != b.sinr_targets_ ||
      a.capacities_ != b.capacities_ || a.channels_.size() != b.channels_.size()) {
    return false;
  }
  for (std::size_t k = 0; k < a.channels_.size(); ++k) {
    if (a.channels_[k] != b.channels_[k]) return false;
  }
  return true;
}

ComplexVector PrimalSolution::beamformer(int k) const {
  return std::sqrt(powers[k]) * directions[k];
}

HermitianMatrix PrimalSolution::covariance(int k) const {
  return powers[k] * HermitianMatrix::outer(directions[k]);
}

HermitianMatrix DualSolution::multiplier(int m) const { return HermitianMatrix::outer(lambdas[m]); }

void check_dimensions(const ProblemInstance& inst, const PrimalSolution& sol) {
  const auto users = static_cast<std::size_t>(inst.users());
  if (sol.directions.size() != users || sol.powers.size() != users) {
    throw Error(ErrorKind::kDimensionMismatch, "primal solution has the wrong number of users");
  }
  for (const auto& d : sol.directions) {
    if (d.size() != inst.relays()) {
      throw Error(ErrorKind::kDimensionMismatch, "beam direction has the wrong length");
    }
  }
  if (sol.q.dim() != inst.relays()) {
    throw Error(ErrorKind::kDimensionMismatch, "Q has the wrong dimension");
  }
}

void check_dimensions(const ProblemInstance& inst, const DualSolution& dual) {
  if (dual.beta.size() != static_cast<std::size_t>(inst.users())) {
    throw Error(ErrorKind::kDimensionMismatch, "dual solution has the wrong number of users");
  }
  if (dual.lambdas.size() != static_cast<std::size_t>(inst.relays())) {
    throw Error(ErrorKind::kDimensionMismatch, "dual solution has the wrong number of relays");
  }
  for (const auto& l : dual.lambdas) {
    if (l.size() != inst.relays()) {
      throw Error(ErrorKind::kDimensionMismatch, "multiplier vector has the wrong length");
    }
  }
}

namespace {

// |h_k^H v_j|^2 p_j, the power user k receives from the beam of user j.
double received_power(const ProblemInstance& inst, const PrimalSolution& sol, int k, int j) {
  return sol.powers[j] * std::norm(inst.channel(k).dot(sol.directions[j]));
}

double interference_plus_noise(const ProblemInstance& inst, const PrimalSolution& sol, int k) {
  double s = inst.sigma2() + quadratic_form(sol.q, inst.channel(k));
  for (int j = 0; j < inst.users(); ++j) {
    if (j != k) s += received_power(inst, sol, k, j);
  }
  return s;
}

}  // namespace

double sinr(const ProblemInstance& inst, const PrimalSolution& sol, int k) {
  check_dimensions(inst, sol);
  check_index(k, inst.users(), "user");
  return received_power(inst, sol, k, k) / interference_plus_noise(inst, sol, k);
}

double sinr_margin(const ProblemInstance& inst, const PrimalSolution& sol, int k) {
  check_dimensions(inst, sol);
  check_index(k, inst.users(), "user");
  return received_power(inst, sol, k, k) -
         inst.sinr_target(k) * interference_plus_noise(inst, sol, k);
}

double schur_complement(const HermitianMatrix& q, int m) {
  check_index(m, static_cast<int>(q.dim()), "relay");
  const Eigen::Index tail = q.dim() - m - 1;
  double s = q(m, m).real();
  if (tail > 0) {
    const HermitianMatrix trailing = q.block(m + 1, tail);
    ComplexMatrix lower;
    try {
      lower = cholesky(trailing);
    } catch (const Error&) {
      throw Error(ErrorKind::kSingularTrailingBlock,
                  "trailing block after relay " + std::to_string(m) + " is not positive definite");
    }
    const ComplexVector column = q.dense().block(m + 1, m, tail, 1);
    s -= column.dot(cholesky_solve(lower, column)).real();
  }
  const double floor = kDefaultTolerances.psd_slack * (1.0 + q.max_abs());
  if (!(s > floor)) {
    throw Error(ErrorKind::kSingularTrailingBlock,
                "Schur complement at relay " + std::to_string(m) + " is " + std::to_string(s));
  }
  return s;
}

double fronthaul_rate(const ProblemInstance& inst, const PrimalSolution& sol, int m) {
  check_dimensions(inst, sol);
  check_index(m, inst.relays(), "relay");
  double load = sol.q(m, m).real();
  for (int k = 0; k < inst.users(); ++k) load += sol.powers[k] * std::norm(sol.directions[k](m));
  return std::log2(load / schur_complement(sol.q, m));
}

HermitianMatrix fronthaul_matrix(const ProblemInstance& inst, const PrimalSolution& sol, int m) {
  check_dimensions(inst, sol);
  check_index(m, inst.relays(), "relay");
  const Eigen::Index n = inst.relays();
  ComplexMatrix b = ComplexMatrix::Zero(n, n);
  b.bottomRightCorner(n - m, n - m) = inst.eta(m) * sol.q.dense().bottomRightCorner(n - m, n - m);
  double load = sol.q(m, m).real();
  for (int k = 0; k < inst.users(); ++k) load += sol.powers[k] * std::norm(sol.directions[k](m));
  b(m, m) -= load;
  return HermitianMatrix(b);
}

double objective(const PrimalSolution& sol) {
  double s = sol.q.trace();
  for (double p : sol.powers) s += p;
  return s;
}

double dual_objective(const ProblemInstance& inst, const DualSolution& dual) {
  double s = 0.0;
  for (int k = 0; k < inst.users(); ++k) s += inst.sinr_target(k) * inst.sigma2() * dual.beta[k];
  return s;
}

}  // namespace relaybf
