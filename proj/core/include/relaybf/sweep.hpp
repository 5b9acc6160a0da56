#pragma once

// Monte-Carlo sweep over user rate targets: per (rate, run) draw a Rayleigh
// instance, solve, certify and record; then average the solved runs.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "relaybf/certifier.hpp"
#include "relaybf/solver.hpp"

namespace relaybf {

struct SweepConfig {
  int relays = 8;
  int users = 10;
  double capacity = 3.0;
  double sigma2 = 1.0;
  std::vector<double> rate_targets{0.2, 0.4, 0.6, 0.8, 1.0, 1.2};
  int runs = 200;
  std::uint64_t seed = 20211005;
  /// Worker threads; records do not depend on this.
  int threads = 1;
  SolverConfig solver;
  CertifierTolerances certificate;
};

/// Throws Error(kSchema) for malformed documents and Error(kInvalidInstance)
/// for invalid values (runs < 1, empty or non-positive rate targets).
SweepConfig parse_sweep_config(std::string_view text);
void validate(const SweepConfig& cfg);

enum class RunStatus { kSolved, kInfeasible, kFailed };

std::string_view to_string(RunStatus status);

struct RunRecord {
  double rate_target = 0.0;
  int run = 0;
  RunStatus status = RunStatus::kFailed;
  /// Meaningful only for kSolved.
  double objective = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;
  bool certified = false;
  int dual_iterations = 0;
  int primal_iterations = 0;
  double wall_time_ms = 0.0;
};

struct RatePoint {
  double rate_target = 0.0;
  int solved = 0;
  int infeasible = 0;
  int failed = 0;
  int certified = 0;
  /// Means over solved runs (NaN when none solved).
  double mean_objective = 0.0;
  double mean_wall_time_ms = 0.0;
};

struct SweepResult {
  /// Ordered by rate target, then run.
  std::vector<RunRecord> records;
  std::vector<RatePoint> aggregate;
};

/// Instance seed of (rate index, run); a pure function of cfg.seed.
std::uint64_t run_seed(const SweepConfig& cfg, std::size_t rate_index, int run);

/// Solves and certifies one instance. Never throws for solver trouble.
RunRecord run_one(const SweepConfig& cfg, std::size_t rate_index, int run);

SweepResult run_sweep(const SweepConfig& cfg);

/// Columns: rate_target, run, status, objective, dual_objective, gap,
/// dual_iters, primal_iters, wall_time_ms. With include_timing == false the
/// wall_time_ms column is left empty, which makes the file a pure function of
/// the configuration.
std::string to_csv(const SweepResult& result, bool include_timing = true);
std::string to_json(const SweepResult& result);

}  // namespace relaybf
